#include "irriplan/render.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace irriplan {

void RenderStyle::validate() const {
    if (cell_size < 1) throw std::invalid_argument("cell_size must be >= 1");
}

std::string Image::to_ppm() const {
    std::ostringstream os;
    os << "P3\n" << width << ' ' << height << "\n255\n";
    for (int y = 0; y < height; ++y) {
        for (int x = 0; x < width; ++x) {
            const Rgb& p = at(x, y);
            if (x > 0) os << ' ';
            os << p.r << ' ' << p.g << ' ' << p.b;
        }
        os << '\n';
    }
    return os.str();
}

namespace {

Rgb base_color(const GridMap& map, const Cell& c, const RenderStyle& style) {
    if (c == map.start()) return style.start;
    if (c == map.goal()) return style.goal;
    switch (map.at(c)) {
        case CellClass::Obstacle: return style.obstacle;
        case CellClass::Road: return style.road;
        case CellClass::Crop: return style.crop;
        case CellClass::River: return style.river;
    }
    return style.obstacle;
}

Rgb blend(const Rgb& from, const Rgb& to, double t) {
    const auto mix = [t](int a, int b) {
        return static_cast<int>(std::lround(a + (b - a) * t));
    };
    return Rgb{mix(from.r, to.r), mix(from.g, to.g), mix(from.b, to.b)};
}

Image paint(const GridMap& map, const RenderStyle& style,
            const std::vector<Rgb>& cell_colors) {
    Image img;
    img.width = map.width() * style.cell_size;
    img.height = map.height() * style.cell_size;
    img.pixels.resize(static_cast<std::size_t>(img.width) * img.height);
    for (int y = 0; y < img.height; ++y)
        for (int x = 0; x < img.width; ++x)
            img.at(x, y) = cell_colors[static_cast<std::size_t>(
                map.index(Cell{x / style.cell_size, y / style.cell_size}))];
    return img;
}

std::vector<Rgb> base_colors(const GridMap& map, const RenderStyle& style) {
    std::vector<Rgb> colors(static_cast<std::size_t>(map.cell_count()));
    for (int i = 0; i < map.cell_count(); ++i)
        colors[static_cast<std::size_t>(i)] = base_color(map, map.cell_of(i), style);
    return colors;
}

}  // namespace

Image render_map(const GridMap& map, const RenderStyle& style) {
    style.validate();
    return paint(map, style, base_colors(map, style));
}

Image render_path(const GridMap& map, const Path& path, const RenderStyle& style) {
    style.validate();
    std::vector<Rgb> colors = base_colors(map, style);
    for (const Cell& c : path.cells) {
        if (!map.in_bounds(c)) throw std::invalid_argument("path cell out of bounds");
        if (c == map.start() || c == map.goal()) continue;
        colors[static_cast<std::size_t>(map.index(c))] = style.path;
    }
    return paint(map, style, colors);
}

Image render_heatmap(const GridMap& map, const std::vector<double>& intensities,
                     const RenderStyle& style) {
    style.validate();
    if (intensities.empty()) throw std::invalid_argument("empty intensity grid");
    if (intensities.size() != static_cast<std::size_t>(map.cell_count()))
        throw std::invalid_argument("intensity grid does not match map dimensions");
    double max_intensity = 0.0;
    for (double v : intensities) {
        if (v < 0.0) throw std::invalid_argument("intensities must be non-negative");
        max_intensity = std::max(max_intensity, v);
    }
    std::vector<Rgb> colors = base_colors(map, style);
    if (max_intensity > 0.0) {
        for (std::size_t i = 0; i < colors.size(); ++i)
            if (intensities[i] > 0.0)
                colors[i] = blend(colors[i], style.heat, intensities[i] / max_intensity);
    }
    return paint(map, style, colors);
}

}  // namespace irriplan
