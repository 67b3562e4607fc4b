#ifndef IRRIPLAN_RENDER_HPP
#define IRRIPLAN_RENDER_HPP

#include <string>
#include <vector>

#include "irriplan/aco.hpp"
#include "irriplan/grid_map.hpp"

namespace irriplan {

struct Rgb {
    int r = 0, g = 0, b = 0;
    friend bool operator==(const Rgb&, const Rgb&) = default;
};

// Palette follows the simulation-map convention: gray obstacles, red
// roads, green crops, blue rivers.
struct RenderStyle {
    int cell_size = 8;
    Rgb obstacle{128, 128, 128};
    Rgb road{214, 86, 64};
    Rgb crop{92, 176, 92};
    Rgb river{86, 120, 214};
    Rgb start{255, 255, 255};
    Rgb goal{32, 32, 32};
    Rgb path{244, 214, 66};
    Rgb heat{16, 24, 112};  // saturation target: deeper color, more water

    void validate() const;
};

// Plain-text P3 pixel map; diffable, golden-test friendly.
struct Image {
    int width = 0;
    int height = 0;
    std::vector<Rgb> pixels;

    Rgb& at(int x, int y) { return pixels[static_cast<std::size_t>(y) * width + x]; }
    const Rgb& at(int x, int y) const {
        return pixels[static_cast<std::size_t>(y) * width + x];
    }
    std::string to_ppm() const;
};

Image render_map(const GridMap& map, const RenderStyle& style);

Image render_path(const GridMap& map, const Path& path, const RenderStyle& style);

// Blends each cell's base color toward the heat color by its intensity
// relative to the grid maximum; zero intensity keeps the base color.
// Rejects empty grids and negative intensities.
Image render_heatmap(const GridMap& map, const std::vector<double>& intensities,
                     const RenderStyle& style);

}  // namespace irriplan

#endif
