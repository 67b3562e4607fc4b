#include "irriplan/grid_map.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace irriplan {

double euclidean(const Cell& a, const Cell& b) {
    const double dx = a.x - b.x;
    const double dy = a.y - b.y;
    return std::sqrt(dx * dx + dy * dy);
}

GridMap::GridMap(int width, int height, std::vector<CellClass> cells, Cell start, Cell goal)
    : width_(width), height_(height), cells_(std::move(cells)), start_(start), goal_(goal) {
    if (width_ < 2 || height_ < 2)
        throw MapError("map must be at least 2x2, got " + std::to_string(width_) + "x" +
                       std::to_string(height_));
    if (cells_.size() != static_cast<std::size_t>(width_) * height_)
        throw MapError("cell array size does not match map dimensions");
    if (!in_bounds(start_) || !in_bounds(goal_))
        throw MapError("start or goal out of bounds");
    if (start_ == goal_) throw MapError("start equals goal");
    if (!traversable(at(start_))) throw MapError("start placed on a non-traversable cell");
    if (!traversable(at(goal_))) throw MapError("goal placed on a non-traversable cell");
}

namespace {

MapError parse_error(int line, int col, const std::string& msg) {
    std::ostringstream os;
    os << "line " << line << ", column " << col << ": " << msg;
    return MapError(os.str());
}

}  // namespace

GridMap GridMap::parse(const std::string& text) {
    std::vector<std::string> rows;
    std::string row;
    std::istringstream in(text);
    while (std::getline(in, row)) {
        if (!row.empty() && row.back() == '\r') row.pop_back();
        if (!row.empty()) rows.push_back(row);
    }
    if (rows.empty()) throw MapError("empty map document");

    const int height = static_cast<int>(rows.size());
    const int width = static_cast<int>(rows[0].size());
    std::vector<CellClass> cells;
    cells.reserve(static_cast<std::size_t>(width) * height);

    bool have_start = false, have_goal = false;
    Cell start{}, goal{};
    for (int y = 0; y < height; ++y) {
        if (static_cast<int>(rows[y].size()) != width)
            throw parse_error(y + 1, static_cast<int>(rows[y].size()) + 1,
                              "ragged row, expected width " + std::to_string(width));
        for (int x = 0; x < width; ++x) {
            const char ch = rows[y][static_cast<std::size_t>(x)];
            switch (ch) {
                case '#': cells.push_back(CellClass::Obstacle); break;
                case '.': cells.push_back(CellClass::Road); break;
                case 'c': cells.push_back(CellClass::Crop); break;
                case '~': cells.push_back(CellClass::River); break;
                case 'S':
                    if (have_start) throw parse_error(y + 1, x + 1, "duplicate start");
                    have_start = true;
                    start = Cell{x, y};
                    cells.push_back(CellClass::Road);
                    break;
                case 'G':
                    if (have_goal) throw parse_error(y + 1, x + 1, "duplicate goal");
                    have_goal = true;
                    goal = Cell{x, y};
                    cells.push_back(CellClass::Road);
                    break;
                default:
                    throw parse_error(y + 1, x + 1,
                                      std::string("unknown character '") + ch + "'");
            }
        }
    }
    if (!have_start) throw MapError("missing start 'S'");
    if (!have_goal) throw MapError("missing goal 'G'");
    return GridMap(width, height, std::move(cells), start, goal);
}

GridMap GridMap::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw MapError("cannot open map file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse(buf.str());
}

std::string GridMap::render() const {
    std::string out;
    out.reserve(static_cast<std::size_t>((width_ + 1)) * height_);
    for (int y = 0; y < height_; ++y) {
        for (int x = 0; x < width_; ++x) {
            const Cell c{x, y};
            char ch = '?';
            if (c == start_) {
                ch = 'S';
            } else if (c == goal_) {
                ch = 'G';
            } else {
                switch (at(c)) {
                    case CellClass::Obstacle: ch = '#'; break;
                    case CellClass::Road: ch = '.'; break;
                    case CellClass::Crop: ch = 'c'; break;
                    case CellClass::River: ch = '~'; break;
                }
            }
            out.push_back(ch);
        }
        out.push_back('\n');
    }
    return out;
}

int GridMap::count(CellClass cls) const {
    return static_cast<int>(std::count(cells_.begin(), cells_.end(), cls));
}

namespace {

// Fixed enumeration order (reading order) keeps every downstream
// distribution and tie-break deterministic.
constexpr int kOffsets[8][2] = {{-1, -1}, {0, -1}, {1, -1}, {-1, 0},
                                {1, 0},   {-1, 1}, {0, 1},  {1, 1}};
const double kDiagonalCost = std::sqrt(2.0);

}  // namespace

std::vector<Step> neighbors(const GridMap& map, const Cell& at) {
    std::vector<Step> out;
    out.reserve(8);
    for (const auto& off : kOffsets) {
        const Cell to{at.x + off[0], at.y + off[1]};
        if (!map.traversable_at(to)) continue;
        if (off[0] != 0 && off[1] != 0) {
            const bool side_a = map.traversable_at(Cell{at.x + off[0], at.y});
            const bool side_b = map.traversable_at(Cell{at.x, at.y + off[1]});
            if (!side_a && !side_b) continue;  // no corner cutting
            out.push_back(Step{to, kDiagonalCost});
        } else {
            out.push_back(Step{to, 1.0});
        }
    }
    return out;
}

int prediction_side(int scale) {
    const int side = static_cast<int>(std::ceil(std::sqrt(static_cast<double>(scale)))) + 1;
    return side < 5 ? side : 5;
}

PredictionWindow prediction_window(const GridMap& map, const Cell& from, const Cell& to) {
    if (from == to) throw MapError("prediction window requires from != to");
    const int dx = to.x - from.x;
    const int dy = to.y - from.y;
    if (dx < -1 || dx > 1 || dy < -1 || dy > 1)
        throw MapError("prediction window requires adjacent cells");

    const int side = prediction_side(map.scale());

    // Along each moving axis the window extends forward from the candidate;
    // along a resting axis it is centered on it (forward-biased when side
    // is even).
    const auto range = [side](int coord, int d, int& lo, int& hi) {
        if (d > 0) {
            lo = coord;
            hi = coord + side - 1;
        } else if (d < 0) {
            lo = coord - side + 1;
            hi = coord;
        } else {
            const int back = (side - 1) / 2;
            lo = coord - back;
            hi = coord + (side - 1 - back);
        }
    };
    int x_lo, x_hi, y_lo, y_hi;
    range(to.x, dx, x_lo, x_hi);
    range(to.y, dy, y_lo, y_hi);

    PredictionWindow w;
    w.anchor = to;
    w.direction = Cell{dx, dy};
    w.side = side;
    for (int y = y_lo; y <= y_hi; ++y)
        for (int x = x_lo; x <= x_hi; ++x)
            if (map.in_bounds(Cell{x, y})) w.cells.push_back(Cell{x, y});
    return w;
}

ObstacleStats obstacle_stats(const GridMap& map, const PredictionWindow& window) {
    ObstacleStats stats;
    std::vector<Cell> blocked;
    for (const Cell& c : window.cells)
        if (blocks(map.at(c))) blocked.push_back(c);
    stats.cells = static_cast<int>(blocked.size());
    if (blocked.empty()) return stats;

    // 8-connected components restricted to the window's blocked cells.
    std::vector<bool> seen(blocked.size(), false);
    const auto find = [&](const Cell& c) -> int {
        for (std::size_t i = 0; i < blocked.size(); ++i)
            if (blocked[i] == c) return static_cast<int>(i);
        return -1;
    };
    std::vector<int> stack;
    for (std::size_t i = 0; i < blocked.size(); ++i) {
        if (seen[i]) continue;
        ++stats.components;
        stack.push_back(static_cast<int>(i));
        seen[i] = true;
        while (!stack.empty()) {
            const Cell c = blocked[static_cast<std::size_t>(stack.back())];
            stack.pop_back();
            for (const auto& off : kOffsets) {
                const int j = find(Cell{c.x + off[0], c.y + off[1]});
                if (j >= 0 && !seen[static_cast<std::size_t>(j)]) {
                    seen[static_cast<std::size_t>(j)] = true;
                    stack.push_back(j);
                }
            }
        }
    }
    return stats;
}

}  // namespace irriplan
