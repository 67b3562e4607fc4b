#ifndef IRRIPLAN_GRID_MAP_HPP
#define IRRIPLAN_GRID_MAP_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace irriplan {

// Cell classes of the grid environment. Road and Crop are traversable;
// rivers bound irrigation need but block movement just like obstacles.
enum class CellClass : std::uint8_t { Obstacle, Road, Crop, River };

constexpr bool traversable(CellClass c) {
    return c == CellClass::Road || c == CellClass::Crop;
}

constexpr bool blocks(CellClass c) {
    return c == CellClass::Obstacle || c == CellClass::River;
}

struct Cell {
    int x = 0;  // column
    int y = 0;  // row
    friend bool operator==(const Cell&, const Cell&) = default;
};

struct CellLess {
    bool operator()(const Cell& a, const Cell& b) const {
        return a.y != b.y ? a.y < b.y : a.x < b.x;
    }
};

// Euclidean distance between cell centers.
double euclidean(const Cell& a, const Cell& b);

class MapError : public std::runtime_error {
public:
    explicit MapError(const std::string& what) : std::runtime_error(what) {}
};

// Static rectangular grid environment. Immutable after construction and
// safe to share across threads.
class GridMap {
public:
    GridMap(int width, int height, std::vector<CellClass> cells, Cell start, Cell goal);

    // Parses the ASCII map format: one character per cell, rows
    // newline-terminated, alphabet {#, ., c, ~, S, G}. 'S'/'G' cells are
    // classed Road. Throws MapError with line/column diagnostics.
    static GridMap parse(const std::string& text);
    static GridMap load(const std::string& path);

    // Inverse of parse: round-trips bit-exactly for every valid map.
    std::string render() const;

    int width() const { return width_; }
    int height() const { return height_; }
    Cell start() const { return start_; }
    Cell goal() const { return goal_; }
    // Grid scale n used by the prediction-window side formula.
    int scale() const { return width_ > height_ ? width_ : height_; }
    int cell_count() const { return width_ * height_; }

    bool in_bounds(const Cell& c) const {
        return c.x >= 0 && c.x < width_ && c.y >= 0 && c.y < height_;
    }
    CellClass at(const Cell& c) const { return cells_[index(c)]; }
    bool traversable_at(const Cell& c) const {
        return in_bounds(c) && traversable(at(c));
    }
    int index(const Cell& c) const { return c.y * width_ + c.x; }
    Cell cell_of(int idx) const { return Cell{idx % width_, idx / width_}; }

    int count(CellClass cls) const;

private:
    int width_;
    int height_;
    std::vector<CellClass> cells_;
    Cell start_;
    Cell goal_;
};

struct Step {
    Cell to;
    double cost = 0.0;  // 1 for axis moves, sqrt(2) for diagonals
};

// All in-bounds traversable 8-neighbors of `at`. A diagonal move is
// forbidden when both adjacent axis cells are non-traversable.
std::vector<Step> neighbors(const GridMap& map, const Cell& at);

// Forward-looking square of cells anchored at a candidate step, over which
// environmental factors are aggregated.
struct PredictionWindow {
    Cell anchor;      // the candidate cell, always contained in `cells`
    Cell direction;   // unit step from..anchor, components in {-1,0,1}
    int side = 0;     // min(ceil(sqrt(n)) + 1, 5)
    std::vector<Cell> cells;  // in-bounds window cells, row-major order
};

int prediction_side(int scale);

// Builds the window for the move from -> to: a side x side square with
// `to` on the edge nearest `from`, extended away from `from`; out-of-bounds
// cells clipped. Requires `to` adjacent to `from` and distinct from it.
PredictionWindow prediction_window(const GridMap& map, const Cell& from, const Cell& to);

struct ObstacleStats {
    int components = 0;  // Znum: 8-connected components of blocking cells
    int cells = 0;       // Zdx: total blocking cells in the window
};

ObstacleStats obstacle_stats(const GridMap& map, const PredictionWindow& window);

}  // namespace irriplan

#endif
