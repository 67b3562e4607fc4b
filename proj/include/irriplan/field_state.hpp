#ifndef IRRIPLAN_FIELD_STATE_HPP
#define IRRIPLAN_FIELD_STATE_HPP

#include <string>
#include <vector>

#include "irriplan/grid_map.hpp"

namespace irriplan {

// Desk-scale stand-in for the drought sensor: crop moisture decays every
// round and a cell below dry_threshold accrues drought.
struct MoistureModel {
    double decay_per_round = 0.2;
    double dry_threshold = 0.5;
    double irrigation_refill = 1.0;

    void validate() const;
};

struct WindowSums {
    int untraversed = 0;  // Wdx: sum of traversal flags over the window
    int drought = 0;      // GHdx: sum of drought counters over the window
    int size = 0;         // mS: number of in-bounds window cells
};

// Mutable per-cell memory carried across cruise rounds. Updated only by the
// explicit operations below; ants read a frozen snapshot per generation.
class FieldState {
public:
    explicit FieldState(const GridMap& map, const MoistureModel& model = MoistureModel{});

    int round() const { return round_; }
    int traversal(const Cell& c) const { return traversal_[map_->index(c)]; }
    int drought(const Cell& c) const { return drought_[map_->index(c)]; }
    double moisture(const Cell& c) const { return moisture_[map_->index(c)]; }
    const GridMap& map() const { return *map_; }

    // Marks path cells traversed and irrigated cells traversed + watered.
    // Irrigating a dry crop clears its drought counter; moisture refills to
    // irrigation_refill. Idempotent per cell (traversal floors at 0).
    void record_pass(const std::vector<Cell>& path, const std::vector<Cell>& irrigated,
                     const MoistureModel& model);

    // One round of moisture decay; crops left below dry_threshold accrue
    // one drought point. Increments the round counter.
    void advance_round(const MoistureModel& model);

    // Defaults unexplored traversable cells to the maximum drought value so
    // later rounds prioritize them. Never lowers an existing counter.
    void apply_maximum_risk(int drought_max);

    int explored_traversable() const;
    int total_traversable() const;
    int covered_crops() const;

    // CSV snapshot with columns (x, y, class, traversal, drought, moisture).
    std::string snapshot_csv() const;

    // Test hooks: direct table writes, bounds-checked.
    void set_traversal(const Cell& c, int v) { traversal_[map_->index(c)] = v; }
    void set_drought(const Cell& c, int v) { drought_[map_->index(c)] = v; }
    void set_moisture(const Cell& c, double v) { moisture_[map_->index(c)] = v; }

private:
    const GridMap* map_;
    std::vector<int> traversal_;   // 1 = never traversed/irrigated, 0 = covered
    std::vector<int> drought_;     // >= 0
    std::vector<double> moisture_; // crops only, 0 elsewhere
    int round_ = 0;
};

// Window aggregates feeding the f3/f4 factors. Plain sums over the window's
// in-bounds cells, no class filtering.
WindowSums window_sums(const FieldState& state, const PredictionWindow& window);

}  // namespace irriplan

#endif
