#include "irriplan/field_state.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "irriplan/format.hpp"

namespace irriplan {

void MoistureModel::validate() const {
    if (decay_per_round <= 0.0 || decay_per_round >= 1.0)
        throw std::invalid_argument("decay_per_round must be in (0,1)");
    if (dry_threshold <= 0.0 || dry_threshold >= 1.0)
        throw std::invalid_argument("dry_threshold must be in (0,1)");
    if (irrigation_refill <= 0.0 || irrigation_refill > 1.0)
        throw std::invalid_argument("irrigation_refill must be in (0,1]");
    if (dry_threshold >= irrigation_refill)
        throw std::invalid_argument("dry_threshold must be below irrigation_refill");
}

FieldState::FieldState(const GridMap& map, const MoistureModel& model)
    : map_(&map),
      traversal_(static_cast<std::size_t>(map.cell_count()), 1),
      drought_(static_cast<std::size_t>(map.cell_count()), 0),
      moisture_(static_cast<std::size_t>(map.cell_count()), 0.0) {
    model.validate();
    // Crops start fully watered.
    for (int i = 0; i < map.cell_count(); ++i)
        if (map.at(map.cell_of(i)) == CellClass::Crop) moisture_[i] = model.irrigation_refill;
}

void FieldState::record_pass(const std::vector<Cell>& path, const std::vector<Cell>& irrigated,
                             const MoistureModel& model) {
    for (const Cell& c : path) {
        if (!map_->in_bounds(c)) throw std::out_of_range("path cell out of bounds");
        traversal_[map_->index(c)] = 0;
    }
    for (const Cell& c : irrigated) {
        if (!map_->in_bounds(c)) throw std::out_of_range("irrigated cell out of bounds");
        const int i = map_->index(c);
        traversal_[i] = 0;
        if (map_->at(c) == CellClass::Crop) {
            if (moisture_[i] < model.dry_threshold) drought_[i] = 0;
            moisture_[i] = model.irrigation_refill;
        }
    }
}

void FieldState::advance_round(const MoistureModel& model) {
    for (int i = 0; i < map_->cell_count(); ++i) {
        if (map_->at(map_->cell_of(i)) != CellClass::Crop) continue;
        moisture_[i] = std::max(0.0, moisture_[i] - model.decay_per_round);
        if (moisture_[i] < model.dry_threshold) ++drought_[i];
    }
    ++round_;
}

void FieldState::apply_maximum_risk(int drought_max) {
    if (drought_max < 1) throw std::invalid_argument("drought_max must be >= 1");
    for (int i = 0; i < map_->cell_count(); ++i) {
        const Cell c = map_->cell_of(i);
        if (traversable(map_->at(c)) && traversal_[i] == 1)
            drought_[i] = std::max(drought_[i], drought_max);
    }
}

int FieldState::explored_traversable() const {
    int n = 0;
    for (int i = 0; i < map_->cell_count(); ++i)
        if (traversable(map_->at(map_->cell_of(i))) && traversal_[i] == 0) ++n;
    return n;
}

int FieldState::total_traversable() const {
    int n = 0;
    for (int i = 0; i < map_->cell_count(); ++i)
        if (traversable(map_->at(map_->cell_of(i)))) ++n;
    return n;
}

int FieldState::covered_crops() const {
    int n = 0;
    for (int i = 0; i < map_->cell_count(); ++i)
        if (map_->at(map_->cell_of(i)) == CellClass::Crop && traversal_[i] == 0) ++n;
    return n;
}

std::string FieldState::snapshot_csv() const {
    std::ostringstream os;
    os << "x,y,class,traversal,drought,moisture\n";
    for (int y = 0; y < map_->height(); ++y) {
        for (int x = 0; x < map_->width(); ++x) {
            const Cell c{x, y};
            const char* cls = "road";
            switch (map_->at(c)) {
                case CellClass::Obstacle: cls = "obstacle"; break;
                case CellClass::Road: cls = "road"; break;
                case CellClass::Crop: cls = "crop"; break;
                case CellClass::River: cls = "river"; break;
            }
            os << x << ',' << y << ',' << cls << ',' << traversal(c) << ',' << drought(c)
               << ',' << format_fixed(moisture(c)) << '\n';
        }
    }
    return os.str();
}

WindowSums window_sums(const FieldState& state, const PredictionWindow& window) {
    WindowSums sums;
    sums.size = static_cast<int>(window.cells.size());
    for (const Cell& c : window.cells) {
        sums.untraversed += state.traversal(c);
        sums.drought += state.drought(c);
    }
    return sums;
}

}  // namespace irriplan
