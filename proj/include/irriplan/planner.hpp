#ifndef IRRIPLAN_PLANNER_HPP
#define IRRIPLAN_PLANNER_HPP

#include <optional>
#include <string>
#include <vector>

#include "irriplan/aco.hpp"
#include "irriplan/bayes.hpp"
#include "irriplan/field_state.hpp"
#include "irriplan/grid_map.hpp"

namespace irriplan {

enum class Algorithm { Baseline, Improved };

enum class SelectMode {
    Sample,  // roulette over the posterior (search)
    Greedy   // posterior argmax (final reported path)
};

struct CruiseConfig {
    AcoConfig aco;
    FactorWeights weights = FactorWeights::defaults();
    RiskTable risk = RiskTable::defaults();
    MoistureModel moisture;
    int drought_max = 10;
    int irrigation_radius = 1;        // Chebyshev swath around the path
    double explore_decrement = 0.1;   // risk-table update per incomplete round
    double explore_bias = 1.0;        // floor for the explore-mode re-weighting
    // Working-distance tolerance: walks longer than this multiple of the
    // round's shortest known walk compete by length only, never by
    // information. Comparison experiments pin it to the recorded
    // max_length_inflation threshold.
    double detour_budget = 2.0;
    Algorithm algorithm = Algorithm::Improved;
    bool record_trace = false;

    void validate(const GridMap& map) const;
};

// Per-edge likelihood of one frozen FieldState; factor scores do not change
// while ants walk, so each cruise round evaluates them once per edge.
class LikelihoodTable {
public:
    LikelihoodTable(const GridMap& map, const FieldState& state, const FactorWeights& weights,
                    int drought_max);

    double likelihood(const Cell& from, const Cell& to) const {
        return likelihood_[slot(from, to)];
    }
    double unexplored(const Cell& from, const Cell& to) const {
        return unexplored_[slot(from, to)];
    }

private:
    std::size_t slot(const Cell& from, const Cell& to) const;
    int width_;
    std::vector<double> likelihood_;
    std::vector<double> unexplored_;  // f4, feeds the risk-mode state posterior
};

struct SelectedStep {
    Cell cell;
    double step_cost = 0.0;
};

// One planning step: transition prior fused with the factor likelihood via
// Bayes, optional risk-driven explore re-weighting, then sample or argmax.
// Empty result signals a dead end. `risk` nullptr disables the risk rule
// (round 1, baseline). Degenerate posteriors fall back to the prior.
std::optional<SelectedStep> select_next(const GridMap& map, const PheromoneField& field,
                                        const LikelihoodTable& table, const AcoConfig& aco,
                                        const Cell& from, const std::vector<char>& visited,
                                        const RiskTable* risk, double explore_bias,
                                        SelectMode mode, Rng* rng);

// Uncached variant matching the spec operation surface; computes factor
// scores on the fly and agrees exactly with the cached path.
std::optional<SelectedStep> select_next(const GridMap& map, const FieldState& state,
                                        const PheromoneField& field, const AcoConfig& aco,
                                        const Cell& from, const std::vector<char>& visited,
                                        const FactorWeights& weights, int drought_max,
                                        const RiskTable* risk, double explore_bias,
                                        SelectMode mode, Rng* rng);

struct TraceCandidate {
    Cell cell;
    FactorBreakdown breakdown;
};

struct TraceStep {
    int round = 0;
    Cell from;
    std::vector<TraceCandidate> candidates;
    Cell chosen;
};

struct CruiseRound {
    int round = 0;
    Path path;
    std::vector<Cell> irrigated;       // sorted, unique
    int cells_irrigated = 0;
    int newly_explored = 0;            // traversable cells flipped unexplored -> explored
    double coverage = 0.0;             // crop coverage after the round
    double mean_drought_before = 0.0;  // crop mean at round start
    double mean_drought_after = 0.0;   // crop mean after irrigation
    std::vector<double> convergence_best;
    std::vector<double> convergence_gen;
    bool greedy_reported = false;      // reported path came from the greedy walk
};

struct CruiseReport {
    std::vector<CruiseRound> rounds;
    std::vector<int> irrigation_count;  // per cell, row-major
    std::vector<TraceStep> trace;       // greedy-walk decisions, when recorded
    // Field memory after the last round, for snapshot and heatmap export.
    // Valid while the map outlives the report.
    std::optional<FieldState> final_state;
};

// One start-to-goal planning + irrigation pass. Round 1 forces the weights
// to (0.5, 0.5, 0, 0) and disables the risk rule; rounds >= 2 use the
// configured four-factor weights. Updates `state` via record_pass.
CruiseRound cruise_round(const GridMap& map, FieldState& state, int round_index,
                         const CruiseConfig& config, const RiskTable& risk,
                         std::vector<TraceStep>* trace = nullptr);

// Multi-round cruise protocol: maximum-risk default before each round >= 2,
// moisture advance after each round, and the risk-table explore decrement
// whenever unexplored traversable cells remain.
CruiseReport run_cruises(const GridMap& map, int rounds, const CruiseConfig& config);

// Crop cells within the irrigation radius of the path, sorted row-major.
std::vector<Cell> irrigation_swath(const GridMap& map, const Path& path, int radius);

double coverage_fraction(const FieldState& state);

// CSV with one row per round:
// (round, path_length, cells_irrigated, coverage_fraction,
//  mean_drought_before, mean_drought_after).
std::string cruise_report_csv(const CruiseReport& report);

// Per-cell irrigation counts, one CSV row per map row.
std::string irrigation_grid_csv(const CruiseReport& report, const GridMap& map);

}  // namespace irriplan

#endif
