#ifndef IRRIPLAN_BAYES_HPP
#define IRRIPLAN_BAYES_HPP

#include <optional>
#include <vector>

#include "irriplan/field_state.hpp"
#include "irriplan/grid_map.hpp"

namespace irriplan {

// Environmental factor weights, normalized to sum 1 at construction.
class FactorWeights {
public:
    FactorWeights(double goal_distance, double obstacles, double drought, double unexplored);

    // Round-1 contract: only distance and obstacles count.
    static FactorWeights round_one() { return FactorWeights(0.5, 0.5, 0.0, 0.0); }
    static FactorWeights defaults() { return FactorWeights(0.2, 0.2, 0.25, 0.35); }

    double goal_distance() const { return w_[0]; }
    double obstacles() const { return w_[1]; }
    double drought() const { return w_[2]; }
    double unexplored() const { return w_[3]; }
    double operator[](int i) const { return w_[i]; }

private:
    double w_[4];
};

// Per-candidate factor scores, each in [0,1].
struct FactorScores {
    double goal_distance = 0.0;  // f1 = 1/max(1, dist(candidate, goal))
    double obstacles = 0.0;      // f2 = 1 when window is obstacle-free, else 1/(Znum+Zdx)
    double drought = 0.0;        // f3 = min(1, GHdx/(mS*drought_max))
    double unexplored = 0.0;     // f4 = Wdx/mS
};

// Scores together with the window aggregates they came from; the integer
// parts are what the factor oracle compares exactly.
struct FactorBreakdown {
    FactorScores scores;
    ObstacleStats obstacles;
    WindowSums sums;
};

FactorBreakdown factor_breakdown(const GridMap& map, const FieldState& state,
                                 const Cell& from, const Cell& candidate, int drought_max);

FactorScores factor_scores(const GridMap& map, const FieldState& state, const Cell& from,
                           const Cell& candidate, int drought_max);

// Weighted arithmetic fusion of the four factors; in [0,1].
double likelihood(const FactorScores& scores, const FactorWeights& weights);

// Normalized element-wise products. Empty result when every product is
// zero (degenerate evidence); the caller falls back to the prior.
std::optional<std::vector<double>> posterior(const std::vector<double>& priors,
                                             const std::vector<double>& likelihoods);

// Loss table over decisions (rows) x states (columns).
class RiskTable {
public:
    RiskTable(std::vector<std::vector<double>> loss);

    // Decisions {explore, exploit} x states {unexplored-region,
    // explored-region}, 0/1 loss.
    static RiskTable defaults() { return RiskTable({{0.0, 1.0}, {1.0, 0.0}}); }

    int decisions() const { return static_cast<int>(loss_.size()); }
    int states() const { return static_cast<int>(loss_[0].size()); }
    double loss(int decision, int state) const { return loss_[decision][state]; }

    // Lowers the cost of exploring an already-explored region, floored at
    // 0; applied once per round that leaves unexplored cells behind.
    void decrement_explore(double amount);

private:
    std::vector<std::vector<double>> loss_;
};

// argmin over decisions of the expected loss under the state posterior;
// ties break toward the lowest index.
int min_risk_decision(const std::vector<double>& state_posterior, const RiskTable& table);

}  // namespace irriplan

#endif
