#include "irriplan/bayes.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace irriplan {

FactorWeights::FactorWeights(double goal_distance, double obstacles, double drought,
                             double unexplored)
    : w_{goal_distance, obstacles, drought, unexplored} {
    double sum = 0.0;
    for (double v : w_) {
        if (v < 0.0 || !std::isfinite(v))
            throw std::invalid_argument("factor weights must be finite and non-negative");
        sum += v;
    }
    if (sum <= 0.0) throw std::invalid_argument("factor weights must not all be zero");
    for (double& v : w_) v /= sum;
}

FactorBreakdown factor_breakdown(const GridMap& map, const FieldState& state,
                                 const Cell& from, const Cell& candidate, int drought_max) {
    if (drought_max < 1) throw std::invalid_argument("drought_max must be >= 1");
    const PredictionWindow window = prediction_window(map, from, candidate);
    FactorBreakdown b;
    b.obstacles = obstacle_stats(map, window);
    b.sums = window_sums(state, window);

    b.scores.goal_distance = 1.0 / std::max(1.0, euclidean(candidate, map.goal()));
    b.scores.obstacles =
        b.obstacles.components == 0
            ? 1.0
            : 1.0 / static_cast<double>(b.obstacles.components + b.obstacles.cells);
    b.scores.drought = std::min(
        1.0, static_cast<double>(b.sums.drought) /
                 (static_cast<double>(b.sums.size) * static_cast<double>(drought_max)));
    b.scores.unexplored =
        static_cast<double>(b.sums.untraversed) / static_cast<double>(b.sums.size);
    return b;
}

FactorScores factor_scores(const GridMap& map, const FieldState& state, const Cell& from,
                           const Cell& candidate, int drought_max) {
    return factor_breakdown(map, state, from, candidate, drought_max).scores;
}

double likelihood(const FactorScores& scores, const FactorWeights& weights) {
    return weights.goal_distance() * scores.goal_distance +
           weights.obstacles() * scores.obstacles + weights.drought() * scores.drought +
           weights.unexplored() * scores.unexplored;
}

std::optional<std::vector<double>> posterior(const std::vector<double>& priors,
                                             const std::vector<double>& likelihoods) {
    if (priors.size() != likelihoods.size())
        throw std::invalid_argument("posterior requires matching prior/likelihood sizes");
    if (priors.empty()) throw std::invalid_argument("posterior over an empty support");
    std::vector<double> products(priors.size());
    double total = 0.0;
    for (std::size_t i = 0; i < priors.size(); ++i) {
        products[i] = priors[i] * likelihoods[i];
        total += products[i];
    }
    if (total <= 0.0) return std::nullopt;
    for (double& p : products) p /= total;
    return products;
}

RiskTable::RiskTable(std::vector<std::vector<double>> loss) : loss_(std::move(loss)) {
    if (loss_.empty() || loss_[0].empty())
        throw std::invalid_argument("risk table must have at least one decision and state");
    const std::size_t states = loss_[0].size();
    for (std::size_t i = 0; i < loss_.size(); ++i) {
        if (loss_[i].size() != states)
            throw std::invalid_argument("risk table rows must have equal length");
        for (double v : loss_[i])
            if (v < 0.0 || !std::isfinite(v))
                throw std::invalid_argument("risk table entries must be non-negative");
        if (i < states) {
            for (std::size_t j = 0; j < states; ++j)
                if (j != i && loss_[i][j] <= loss_[i][i])
                    throw std::invalid_argument(
                        "correct-decision loss must be strictly below same-row losses");
        }
    }
}

void RiskTable::decrement_explore(double amount) {
    if (decisions() < 1 || states() < 2) return;
    loss_[0][1] = std::max(0.0, loss_[0][1] - amount);
}

int min_risk_decision(const std::vector<double>& state_posterior, const RiskTable& table) {
    if (static_cast<int>(state_posterior.size()) != table.states())
        throw std::invalid_argument("posterior dimension must match risk-table states");
    int best = 0;
    double best_risk = 0.0;
    for (int i = 0; i < table.decisions(); ++i) {
        double risk = 0.0;
        for (int j = 0; j < table.states(); ++j)
            risk += table.loss(i, j) * state_posterior[static_cast<std::size_t>(j)];
        if (i == 0 || risk < best_risk) {
            best = i;
            best_risk = risk;
        }
    }
    return best;
}

}  // namespace irriplan
