#ifndef IRRIPLAN_ACO_HPP
#define IRRIPLAN_ACO_HPP

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "irriplan/grid_map.hpp"
#include "irriplan/rng.hpp"

namespace irriplan {

class PlanError : public std::runtime_error {
public:
    explicit PlanError(const std::string& what) : std::runtime_error(what) {}
};

struct AcoConfig {
    int ants = 50;                 // M
    int generations = 100;         // K
    double alpha = 1.0;            // pheromone importance
    double beta = 2.0;             // heuristic importance
    double q = 1.0;                // deposit constant Q
    double evaporation = 0.1;      // in (0,1)
    double initial_pheromone = 1.0;
    int max_steps = 0;             // 0 = auto (4 * width * height)
    std::uint64_t seed = 0;

    int effective_max_steps(const GridMap& map) const;
    void validate(const GridMap& map) const;
};

// Pheromone per directed edge between adjacent cells, floored at a small
// positive epsilon after evaporation.
class PheromoneField {
public:
    static constexpr double kFloor = 1e-12;

    PheromoneField(const GridMap& map, double initial);

    double get(const Cell& from, const Cell& to) const { return values_[slot(from, to)]; }
    void evaporate(double rho);
    void deposit(const Cell& from, const Cell& to, double amount) {
        values_[slot(from, to)] += amount;
    }
    double min_value() const;
    // Sum of each cell's outgoing edge values, row-major.
    std::vector<double> per_cell_mass() const;

private:
    std::size_t slot(const Cell& from, const Cell& to) const;
    int width_;
    int height_;
    std::vector<double> values_;
};

struct Path {
    std::vector<Cell> cells;
    double length = 0.0;

    bool complete(const GridMap& map) const {
        return !cells.empty() && cells.front() == map.start() && cells.back() == map.goal();
    }
};

struct TransitionCandidate {
    Cell cell;
    double step_cost = 0.0;
    double probability = 0.0;
};

// P(Wi) over unvisited traversable neighbors: tau^alpha * eta^beta with
// eta = 1/max(1, dist(Wi, goal)). Empty result signals a dead end.
std::vector<TransitionCandidate> transition_prior(const PheromoneField& field,
                                                  const GridMap& map, const Cell& at,
                                                  const std::vector<char>& visited,
                                                  const AcoConfig& config);

// One ant walk by roulette sampling over the transition prior. Failure
// (dead end or step exhaustion) is a normal outcome, not a fault.
std::optional<Path> construct_path(const GridMap& map, const PheromoneField& field,
                                   const AcoConfig& config, Rng& rng);

// Evaporates every edge then deposits q/length along each path's edges.
void update_pheromone(PheromoneField& field, const std::vector<const Path*>& paths,
                      const AcoConfig& config);

struct OptimizeResult {
    Path best;
    // Running global-best length after each generation; non-increasing.
    std::vector<double> best_so_far;
    // Best length found within each generation; +inf when every ant failed.
    std::vector<double> generation_best;
    // Final outgoing pheromone mass per cell, for heatmap rendering.
    std::vector<double> pheromone_per_cell;
};

constexpr double kNoPath = std::numeric_limits<double>::infinity();

// K generations of M ants with elitist deposit (generation best plus the
// global best). Deterministic for a fixed seed. Throws PlanError when the
// goal is unreachable. round_tag separates RNG streams across cruise rounds.
OptimizeResult optimize(const GridMap& map, const AcoConfig& config,
                        std::uint64_t round_tag = 0);

bool reachable(const GridMap& map, const Cell& from, const Cell& to);

// Start-to-goal shortest length under the movement rules; kNoPath when
// unreachable. Anchors the planner's working-distance budget.
double shortest_length(const GridMap& map);

// CSV with columns (generation, best_length_so_far, generation_best_length).
std::string convergence_csv(const OptimizeResult& result);
std::string convergence_csv(const std::vector<double>& best_so_far,
                            const std::vector<double>& generation_best);

std::string path_csv(const Path& path);

}  // namespace irriplan

#endif
