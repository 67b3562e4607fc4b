#include "irriplan/aco.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <queue>
#include <sstream>

#include "irriplan/format.hpp"

namespace irriplan {

int AcoConfig::effective_max_steps(const GridMap& map) const {
    return max_steps > 0 ? max_steps : 4 * map.cell_count();
}

void AcoConfig::validate(const GridMap& map) const {
    if (ants < 1) throw std::invalid_argument("ants must be >= 1");
    if (generations < 1) throw std::invalid_argument("generations must be >= 1");
    if (evaporation <= 0.0 || evaporation >= 1.0)
        throw std::invalid_argument("evaporation must be in (0,1)");
    if (initial_pheromone <= 0.0)
        throw std::invalid_argument("initial_pheromone must be positive");
    if (effective_max_steps(map) < map.cell_count())
        throw std::invalid_argument("max_steps must be at least width*height");
}

PheromoneField::PheromoneField(const GridMap& map, double initial)
    : width_(map.width()),
      height_(map.height()),
      values_(static_cast<std::size_t>(map.cell_count()) * 8, initial) {
    if (initial <= 0.0) throw std::invalid_argument("initial pheromone must be positive");
}

std::size_t PheromoneField::slot(const Cell& from, const Cell& to) const {
    const int dx = to.x - from.x;
    const int dy = to.y - from.y;
    // Direction index in reading order, matching the neighbor enumeration.
    const int dir = (dy + 1) * 3 + (dx + 1);
    const int packed = dir > 4 ? dir - 1 : dir;  // skip the (0,0) slot
    return (static_cast<std::size_t>(from.y) * width_ + from.x) * 8 + packed;
}

void PheromoneField::evaporate(double rho) {
    for (double& v : values_) v = std::max(kFloor, v * (1.0 - rho));
}

double PheromoneField::min_value() const {
    return *std::min_element(values_.begin(), values_.end());
}

std::vector<double> PheromoneField::per_cell_mass() const {
    std::vector<double> mass(static_cast<std::size_t>(width_) * height_, 0.0);
    for (std::size_t i = 0; i < values_.size(); ++i) mass[i / 8] += values_[i];
    return mass;
}

std::vector<TransitionCandidate> transition_prior(const PheromoneField& field,
                                                  const GridMap& map, const Cell& at,
                                                  const std::vector<char>& visited,
                                                  const AcoConfig& config) {
    std::vector<TransitionCandidate> out;
    out.reserve(8);
    double total = 0.0;
    for (const Step& step : neighbors(map, at)) {
        if (visited[static_cast<std::size_t>(map.index(step.to))]) continue;
        const double eta = 1.0 / std::max(1.0, euclidean(step.to, map.goal()));
        const double tau = field.get(at, step.to);
        const double w = (config.alpha == 1.0 ? tau : std::pow(tau, config.alpha)) *
                         (config.beta == 1.0 ? eta : std::pow(eta, config.beta));
        out.push_back(TransitionCandidate{step.to, step.cost, w});
        total += w;
    }
    if (out.empty()) return out;  // dead end, caller kills the ant
    if (total <= 0.0) {
        const double uniform = 1.0 / static_cast<double>(out.size());
        for (auto& c : out) c.probability = uniform;
    } else {
        for (auto& c : out) c.probability /= total;
    }
    return out;
}

std::optional<Path> construct_path(const GridMap& map, const PheromoneField& field,
                                   const AcoConfig& config, Rng& rng) {
    Path path;
    std::vector<char> visited(static_cast<std::size_t>(map.cell_count()), 0);
    Cell at = map.start();
    visited[static_cast<std::size_t>(map.index(at))] = 1;
    path.cells.push_back(at);

    const int budget = config.effective_max_steps(map);
    std::vector<double> weights;
    for (int step = 0; step < budget; ++step) {
        if (at == map.goal()) return path;
        const auto candidates = transition_prior(field, map, at, visited, config);
        if (candidates.empty()) return std::nullopt;
        weights.clear();
        for (const auto& c : candidates) weights.push_back(c.probability);
        const std::size_t pick = roulette_pick(weights, 1.0, rng.next_unit());
        const auto& chosen = candidates[pick];
        at = chosen.cell;
        visited[static_cast<std::size_t>(map.index(at))] = 1;
        path.cells.push_back(at);
        path.length += chosen.step_cost;
    }
    return at == map.goal() ? std::optional<Path>(path) : std::nullopt;
}

void update_pheromone(PheromoneField& field, const std::vector<const Path*>& paths,
                      const AcoConfig& config) {
    field.evaporate(config.evaporation);
    for (const Path* p : paths) {
        if (p == nullptr || p->cells.size() < 2 || p->length <= 0.0) continue;
        const double amount = config.q / p->length;
        for (std::size_t i = 0; i + 1 < p->cells.size(); ++i)
            field.deposit(p->cells[i], p->cells[i + 1], amount);
    }
}

bool reachable(const GridMap& map, const Cell& from, const Cell& to) {
    if (!map.traversable_at(from) || !map.traversable_at(to)) return false;
    std::vector<char> seen(static_cast<std::size_t>(map.cell_count()), 0);
    std::deque<Cell> queue{from};
    seen[static_cast<std::size_t>(map.index(from))] = 1;
    while (!queue.empty()) {
        const Cell c = queue.front();
        queue.pop_front();
        if (c == to) return true;
        for (const Step& s : neighbors(map, c)) {
            auto& flag = seen[static_cast<std::size_t>(map.index(s.to))];
            if (!flag) {
                flag = 1;
                queue.push_back(s.to);
            }
        }
    }
    return false;
}

double shortest_length(const GridMap& map) {
    std::vector<double> dist(static_cast<std::size_t>(map.cell_count()), kNoPath);
    using Entry = std::pair<double, int>;
    std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap;
    dist[static_cast<std::size_t>(map.index(map.start()))] = 0.0;
    heap.emplace(0.0, map.index(map.start()));
    while (!heap.empty()) {
        const auto [d, idx] = heap.top();
        heap.pop();
        if (d > dist[static_cast<std::size_t>(idx)]) continue;
        const Cell at = map.cell_of(idx);
        if (at == map.goal()) return d;
        for (const Step& s : neighbors(map, at)) {
            const int to = map.index(s.to);
            if (d + s.cost < dist[static_cast<std::size_t>(to)]) {
                dist[static_cast<std::size_t>(to)] = d + s.cost;
                heap.emplace(d + s.cost, to);
            }
        }
    }
    return kNoPath;
}

OptimizeResult optimize(const GridMap& map, const AcoConfig& config, std::uint64_t round_tag) {
    config.validate(map);
    if (!reachable(map, map.start(), map.goal()))
        throw PlanError("goal unreachable from start");

    PheromoneField field(map, config.initial_pheromone);
    OptimizeResult result;
    result.best.length = kNoPath;

    for (int gen = 0; gen < config.generations; ++gen) {
        std::optional<Path> gen_best;
        for (int ant = 0; ant < config.ants; ++ant) {
            Rng rng(stream_seed(config.seed, round_tag, static_cast<std::uint64_t>(gen),
                                static_cast<std::uint64_t>(ant)));
            auto walked = construct_path(map, field, config, rng);
            if (walked && (!gen_best || walked->length < gen_best->length))
                gen_best = std::move(walked);
        }
        if (gen_best && gen_best->length < result.best.length) result.best = *gen_best;

        std::vector<const Path*> deposits;
        if (gen_best) deposits.push_back(&*gen_best);
        if (result.best.length < kNoPath) deposits.push_back(&result.best);
        update_pheromone(field, deposits, config);

        result.generation_best.push_back(gen_best ? gen_best->length : kNoPath);
        result.best_so_far.push_back(result.best.length < kNoPath ? result.best.length
                                                                  : kNoPath);
    }
    if (result.best.length == kNoPath)
        throw PlanError("no ant reached the goal; increase ants, generations or max_steps");
    result.pheromone_per_cell = field.per_cell_mass();
    return result;
}

std::string convergence_csv(const std::vector<double>& best_so_far,
                            const std::vector<double>& generation_best) {
    std::ostringstream os;
    os << "generation,best_length_so_far,generation_best_length\n";
    for (std::size_t g = 0; g < best_so_far.size(); ++g)
        os << g << ',' << format_fixed(best_so_far[g]) << ','
           << format_fixed(generation_best[g]) << '\n';
    return os.str();
}

std::string convergence_csv(const OptimizeResult& result) {
    return convergence_csv(result.best_so_far, result.generation_best);
}

std::string path_csv(const Path& path) {
    std::ostringstream os;
    os << "x,y\n";
    for (const Cell& c : path.cells) os << c.x << ',' << c.y << '\n';
    return os.str();
}

}  // namespace irriplan
