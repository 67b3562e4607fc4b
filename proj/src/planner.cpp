#include "irriplan/planner.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "irriplan/format.hpp"

namespace irriplan {

void CruiseConfig::validate(const GridMap& map) const {
    aco.validate(map);
    moisture.validate();
    if (drought_max < 1) throw std::invalid_argument("drought_max must be >= 1");
    if (irrigation_radius < 0) throw std::invalid_argument("irrigation_radius must be >= 0");
    if (explore_decrement < 0.0)
        throw std::invalid_argument("explore_decrement must be >= 0");
    if (detour_budget < 1.0) throw std::invalid_argument("detour_budget must be >= 1");
    if (algorithm == Algorithm::Improved && risk.states() != 2)
        throw std::invalid_argument("the cruise risk rule needs a two-state table");
}

LikelihoodTable::LikelihoodTable(const GridMap& map, const FieldState& state,
                                 const FactorWeights& weights, int drought_max)
    : width_(map.width()),
      likelihood_(static_cast<std::size_t>(map.cell_count()) * 8, 0.0),
      unexplored_(static_cast<std::size_t>(map.cell_count()) * 8, 0.0) {
    for (int i = 0; i < map.cell_count(); ++i) {
        const Cell from = map.cell_of(i);
        if (!traversable(map.at(from))) continue;
        for (const Step& step : neighbors(map, from)) {
            const FactorBreakdown b = factor_breakdown(map, state, from, step.to, drought_max);
            likelihood_[slot(from, step.to)] = irriplan::likelihood(b.scores, weights);
            unexplored_[slot(from, step.to)] = b.scores.unexplored;
        }
    }
}

std::size_t LikelihoodTable::slot(const Cell& from, const Cell& to) const {
    const int dir = (to.y - from.y + 1) * 3 + (to.x - from.x + 1);
    const int packed = dir > 4 ? dir - 1 : dir;
    return (static_cast<std::size_t>(from.y) * width_ + from.x) * 8 + packed;
}

namespace {

struct EdgeScores {
    double likelihood = 0.0;
    double unexplored = 0.0;
};

template <typename ScoresFn>
std::optional<SelectedStep> select_step(const GridMap& map, const PheromoneField& field,
                                        const AcoConfig& aco, const Cell& from,
                                        const std::vector<char>& visited,
                                        const RiskTable* risk, double explore_bias,
                                        SelectMode mode, Rng* rng, ScoresFn&& scores_of) {
    const auto candidates = transition_prior(field, map, from, visited, aco);
    if (candidates.empty()) return std::nullopt;

    std::vector<double> priors(candidates.size());
    std::vector<double> evidence(candidates.size());
    std::vector<double> f4(candidates.size());
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        priors[i] = candidates[i].probability;
        const EdgeScores s = scores_of(from, candidates[i].cell);
        evidence[i] = s.likelihood;
        f4[i] = s.unexplored;
    }

    std::vector<double> weights;
    if (auto post = posterior(priors, evidence)) {
        weights = std::move(*post);
    } else {
        weights = priors;  // degenerate evidence: fall back to the prior
    }

    if (risk != nullptr) {
        double unexplored_mass = 0.0;
        for (std::size_t i = 0; i < weights.size(); ++i) unexplored_mass += weights[i] * f4[i];
        const int decision =
            min_risk_decision({unexplored_mass, 1.0 - unexplored_mass}, *risk);
        if (decision == 0) {  // explore: steer mass toward unexplored windows
            std::vector<double> steered(weights.size());
            double total = 0.0;
            for (std::size_t i = 0; i < weights.size(); ++i) {
                steered[i] = weights[i] * (explore_bias + f4[i]);
                total += steered[i];
            }
            if (total > 0.0) {
                for (double& w : steered) w /= total;
                weights = std::move(steered);
            }
        }
    }

    std::size_t pick = 0;
    if (mode == SelectMode::Sample) {
        pick = roulette_pick(weights, 1.0, rng->next_unit());
    } else {
        for (std::size_t i = 1; i < weights.size(); ++i)
            if (weights[i] > weights[pick]) pick = i;
    }
    return SelectedStep{candidates[pick].cell, candidates[pick].step_cost};
}

}  // namespace

std::optional<SelectedStep> select_next(const GridMap& map, const PheromoneField& field,
                                        const LikelihoodTable& table, const AcoConfig& aco,
                                        const Cell& from, const std::vector<char>& visited,
                                        const RiskTable* risk, double explore_bias,
                                        SelectMode mode, Rng* rng) {
    return select_step(map, field, aco, from, visited, risk, explore_bias, mode, rng,
                       [&](const Cell& a, const Cell& b) {
                           return EdgeScores{table.likelihood(a, b), table.unexplored(a, b)};
                       });
}

std::optional<SelectedStep> select_next(const GridMap& map, const FieldState& state,
                                        const PheromoneField& field, const AcoConfig& aco,
                                        const Cell& from, const std::vector<char>& visited,
                                        const FactorWeights& weights, int drought_max,
                                        const RiskTable* risk, double explore_bias,
                                        SelectMode mode, Rng* rng) {
    return select_step(map, field, aco, from, visited, risk, explore_bias, mode, rng,
                       [&](const Cell& a, const Cell& b) {
                           const FactorScores s = factor_scores(map, state, a, b, drought_max);
                           return EdgeScores{likelihood(s, weights), s.unexplored};
                       });
}

namespace {

std::optional<Path> bayes_walk(const GridMap& map, const PheromoneField& field,
                               const LikelihoodTable& table, const AcoConfig& aco,
                               const RiskTable* risk, double explore_bias, SelectMode mode,
                               Rng* rng) {
    Path path;
    std::vector<char> visited(static_cast<std::size_t>(map.cell_count()), 0);
    Cell at = map.start();
    visited[static_cast<std::size_t>(map.index(at))] = 1;
    path.cells.push_back(at);
    const int budget = aco.effective_max_steps(map);
    for (int step = 0; step < budget; ++step) {
        if (at == map.goal()) return path;
        const auto next =
            select_next(map, field, table, aco, at, visited, risk, explore_bias, mode, rng);
        if (!next) return std::nullopt;
        at = next->cell;
        visited[static_cast<std::size_t>(map.index(at))] = 1;
        path.cells.push_back(at);
        path.length += next->step_cost;
    }
    return at == map.goal() ? std::optional<Path>(path) : std::nullopt;
}

double mean_crop_drought(const GridMap& map, const FieldState& state) {
    long long total = 0;
    int crops = 0;
    for (int i = 0; i < map.cell_count(); ++i) {
        const Cell c = map.cell_of(i);
        if (map.at(c) != CellClass::Crop) continue;
        total += state.drought(c);
        ++crops;
    }
    return crops == 0 ? 0.0 : static_cast<double>(total) / crops;
}

// Cells a pass over this path would newly cover: untraversed path cells
// plus untraversed crop cells inside the irrigation swath.
int new_information(const GridMap& map, const FieldState& state, const Path& path,
                    int radius, std::vector<char>& stamp) {
    std::fill(stamp.begin(), stamp.end(), 0);
    int info = 0;
    const auto visit = [&](const Cell& c) {
        auto& flag = stamp[static_cast<std::size_t>(map.index(c))];
        if (flag) return;
        flag = 1;
        if (state.traversal(c) == 1) ++info;
    };
    for (const Cell& p : path.cells) {
        visit(p);
        for (int dy = -radius; dy <= radius; ++dy)
            for (int dx = -radius; dx <= radius; ++dx) {
                const Cell c{p.x + dx, p.y + dy};
                if (map.in_bounds(c) && map.at(c) == CellClass::Crop) visit(c);
            }
    }
    return info;
}

}  // namespace

std::vector<Cell> irrigation_swath(const GridMap& map, const Path& path, int radius) {
    std::set<Cell, CellLess> cells;
    for (const Cell& p : path.cells) {
        for (int dy = -radius; dy <= radius; ++dy) {
            for (int dx = -radius; dx <= radius; ++dx) {
                const Cell c{p.x + dx, p.y + dy};
                if (map.in_bounds(c) && map.at(c) == CellClass::Crop) cells.insert(c);
            }
        }
    }
    return std::vector<Cell>(cells.begin(), cells.end());
}

double coverage_fraction(const FieldState& state) {
    const GridMap& map = state.map();
    const int crops = map.count(CellClass::Crop);
    if (crops > 0) return static_cast<double>(state.covered_crops()) / crops;
    const int total = state.total_traversable();
    return total == 0 ? 0.0 : static_cast<double>(state.explored_traversable()) / total;
}

CruiseRound cruise_round(const GridMap& map, FieldState& state, int round_index,
                         const CruiseConfig& config, const RiskTable& risk,
                         std::vector<TraceStep>* trace) {
    config.validate(map);
    if (round_index < 1) throw std::invalid_argument("round index starts at 1");

    CruiseRound result;
    result.round = round_index;
    result.mean_drought_before = mean_crop_drought(map, state);
    const int explored_before = state.explored_traversable();

    const std::uint64_t round_tag = static_cast<std::uint64_t>(round_index);

    if (config.algorithm == Algorithm::Baseline) {
        const OptimizeResult opt = optimize(map, config.aco, round_tag);
        result.path = opt.best;
        result.convergence_best = opt.best_so_far;
        result.convergence_gen = opt.generation_best;
    } else {
        if (!reachable(map, map.start(), map.goal()))
            throw PlanError("goal unreachable from start");
        const FactorWeights weights =
            round_index == 1 ? FactorWeights::round_one() : config.weights;
        const RiskTable* risk_rule = round_index >= 2 ? &risk : nullptr;
        const LikelihoodTable table(map, state, weights, config.drought_max);
        PheromoneField field(map, config.aco.initial_pheromone);

        // Round 1 ranks walks classically by length. Later rounds rank by
        // information gained per unit length, so the colony seeks the
        // shorter path under the premise that more is learned. Walks past
        // the working-distance budget (a multiple of the map's shortest
        // length) never compete on information, which bounds inflation;
        // they still compete on length so a round short on eligible walks
        // degrades to the classic behavior. Deposits stay Q/length.
        const bool info_rank = round_index >= 2;
        const double budget = config.detour_budget * shortest_length(map);
        std::vector<char> stamp(static_cast<std::size_t>(map.cell_count()), 0);

        struct Ranked {
            bool eligible = false;
            double score = 0.0;
            double length = kNoPath;
        };
        const auto better = [info_rank](const Ranked& a, const Ranked& b) {
            if (b.length == kNoPath) return true;
            if (!info_rank) return a.length < b.length;
            if (a.eligible != b.eligible) return a.eligible;
            if (a.eligible && a.score != b.score) return a.score > b.score;
            return a.length < b.length;
        };
        const auto rank = [&](const Path& walk) {
            Ranked r;
            r.length = walk.length;
            r.eligible = walk.length <= budget;
            if (info_rank && r.eligible) {
                // quadratic length penalty: among equally novel routes the
                // shorter wins, but high-yield detours beat sterile repeats
                r.score = new_information(map, state, walk, config.irrigation_radius,
                                          stamp) /
                          (walk.length * walk.length);
            }
            return r;
        };

        Path best;
        best.length = kNoPath;
        Ranked best_rank;
        double min_length_so_far = kNoPath;
        std::vector<Path> walks;
        for (int gen = 0; gen < config.aco.generations; ++gen) {
            walks.clear();
            double gen_min_length = kNoPath;
            for (int ant = 0; ant < config.aco.ants; ++ant) {
                Rng rng(stream_seed(config.aco.seed, round_tag,
                                    static_cast<std::uint64_t>(gen),
                                    static_cast<std::uint64_t>(ant)));
                auto walked = bayes_walk(map, field, table, config.aco, risk_rule,
                                         config.explore_bias, SelectMode::Sample, &rng);
                if (!walked) continue;
                gen_min_length = std::min(gen_min_length, walked->length);
                walks.push_back(std::move(*walked));
            }
            min_length_so_far = std::min(min_length_so_far, gen_min_length);

            const Path* gen_best = nullptr;
            Ranked gen_best_rank;
            for (const Path& walk : walks) {
                const Ranked r = rank(walk);
                if (gen_best == nullptr || better(r, gen_best_rank)) {
                    gen_best = &walk;
                    gen_best_rank = r;
                }
            }
            if (gen_best != nullptr && better(gen_best_rank, best_rank)) {
                best = *gen_best;
                best_rank = gen_best_rank;
            }
            std::vector<const Path*> deposits;
            if (gen_best != nullptr) deposits.push_back(gen_best);
            if (best.length < kNoPath) deposits.push_back(&best);
            update_pheromone(field, deposits, config.aco);
            // the exported curve tracks the shortest successful walk seen
            result.convergence_gen.push_back(gen_min_length);
            result.convergence_best.push_back(min_length_so_far);
        }

        // The reported path maximizes the posterior stepwise over the
        // trained field; the elitist best covers greedy dead ends.
        std::optional<Path> greedy;
        {
            Path path;
            std::vector<char> visited(static_cast<std::size_t>(map.cell_count()), 0);
            Cell at = map.start();
            visited[static_cast<std::size_t>(map.index(at))] = 1;
            path.cells.push_back(at);
            const int budget = config.aco.effective_max_steps(map);
            for (int step = 0; step < budget && at != map.goal(); ++step) {
                if (trace != nullptr) {
                    TraceStep rec;
                    rec.round = round_index;
                    rec.from = at;
                    for (const Step& s : neighbors(map, at)) {
                        if (visited[static_cast<std::size_t>(map.index(s.to))]) continue;
                        rec.candidates.push_back(TraceCandidate{
                            s.to, factor_breakdown(map, state, at, s.to, config.drought_max)});
                    }
                    trace->push_back(std::move(rec));
                }
                const auto next = select_next(map, field, table, config.aco, at, visited,
                                              risk_rule, config.explore_bias,
                                              SelectMode::Greedy, nullptr);
                if (!next) break;
                at = next->cell;
                visited[static_cast<std::size_t>(map.index(at))] = 1;
                path.cells.push_back(at);
                path.length += next->step_cost;
                if (trace != nullptr) trace->back().chosen = at;
            }
            if (at == map.goal()) greedy = std::move(path);
        }
        if (greedy && greedy->length <= budget) {
            result.path = *greedy;
            result.greedy_reported = true;
        } else if (best.length < kNoPath) {
            result.path = best;
        } else {
            throw PlanError("no ant reached the goal; increase ants, generations or max_steps");
        }
    }

    result.irrigated = irrigation_swath(map, result.path, config.irrigation_radius);
    result.cells_irrigated = static_cast<int>(result.irrigated.size());
    state.record_pass(result.path.cells, result.irrigated, config.moisture);
    result.newly_explored = state.explored_traversable() - explored_before;
    result.coverage = coverage_fraction(state);
    result.mean_drought_after = mean_crop_drought(map, state);
    return result;
}

CruiseReport run_cruises(const GridMap& map, int rounds, const CruiseConfig& config) {
    if (rounds < 1) throw std::invalid_argument("rounds must be >= 1");
    config.validate(map);

    CruiseReport report;
    report.irrigation_count.assign(static_cast<std::size_t>(map.cell_count()), 0);
    FieldState state(map, config.moisture);
    RiskTable risk = config.risk;

    for (int r = 1; r <= rounds; ++r) {
        if (config.algorithm == Algorithm::Improved && r >= 2)
            state.apply_maximum_risk(config.drought_max);

        CruiseRound round = cruise_round(map, state, r, config, risk,
                                         config.record_trace ? &report.trace : nullptr);
        for (const Cell& c : round.irrigated)
            ++report.irrigation_count[static_cast<std::size_t>(map.index(c))];
        report.rounds.push_back(std::move(round));

        state.advance_round(config.moisture);

        if (config.algorithm == Algorithm::Improved &&
            state.explored_traversable() < state.total_traversable())
            risk.decrement_explore(config.explore_decrement);
    }
    report.final_state = std::move(state);
    return report;
}

std::string cruise_report_csv(const CruiseReport& report) {
    std::ostringstream os;
    os << "round,path_length,cells_irrigated,coverage_fraction,mean_drought_before,"
          "mean_drought_after\n";
    for (const CruiseRound& r : report.rounds)
        os << r.round << ',' << format_fixed(r.path.length) << ',' << r.cells_irrigated << ','
           << format_fixed(r.coverage) << ',' << format_fixed(r.mean_drought_before) << ','
           << format_fixed(r.mean_drought_after) << '\n';
    return os.str();
}

std::string irrigation_grid_csv(const CruiseReport& report, const GridMap& map) {
    std::ostringstream os;
    for (int y = 0; y < map.height(); ++y) {
        for (int x = 0; x < map.width(); ++x) {
            if (x > 0) os << ',';
            os << report.irrigation_count[static_cast<std::size_t>(map.index(Cell{x, y}))];
        }
        os << '\n';
    }
    return os.str();
}

}  // namespace irriplan
