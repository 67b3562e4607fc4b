#include "irriplan/harness.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "irriplan/format.hpp"
#include "irriplan/rng.hpp"

namespace irriplan {

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

double parse_double(const std::string& key, const std::string& value) {
    try {
        std::size_t used = 0;
        const double v = std::stod(value, &used);
        if (used != value.size()) throw std::invalid_argument("");
        return v;
    } catch (const std::exception&) {
        throw SpecError("bad numeric value for '" + key + "': " + value);
    }
}

long long parse_int(const std::string& key, const std::string& value) {
    try {
        std::size_t used = 0;
        const long long v = std::stoll(value, &used);
        if (used != value.size()) throw std::invalid_argument("");
        return v;
    } catch (const std::exception&) {
        throw SpecError("bad integer value for '" + key + "': " + value);
    }
}

void parse_weights(ExperimentSpec& spec, const std::string& value) {
    std::istringstream in(value);
    std::string part;
    int i = 0;
    while (std::getline(in, part, ',')) {
        if (i >= 4) throw SpecError("weights take exactly four comma-separated values");
        spec.lambda[i++] = parse_double("weights", trim(part));
    }
    if (i != 4) throw SpecError("weights take exactly four comma-separated values");
}

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << content;
}

}  // namespace

ExperimentSpec ExperimentSpec::parse(const std::string& text) {
    ExperimentSpec spec;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string stripped = trim(line);
        if (stripped.empty() || stripped[0] == '#') continue;
        const auto eq = stripped.find('=');
        if (eq == std::string::npos)
            throw SpecError("line " + std::to_string(lineno) + ": expected key=value");
        const std::string key = trim(stripped.substr(0, eq));
        const std::string value = trim(stripped.substr(eq + 1));

        if (key == "map") {
            spec.map_path = value;
        } else if (key == "algorithm") {
            if (value == "baseline") {
                spec.run_baseline = true;
                spec.run_improved = false;
            } else if (value == "improved") {
                spec.run_baseline = false;
                spec.run_improved = true;
            } else if (value == "both") {
                spec.run_baseline = spec.run_improved = true;
            } else {
                throw SpecError("algorithm must be baseline, improved or both");
            }
        } else if (key == "ants") {
            spec.ants = static_cast<int>(parse_int(key, value));
        } else if (key == "generations") {
            spec.generations = static_cast<int>(parse_int(key, value));
        } else if (key == "alpha") {
            spec.alpha = parse_double(key, value);
        } else if (key == "beta") {
            spec.beta = parse_double(key, value);
        } else if (key == "q") {
            spec.q = parse_double(key, value);
        } else if (key == "evaporation") {
            spec.evaporation = parse_double(key, value);
        } else if (key == "initial_pheromone") {
            spec.initial_pheromone = parse_double(key, value);
        } else if (key == "max_steps") {
            spec.max_steps = static_cast<int>(parse_int(key, value));
        } else if (key == "seed") {
            spec.seed = static_cast<std::uint64_t>(parse_int(key, value));
        } else if (key == "rounds") {
            spec.rounds = static_cast<int>(parse_int(key, value));
        } else if (key == "replicates") {
            spec.replicates = static_cast<int>(parse_int(key, value));
        } else if (key == "weights") {
            parse_weights(spec, value);
        } else if (key == "decay_per_round") {
            spec.decay_per_round = parse_double(key, value);
        } else if (key == "dry_threshold") {
            spec.dry_threshold = parse_double(key, value);
        } else if (key == "irrigation_refill") {
            spec.irrigation_refill = parse_double(key, value);
        } else if (key == "drought_max") {
            spec.drought_max = static_cast<int>(parse_int(key, value));
        } else if (key == "irrigation_radius") {
            spec.irrigation_radius = static_cast<int>(parse_int(key, value));
        } else if (key == "explore_decrement") {
            spec.explore_decrement = parse_double(key, value);
        } else if (key == "explore_bias") {
            spec.explore_bias = parse_double(key, value);
        } else if (key == "min_info_gain_ratio") {
            spec.min_info_gain_ratio = parse_double(key, value);
        } else if (key == "max_length_inflation") {
            spec.max_length_inflation = parse_double(key, value);
        } else {
            throw SpecError("line " + std::to_string(lineno) + ": unknown key '" + key + "'");
        }
    }
    return spec;
}

ExperimentSpec ExperimentSpec::load_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw SpecError("cannot open experiment spec: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse(buf.str());
}

void ExperimentSpec::validate() const {
    if (map_path.empty()) throw SpecError("experiment spec is missing the map path");
    if (replicates < 1) throw SpecError("replicates must be >= 1");
    if (rounds < 1) throw SpecError("rounds must be >= 1");
}

CruiseConfig ExperimentSpec::build_config(Algorithm algorithm) const {
    CruiseConfig config;
    config.aco.ants = ants;
    config.aco.generations = generations;
    config.aco.alpha = alpha;
    config.aco.beta = beta;
    config.aco.q = q;
    config.aco.evaporation = evaporation;
    config.aco.initial_pheromone = initial_pheromone;
    config.aco.max_steps = max_steps;
    config.aco.seed = seed;
    config.weights = FactorWeights(lambda[0], lambda[1], lambda[2], lambda[3]);
    config.moisture.decay_per_round = decay_per_round;
    config.moisture.dry_threshold = dry_threshold;
    config.moisture.irrigation_refill = irrigation_refill;
    config.drought_max = drought_max;
    config.irrigation_radius = irrigation_radius;
    config.explore_decrement = explore_decrement;
    config.explore_bias = explore_bias;
    // the planner honors the recorded working-distance tolerance
    config.detour_budget = max_length_inflation;
    config.algorithm = algorithm;
    return config;
}

const ArmResult* ComparisonReport::arm(const std::string& name) const {
    for (const ArmResult& a : arms)
        if (a.arm == name) return &a;
    return nullptr;
}

namespace {

ArmResult run_arm(const GridMap& map, const ExperimentSpec& spec, Algorithm algorithm) {
    ArmResult result;
    result.arm = algorithm == Algorithm::Baseline ? "baseline" : "improved";
    result.mean_coverage_per_round.assign(static_cast<std::size_t>(spec.rounds), 0.0);
    result.mean_irrigation.assign(static_cast<std::size_t>(map.cell_count()), 0.0);

    std::vector<double> lengths, lengths_r2, info_r2;
    for (int rep = 0; rep < spec.replicates; ++rep) {
        CruiseConfig config = spec.build_config(algorithm);
        config.aco.seed = mix64(spec.seed, static_cast<std::uint64_t>(rep) + 1);
        CruiseReport report = run_cruises(map, spec.rounds, config);

        double length_sum = 0.0, length_sum_r2 = 0.0;
        double explored_r2 = 0.0;
        for (const CruiseRound& r : report.rounds) {
            length_sum += r.path.length;
            if (r.round >= 2) {
                length_sum_r2 += r.path.length;
                explored_r2 += r.newly_explored;
            }
            result.mean_coverage_per_round[static_cast<std::size_t>(r.round - 1)] +=
                r.coverage;
        }
        lengths.push_back(length_sum / spec.rounds);
        if (spec.rounds >= 2) {
            lengths_r2.push_back(length_sum_r2 / (spec.rounds - 1));
            info_r2.push_back(length_sum_r2 > 0.0 ? explored_r2 / length_sum_r2 : 0.0);
        }
        for (std::size_t i = 0; i < result.mean_irrigation.size(); ++i)
            result.mean_irrigation[i] += report.irrigation_count[i];

        result.runs.push_back(std::move(report));
    }

    const auto mean = [](const std::vector<double>& v) {
        if (v.empty()) return 0.0;
        double s = 0.0;
        for (double x : v) s += x;
        return s / static_cast<double>(v.size());
    };
    result.mean_path_length = mean(lengths);
    double var = 0.0;
    for (double x : lengths) var += (x - result.mean_path_length) * (x - result.mean_path_length);
    result.std_path_length = std::sqrt(var / static_cast<double>(lengths.size()));
    result.mean_path_length_r2 = mean(lengths_r2);
    result.mean_info_per_length_r2 = mean(info_r2);
    for (double& c : result.mean_coverage_per_round) c /= spec.replicates;
    for (double& c : result.mean_irrigation) c /= spec.replicates;
    result.final_coverage = result.mean_coverage_per_round.back();
    return result;
}

}  // namespace

ComparisonReport run_experiment(const ExperimentSpec& spec) {
    spec.validate();
    const GridMap map = GridMap::load(spec.map_path);
    if (!reachable(map, map.start(), map.goal()))
        throw PlanError("goal unreachable from start on " + spec.map_path);
    spec.build_config(Algorithm::Improved).validate(map);

    ComparisonReport report;
    report.spec = spec;
    if (spec.run_baseline) report.arms.push_back(run_arm(map, spec, Algorithm::Baseline));
    if (spec.run_improved) report.arms.push_back(run_arm(map, spec, Algorithm::Improved));
    return report;
}

std::string report_csv(const ComparisonReport& report) {
    std::ostringstream os;
    os << "arm,metric,round,value\n";
    for (const ArmResult& arm : report.arms) {
        os << arm.arm << ",mean_path_length,0," << format_fixed(arm.mean_path_length) << '\n';
        os << arm.arm << ",std_path_length,0," << format_fixed(arm.std_path_length) << '\n';
        os << arm.arm << ",mean_path_length_r2,0," << format_fixed(arm.mean_path_length_r2)
           << '\n';
        os << arm.arm << ",info_per_length_r2,0," << format_fixed(arm.mean_info_per_length_r2)
           << '\n';
        os << arm.arm << ",final_coverage,0," << format_fixed(arm.final_coverage) << '\n';
        for (std::size_t r = 0; r < arm.mean_coverage_per_round.size(); ++r)
            os << arm.arm << ",coverage," << (r + 1) << ','
               << format_fixed(arm.mean_coverage_per_round[r]) << '\n';
    }
    return os.str();
}

namespace {

std::string arm_convergence_csv(const CruiseReport& run) {
    std::ostringstream os;
    os << "round,generation,best_length_so_far,generation_best_length\n";
    for (const CruiseRound& r : run.rounds)
        for (std::size_t g = 0; g < r.convergence_best.size(); ++g)
            os << r.round << ',' << g << ',' << format_fixed(r.convergence_best[g]) << ','
               << format_fixed(r.convergence_gen[g]) << '\n';
    return os.str();
}

std::string mean_irrigation_csv(const ArmResult& arm, const GridMap& map) {
    std::ostringstream os;
    for (int y = 0; y < map.height(); ++y) {
        for (int x = 0; x < map.width(); ++x) {
            if (x > 0) os << ',';
            os << format_fixed(
                arm.mean_irrigation[static_cast<std::size_t>(map.index(Cell{x, y}))]);
        }
        os << '\n';
    }
    return os.str();
}

}  // namespace

void write_experiment_artifacts(const ComparisonReport& report, const std::string& out_dir) {
    const GridMap map = GridMap::load(report.spec.map_path);
    const std::filesystem::path dir(out_dir);
    std::filesystem::create_directories(dir);
    write_file(dir / "report.csv", report_csv(report));
    for (const ArmResult& arm : report.arms) {
        for (std::size_t rep = 0; rep < arm.runs.size(); ++rep)
            write_file(dir / ("convergence_" + arm.arm + "_" + std::to_string(rep) + ".csv"),
                       arm_convergence_csv(arm.runs[rep]));
        write_file(dir / ("irrigation_grid_" + arm.arm + ".csv"),
                   mean_irrigation_csv(arm, map));
    }
}

std::vector<ComparisonReport> sweep(const ExperimentSpec& spec, const std::string& parameter,
                                    const std::vector<double>& values) {
    if (values.empty()) throw SpecError("sweep requires at least one value");
    std::vector<ComparisonReport> reports;
    reports.reserve(values.size());
    for (const double v : values) {
        ExperimentSpec point = spec;
        if (parameter == "M") {
            point.ants = static_cast<int>(v);
        } else if (parameter == "K") {
            point.generations = static_cast<int>(v);
        } else if (parameter == "alpha") {
            point.alpha = v;
        } else if (parameter == "beta") {
            point.beta = v;
        } else if (parameter == "evaporation") {
            point.evaporation = v;
        } else if (parameter == "lambda1") {
            point.lambda[0] = v;
        } else if (parameter == "lambda2") {
            point.lambda[1] = v;
        } else if (parameter == "lambda3") {
            point.lambda[2] = v;
        } else if (parameter == "lambda4") {
            point.lambda[3] = v;
        } else if (parameter == "rounds") {
            point.rounds = static_cast<int>(v);
        } else {
            throw SpecError("unknown sweep parameter '" + parameter + "'");
        }
        reports.push_back(run_experiment(point));
    }
    return reports;
}

std::string sweep_summary_csv(const std::vector<ComparisonReport>& reports,
                              const std::string& parameter,
                              const std::vector<double>& values) {
    std::ostringstream os;
    os << "parameter,value,arm,mean_path_length,std_path_length,info_per_length_r2,"
          "final_coverage\n";
    for (std::size_t i = 0; i < reports.size(); ++i)
        for (const ArmResult& arm : reports[i].arms)
            os << parameter << ',' << format_fixed(values[i]) << ',' << arm.arm << ','
               << format_fixed(arm.mean_path_length) << ','
               << format_fixed(arm.std_path_length) << ','
               << format_fixed(arm.mean_info_per_length_r2) << ','
               << format_fixed(arm.final_coverage) << '\n';
    return os.str();
}

void write_sweep_artifacts(const std::vector<ComparisonReport>& reports,
                           const std::string& parameter, const std::vector<double>& values,
                           const std::string& out_dir) {
    const std::filesystem::path dir(out_dir);
    std::filesystem::create_directories(dir);
    write_file(dir / "sweep_summary.csv", sweep_summary_csv(reports, parameter, values));
    for (std::size_t i = 0; i < reports.size(); ++i) {
        std::ostringstream name;
        name << "sweep_" << parameter << "_" << format_fixed(values[i]);
        write_experiment_artifacts(reports[i], (dir / name.str()).string());
    }
}

std::optional<int> stability_generation(const std::vector<double>& best_so_far, int window,
                                        double tolerance) {
    if (window < 1) throw std::invalid_argument("window must be >= 1");
    const int n = static_cast<int>(best_so_far.size());
    for (int g = 0; g + window < n; ++g) {
        double lo = best_so_far[static_cast<std::size_t>(g)];
        double hi = lo;
        for (int k = g; k <= g + window; ++k) {
            lo = std::min(lo, best_so_far[static_cast<std::size_t>(k)]);
            hi = std::max(hi, best_so_far[static_cast<std::size_t>(k)]);
        }
        if (hi - lo < tolerance) return g;
    }
    return std::nullopt;
}

}  // namespace irriplan
