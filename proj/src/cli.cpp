#include "irriplan/cli.hpp"

#include <CLI11.hpp>
#include <filesystem>
#include <iostream>
#include <sstream>

#include "irriplan/format.hpp"
#include "irriplan/harness.hpp"
#include "irriplan/io.hpp"
#include "irriplan/render.hpp"

namespace irriplan {

namespace {

namespace fs = std::filesystem;

FactorWeights parse_weights_flag(const std::string& value) {
    std::istringstream in(value);
    std::string part;
    double w[4];
    int i = 0;
    while (std::getline(in, part, ',')) {
        if (i >= 4) throw SpecError("--weights takes four comma-separated values");
        try {
            w[i++] = std::stod(part);
        } catch (const std::exception&) {
            throw SpecError("bad weight value: " + part);
        }
    }
    if (i != 4) throw SpecError("--weights takes four comma-separated values");
    return FactorWeights(w[0], w[1], w[2], w[3]);
}

std::vector<double> parse_values_flag(const std::string& value) {
    std::vector<double> out;
    std::istringstream in(value);
    std::string part;
    while (std::getline(in, part, ',')) {
        try {
            out.push_back(std::stod(part));
        } catch (const std::exception&) {
            throw SpecError("bad sweep value: " + part);
        }
    }
    return out;
}

std::vector<double> parse_intensity_csv(const std::string& text, const GridMap& map) {
    std::vector<double> grid;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream row(line);
        std::string cellv;
        while (std::getline(row, cellv, ',')) {
            try {
                grid.push_back(std::stod(cellv));
            } catch (const std::exception&) {
                throw MapError("bad intensity value: " + cellv);
            }
        }
    }
    if (grid.size() != static_cast<std::size_t>(map.cell_count()))
        throw MapError("intensity grid does not match map dimensions");
    return grid;
}

Path parse_path_csv(const std::string& text, const GridMap& map) {
    Path path;
    std::istringstream in(text);
    std::string line;
    bool header = true;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (header) {
            header = false;
            if (line.rfind("x,", 0) == 0) continue;
        }
        const auto comma = line.find(',');
        if (comma == std::string::npos) throw MapError("bad path row: " + line);
        try {
            const Cell c{std::stoi(line.substr(0, comma)), std::stoi(line.substr(comma + 1))};
            if (!map.in_bounds(c)) throw MapError("path cell out of bounds");
            path.cells.push_back(c);
        } catch (const MapError&) {
            throw;
        } catch (const std::exception&) {
            throw MapError("bad path row: " + line);
        }
    }
    return path;
}

struct PlanOptions {
    std::string map_path;
    std::string algo = "baseline";
    std::string out_dir = ".";
    AcoConfig aco;
    int rounds = 1;
    std::string weights;
    int drought_max = 10;
    int irrigation_radius = 1;
    bool full_report = false;  // cruise subcommand
};

template <typename Value, typename Format>
std::string grid_csv(const GridMap& map, const std::vector<Value>& values, Format&& fmt) {
    std::ostringstream os;
    for (int y = 0; y < map.height(); ++y) {
        for (int x = 0; x < map.width(); ++x) {
            if (x > 0) os << ',';
            os << fmt(values[static_cast<std::size_t>(map.index(Cell{x, y}))]);
        }
        os << '\n';
    }
    return os.str();
}

CruiseConfig cruise_config_from(const PlanOptions& opt) {
    CruiseConfig config;
    config.aco = opt.aco;
    if (!opt.weights.empty()) config.weights = parse_weights_flag(opt.weights);
    config.drought_max = opt.drought_max;
    config.irrigation_radius = opt.irrigation_radius;
    config.algorithm = opt.algo == "baseline" ? Algorithm::Baseline : Algorithm::Improved;
    return config;
}

int cmd_plan(const PlanOptions& opt) {
    const GridMap map = GridMap::load(opt.map_path);
    fs::create_directories(opt.out_dir);
    const fs::path out(opt.out_dir);

    if (opt.algo == "baseline" && !opt.full_report && opt.rounds <= 1) {
        const OptimizeResult result = optimize(map, opt.aco);
        write_text_file((out / "path.csv").string(), path_csv(result.best));
        write_text_file((out / "convergence.csv").string(), convergence_csv(result));
        write_text_file((out / "pheromone_grid.csv").string(),
                        grid_csv(map, result.pheromone_per_cell,
                                 [](double v) { return format_fixed(v); }));
        std::cout << "path length " << format_fixed(result.best.length) << '\n';
        return kExitOk;
    }

    const CruiseConfig config = cruise_config_from(opt);
    const CruiseReport report = run_cruises(map, opt.rounds, config);
    for (const CruiseRound& r : report.rounds) {
        const std::string tag = "_round_" + std::to_string(r.round);
        write_text_file((out / ("path" + tag + ".csv")).string(), path_csv(r.path));
        write_text_file((out / ("convergence" + tag + ".csv")).string(),
                        convergence_csv(r.convergence_best, r.convergence_gen));
        std::cout << "round " << r.round << " path length " << format_fixed(r.path.length)
                  << " coverage " << format_fixed(r.coverage) << '\n';
    }
    write_text_file((out / "cruise_report.csv").string(), cruise_report_csv(report));
    if (opt.full_report) {
        write_text_file((out / "irrigation_grid.csv").string(),
                        irrigation_grid_csv(report, map));
        std::vector<double> intensity(report.irrigation_count.begin(),
                                      report.irrigation_count.end());
        write_text_file((out / "irrigation_heatmap.ppm").string(),
                        render_heatmap(map, intensity, RenderStyle{}).to_ppm());
        const FieldState& state = *report.final_state;
        write_text_file((out / "state_snapshot.csv").string(), state.snapshot_csv());
        std::vector<int> drought(static_cast<std::size_t>(map.cell_count()), 0);
        for (int i = 0; i < map.cell_count(); ++i)
            drought[static_cast<std::size_t>(i)] = state.drought(map.cell_of(i));
        write_text_file((out / "drought_grid.csv").string(),
                        grid_csv(map, drought, [](int v) { return std::to_string(v); }));
    }
    return kExitOk;
}

struct CompareOptions {
    std::string spec_path;
    std::string out_dir = ".";
    int replicates = -1;
    long long seed = -1;
    std::string map_path;
};

int cmd_compare(const CompareOptions& opt) {
    ExperimentSpec spec = ExperimentSpec::load_file(opt.spec_path);
    if (opt.replicates > 0) spec.replicates = opt.replicates;
    if (opt.seed >= 0) spec.seed = static_cast<std::uint64_t>(opt.seed);
    if (!opt.map_path.empty()) spec.map_path = opt.map_path;
    spec.validate();
    const ComparisonReport report = run_experiment(spec);
    write_experiment_artifacts(report, opt.out_dir);
    for (const ArmResult& arm : report.arms)
        std::cout << arm.arm << " mean path length " << format_fixed(arm.mean_path_length)
                  << " info/length(r>=2) " << format_fixed(arm.mean_info_per_length_r2)
                  << " final coverage " << format_fixed(arm.final_coverage) << '\n';
    return kExitOk;
}

struct SweepOptions {
    std::string spec_path;
    std::string parameter;
    std::string values;
    std::string out_dir = ".";
};

int cmd_sweep(const SweepOptions& opt) {
    ExperimentSpec spec = ExperimentSpec::load_file(opt.spec_path);
    spec.validate();
    const std::vector<double> values = parse_values_flag(opt.values);
    const auto reports = sweep(spec, opt.parameter, values);
    write_sweep_artifacts(reports, opt.parameter, values, opt.out_dir);
    std::cout << "swept " << opt.parameter << " over " << values.size() << " values\n";
    return kExitOk;
}

struct RenderOptions {
    std::string map_path;
    std::string intensity_path;
    std::string path_path;
    std::string out_dir = ".";
    int cell_size = 8;
};

int cmd_render(const RenderOptions& opt) {
    const GridMap map = GridMap::load(opt.map_path);
    RenderStyle style;
    style.cell_size = opt.cell_size;
    Image image;
    if (!opt.intensity_path.empty()) {
        image = render_heatmap(map, parse_intensity_csv(read_text_file(opt.intensity_path), map),
                               style);
    } else if (!opt.path_path.empty()) {
        image = render_path(map, parse_path_csv(read_text_file(opt.path_path), map), style);
    } else {
        image = render_map(map, style);
    }
    fs::create_directories(opt.out_dir);
    write_text_file((fs::path(opt.out_dir) / "render.ppm").string(), image.to_ppm());
    return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args) {
    CLI::App app{"grid-world coverage planning and multi-round irrigation simulation"};
    app.require_subcommand(1);

    PlanOptions plan;
    CLI::App* plan_cmd = app.add_subcommand("plan", "plan a start-to-goal path");
    CLI::App* cruise_cmd =
        app.add_subcommand("cruise", "multi-round cruise with full field artifacts");
    for (CLI::App* cmd : {plan_cmd, cruise_cmd}) {
        cmd->add_option("--map", plan.map_path, "map file (.grid)")->required();
        cmd->add_option("--algo", plan.algo, "baseline|improved")
            ->check(CLI::IsMember({"baseline", "improved"}));
        cmd->add_option("--seed", plan.aco.seed, "RNG seed");
        cmd->add_option("--ants", plan.aco.ants, "ants per generation (M)");
        cmd->add_option("--generations", plan.aco.generations, "generations (K)");
        cmd->add_option("--alpha", plan.aco.alpha, "pheromone importance");
        cmd->add_option("--beta", plan.aco.beta, "heuristic importance");
        cmd->add_option("--evaporation", plan.aco.evaporation, "evaporation in (0,1)");
        cmd->add_option("--q", plan.aco.q, "deposit constant Q");
        cmd->add_option("--max-steps", plan.aco.max_steps, "ant step budget, 0 = auto");
        cmd->add_option("--rounds", plan.rounds, "cruise rounds");
        cmd->add_option("--weights", plan.weights, "lambda1,lambda2,lambda3,lambda4");
        cmd->add_option("--drought-max", plan.drought_max, "maximum-risk drought value");
        cmd->add_option("--radius", plan.irrigation_radius, "irrigation radius");
        cmd->add_option("--out", plan.out_dir, "output directory");
    }
    cruise_cmd->parse_complete_callback([&plan] {
        plan.algo = "improved";
        plan.full_report = true;
    });

    CompareOptions compare;
    CLI::App* compare_cmd =
        app.add_subcommand("compare", "baseline-vs-improved experiment from a spec file");
    compare_cmd->add_option("--spec", compare.spec_path, "experiment spec file")->required();
    compare_cmd->add_option("--out", compare.out_dir, "output directory");
    compare_cmd->add_option("--replicates", compare.replicates, "override replicates");
    compare_cmd->add_option("--seed", compare.seed, "override seed");
    compare_cmd->add_option("--map", compare.map_path, "override map path");

    SweepOptions sweep_opt;
    CLI::App* sweep_cmd = app.add_subcommand("sweep", "parameter sweep over an experiment");
    sweep_cmd->add_option("--spec", sweep_opt.spec_path, "experiment spec file")->required();
    sweep_cmd->add_option("--param", sweep_opt.parameter, "M|K|alpha|beta|evaporation|lambda1..4|rounds")
        ->required();
    sweep_cmd->add_option("--values", sweep_opt.values, "comma-separated values")->required();
    sweep_cmd->add_option("--out", sweep_opt.out_dir, "output directory");

    RenderOptions render;
    CLI::App* render_cmd = app.add_subcommand("render", "render a map, path or heatmap to PPM");
    render_cmd->add_option("--map", render.map_path, "map file (.grid)")->required();
    render_cmd->add_option("--intensity", render.intensity_path, "per-cell intensity CSV");
    render_cmd->add_option("--path", render.path_path, "path CSV overlay");
    render_cmd->add_option("--cell-size", render.cell_size, "pixels per cell");
    render_cmd->add_option("--out", render.out_dir, "output directory");

    std::vector<std::string> argv_storage;
    argv_storage.push_back("irriplan");
    for (const std::string& a : args) argv_storage.push_back(a);
    std::vector<const char*> argv;
    for (const std::string& a : argv_storage) argv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        std::cout << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitBadFlags;
    }

    try {
        if (plan_cmd->parsed()) return cmd_plan(plan);
        if (cruise_cmd->parsed()) return cmd_plan(plan);
        if (compare_cmd->parsed()) return cmd_compare(compare);
        if (sweep_cmd->parsed()) return cmd_sweep(sweep_opt);
        if (render_cmd->parsed()) return cmd_render(render);
    } catch (const PlanError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUnreachable;
    } catch (const SpecError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitBadFlags;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitBadFlags;
    } catch (const MapError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitParse;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitParse;
    }
    return kExitBadFlags;
}

}  // namespace irriplan
