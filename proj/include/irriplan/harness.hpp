#ifndef IRRIPLAN_HARNESS_HPP
#define IRRIPLAN_HARNESS_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "irriplan/planner.hpp"

namespace irriplan {

class SpecError : public std::runtime_error {
public:
    explicit SpecError(const std::string& what) : std::runtime_error(what) {}
};

// Plain-text key=value experiment description. Raw tunables are kept here
// so parameter sweeps can overwrite a single field before the cruise
// config is built.
struct ExperimentSpec {
    std::string map_path;
    bool run_baseline = true;
    bool run_improved = true;

    int ants = 50;
    int generations = 100;
    double alpha = 1.0;
    double beta = 2.0;
    double q = 1.0;
    double evaporation = 0.1;
    double initial_pheromone = 1.0;
    int max_steps = 0;
    std::uint64_t seed = 1;

    int rounds = 3;
    int replicates = 20;
    double lambda[4] = {0.2, 0.2, 0.25, 0.35};

    double decay_per_round = 0.2;
    double dry_threshold = 0.5;
    double irrigation_refill = 1.0;
    int drought_max = 10;
    int irrigation_radius = 1;
    double explore_decrement = 0.1;
    double explore_bias = 1.0;

    // Acceptance thresholds for the improved-vs-baseline comparison,
    // recorded with the experiment.
    double min_info_gain_ratio = 1.10;
    double max_length_inflation = 1.25;

    static ExperimentSpec parse(const std::string& text);
    static ExperimentSpec load_file(const std::string& path);
    void validate() const;

    CruiseConfig build_config(Algorithm algorithm) const;
};

struct ArmResult {
    std::string arm;  // "baseline" or "improved"
    std::vector<CruiseReport> runs;  // one per replicate

    double mean_path_length = 0.0;   // per-replicate mean round length, averaged
    double std_path_length = 0.0;
    double mean_path_length_r2 = 0.0;       // rounds >= 2 only
    double mean_info_per_length_r2 = 0.0;   // newly-explored cells per unit length
    double final_coverage = 0.0;
    std::vector<double> mean_coverage_per_round;
    std::vector<double> mean_irrigation;    // per cell, averaged over replicates
};

struct ComparisonReport {
    ExperimentSpec spec;
    std::vector<ArmResult> arms;

    const ArmResult* arm(const std::string& name) const;
};

// Runs `replicates` seeded cruises per enabled arm. Replicate r of both
// arms shares the same derived seed, so the comparison is paired.
// Deterministic for a fixed spec.
ComparisonReport run_experiment(const ExperimentSpec& spec);

// Emits report.csv, convergence_<arm>_<rep>.csv and irrigation_grid_<arm>.csv
// under out_dir (created if missing).
void write_experiment_artifacts(const ComparisonReport& report, const std::string& out_dir);

// One experiment per value of the swept parameter. Parameter names:
// M, K, alpha, beta, evaporation, lambda1..lambda4, rounds.
std::vector<ComparisonReport> sweep(const ExperimentSpec& spec, const std::string& parameter,
                                    const std::vector<double>& values);

void write_sweep_artifacts(const std::vector<ComparisonReport>& reports,
                           const std::string& parameter, const std::vector<double>& values,
                           const std::string& out_dir);

std::string sweep_summary_csv(const std::vector<ComparisonReport>& reports,
                              const std::string& parameter,
                              const std::vector<double>& values);

// First generation g whose best length moves by less than `tolerance`
// across the closed range [g, g+window]; nullopt when never stable.
std::optional<int> stability_generation(const std::vector<double>& best_so_far, int window,
                                        double tolerance);

std::string report_csv(const ComparisonReport& report);

}  // namespace irriplan

#endif
