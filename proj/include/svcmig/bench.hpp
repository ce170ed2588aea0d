#pragma once

// Experiment harness: random instances, solver comparison, beta sweeps and
// CSV/JSON output.

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "svcmig/simulator.hpp"

namespace svcmig::bench {

enum class Command { Solve, Compare, Sweep, Simulate, OracleCheck };

enum class SolverKind { Threshold, ValueIteration, PolicyIteration, NeverMigrate, AlwaysMigrate };

std::string_view solver_name(SolverKind kind) noexcept;
// Accepts the names above plus the short forms threshold, vi, pi, never, always.
SolverKind parse_solver(std::string_view name);

enum class OutputFormat { Csv, Json };

// Environment variable naming the directory that relative --out/--summary
// paths are resolved against.
inline constexpr const char* kOutputDirEnv = "SVCMIG_OUTPUT_DIR";

struct ExperimentConfig {
    Command command = Command::Solve;
    int min_state = -10;
    int max_state = 10;
    std::vector<double> gammas{0.9};
    std::vector<double> betas;
    double epsilon = 0.1;
    std::size_t instances = 1000;
    std::uint64_t seed = 0;
    std::string rule = "uniform-simplex";
    std::vector<SolverKind> solvers{SolverKind::Threshold, SolverKind::ValueIteration,
                                    SolverKind::PolicyIteration, SolverKind::NeverMigrate,
                                    SolverKind::AlwaysMigrate};
    int s0 = 0;
    // Initial policy for policy iteration.
    bool pi_start_never = false;
    // Fixed instance for `solve` and `simulate`.
    std::optional<double> p;
    std::optional<double> q;
    OutputFormat format = OutputFormat::Csv;
    std::string output;          // empty: standard output
    std::string summary_output;  // sweep summary; empty: standard error
    // `simulate`
    std::string policy = "optimal";
    std::size_t runs = 100'000;
    double truncation_tol = 1e-3;
    // Set when --help was requested; holds the help text.
    std::optional<std::string> help;
};

// Parses a command line (without the program name). `--config FILE` loads
// key=value lines or a flat JSON object; explicit flags override file values.
// Lists accept "a,b,c" or the range form "start:step:stop".
// Throws Error(Usage) naming the offending flag.
ExperimentConfig parse_config(const std::vector<std::string>& args);

std::vector<double> parse_number_list(std::string_view text);

// Draws (p, q) with p, q >= 0 and p + q <= 1. Rule "uniform-simplex": two
// uniforms u, v, reflected to (1 - u, 1 - v) when u + v > 1, which is uniform
// on the triangle. Throws Error(UnknownRule).
std::pair<double, double> random_instance(std::string_view rule, RngStream& rng);

struct SolverOutcome {
    SolverKind solver = SolverKind::Threshold;
    double v_s0 = 0.0;
    std::optional<int> k1;
    std::optional<int> k2;
    double wall_time_s = 0.0;
    std::size_t iterations = 0;
    std::size_t linear_solves = 0;
};

struct SweepRecord {
    double beta = 0.0;
    double gamma = 0.0;
    double p = 0.0;
    double q = 0.0;
    std::uint64_t seed = 0;
    std::vector<SolverOutcome> outcomes;

    const SolverOutcome* find(SolverKind kind) const;
};

// Seed of instance i under master seed m is m + i.
std::uint64_t instance_seed(const ExperimentConfig& cfg, std::size_t index);

// One record per (gamma, beta, instance), ordered by gamma, then beta, then seed.
// Throws Error(Solver) with the instance seed when a solver fails or exact
// solvers disagree by more than 1e-6 at s0.
std::vector<SweepRecord> run_compare(const ExperimentConfig& cfg);

struct SummaryRow {
    double gamma = 0.0;
    double beta = 0.0;
    SolverKind solver = SolverKind::Threshold;
    double mean_v_s0 = 0.0;
    double mean_wall_time_s = 0.0;
    double mean_iterations = 0.0;
    double mean_linear_solves = 0.0;
    // mean wall time over the threshold solver's mean wall time (0 if absent)
    double time_ratio_vs_threshold = 0.0;
};

struct SweepResult {
    std::vector<SweepRecord> records;
    std::vector<SummaryRow> summary;
};

SweepResult run_beta_sweep(const ExperimentConfig& cfg);
std::vector<SummaryRow> summarize(const std::vector<SweepRecord>& records);

inline constexpr std::string_view kCsvHeader =
    "beta,gamma,p,q,seed,solver,v_s0,k1,k2,wall_time_s,iterations,linear_solves";

// Doubles are printed with 9 significant digits. Throws Error(Usage) on empty input.
void emit_results(const std::vector<SweepRecord>& records, OutputFormat format, std::ostream& out);
// Empty path writes to standard output. Throws Error(Io) naming the path.
void emit_results(const std::vector<SweepRecord>& records, OutputFormat format,
                  const std::string& path);

void emit_summary(const std::vector<SummaryRow>& rows, OutputFormat format, std::ostream& out);

std::string format_double(double x);

// Resolves a relative output path against $SVCMIG_OUTPUT_DIR when set.
std::string resolve_output_path(const std::string& path);

struct OracleCheckReport {
    std::size_t instances = 0;
    std::size_t threshold_matches_exhaustive = 0;
    std::size_t policy_iteration_matches = 0;
    std::size_t value_iteration_within_epsilon = 0;
    std::size_t policy_is_threshold = 0;
    std::size_t iteration_bound_held = 0;
    std::size_t extended_action_instances = 0;
    std::size_t extended_action_held = 0;

    bool all_passed() const noexcept {
        return threshold_matches_exhaustive == instances && policy_iteration_matches == instances &&
               value_iteration_within_epsilon == instances && policy_is_threshold == instances &&
               iteration_bound_held == instances && extended_action_held == extended_action_instances;
    }
};

// Runs the brute-force checks on cfg.instances random instances per (gamma, beta),
// plus the extended-action check on one M = -3, N = 3 instance per seed.
OracleCheckReport run_oracle_check(const ExperimentConfig& cfg);

}  // namespace svcmig::bench
