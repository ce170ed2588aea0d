#include <chrono>
#include <cmath>
#include <map>
#include <string>
#include <tuple>

#include "svcmig/baselines.hpp"
#include "svcmig/bench.hpp"
#include "svcmig/oracle.hpp"
#include "svcmig/threshold_solver.hpp"

namespace svcmig::bench {

namespace {

constexpr double kExactAgreement = 1e-6;

template <typename F>
auto timed(double& seconds, F&& fn) {
    const auto start = std::chrono::steady_clock::now();
    auto result = fn();
    seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return result;
}

SolverOutcome run_solver(SolverKind kind, const MigrationMdp& mdp, const ExperimentConfig& cfg) {
    SolverOutcome out;
    out.solver = kind;
    switch (kind) {
        case SolverKind::Threshold: {
            const auto r = timed(out.wall_time_s, [&] { return find_optimal_thresholds(mdp); });
            out.v_s0 = r.values[cfg.s0];
            out.k1 = r.thresholds.k1;
            out.k2 = r.thresholds.k2;
            out.iterations = r.outer_iterations;
            out.linear_solves = r.linear_solves;
            break;
        }
        case SolverKind::ValueIteration: {
            const auto r = timed(out.wall_time_s, [&] { return value_iteration(mdp, cfg.epsilon); });
            out.v_s0 = r.values[cfg.s0];
            out.iterations = r.iterations;
            out.linear_solves = r.linear_solves;
            break;
        }
        case SolverKind::PolicyIteration: {
            const auto r = timed(out.wall_time_s, [&] {
                return cfg.pi_start_never ? policy_iteration(mdp, never_migrate_policy(mdp))
                                          : policy_iteration(mdp);
            });
            out.v_s0 = r.values[cfg.s0];
            out.iterations = r.iterations;
            out.linear_solves = r.linear_solves;
            break;
        }
        case SolverKind::NeverMigrate:
        case SolverKind::AlwaysMigrate: {
            const auto v = timed(out.wall_time_s, [&] {
                return evaluate_fixed_policy(mdp, kind == SolverKind::NeverMigrate
                                                      ? never_migrate_policy(mdp)
                                                      : always_migrate_policy(mdp));
            });
            out.v_s0 = v[cfg.s0];
            out.iterations = 1;
            out.linear_solves = 1;
            break;
        }
    }
    return out;
}

void check_consistency(const SweepRecord& rec, double epsilon) {
    const SolverOutcome* threshold = rec.find(SolverKind::Threshold);
    const SolverOutcome* pi = rec.find(SolverKind::PolicyIteration);
    const SolverOutcome* vi = rec.find(SolverKind::ValueIteration);
    const SolverOutcome* exact = threshold ? threshold : pi;
    if (threshold && pi && std::abs(threshold->v_s0 - pi->v_s0) > kExactAgreement) {
        throw Error(Errc::Solver, "threshold and policy iteration disagree at s0");
    }
    if (exact && vi && std::abs(exact->v_s0 - vi->v_s0) > epsilon) {
        throw Error(Errc::Solver, "value iteration outside its error bound at s0");
    }
    if (exact) {
        for (const SolverOutcome& o : rec.outcomes) {
            const bool reference =
                o.solver == SolverKind::NeverMigrate || o.solver == SolverKind::AlwaysMigrate;
            if (reference && o.v_s0 < exact->v_s0 - kExactAgreement) {
                throw Error(Errc::Solver, "a fixed policy beat the optimum at s0");
            }
        }
    }
}

}  // namespace

const SolverOutcome* SweepRecord::find(SolverKind kind) const {
    for (const auto& o : outcomes) {
        if (o.solver == kind) {
            return &o;
        }
    }
    return nullptr;
}

std::pair<double, double> random_instance(std::string_view rule, RngStream& rng) {
    if (rule != "uniform-simplex") {
        throw Error(Errc::UnknownRule, "unknown instance rule '" + std::string(rule) + "'");
    }
    double p = rng.uniform();
    double q = rng.uniform();
    if (p + q > 1.0) {
        p = 1.0 - p;
        q = 1.0 - q;
    }
    return {p, q};
}

std::uint64_t instance_seed(const ExperimentConfig& cfg, std::size_t index) {
    return cfg.seed + index;
}

std::vector<SweepRecord> run_compare(const ExperimentConfig& cfg) {
    if (cfg.solvers.empty()) {
        throw Error(Errc::Usage, "empty solver selection");
    }
    if (cfg.betas.empty()) {
        throw Error(Errc::Usage, "no beta values");
    }
    std::vector<std::pair<double, double>> instances;
    instances.reserve(cfg.instances);
    for (std::size_t i = 0; i < cfg.instances; ++i) {
        RngStream rng(instance_seed(cfg, i));
        instances.push_back(random_instance(cfg.rule, rng));
    }

    std::vector<SweepRecord> records;
    records.reserve(cfg.gammas.size() * cfg.betas.size() * cfg.instances);
    for (const double gamma : cfg.gammas) {
        for (const double beta : cfg.betas) {
            for (std::size_t i = 0; i < cfg.instances; ++i) {
                const auto [p, q] = instances[i];
                SweepRecord rec{beta, gamma, p, q, instance_seed(cfg, i), {}};
                try {
                    const MigrationMdp mdp(p, q, cfg.min_state, cfg.max_state, beta, gamma);
                    for (const SolverKind kind : cfg.solvers) {
                        rec.outcomes.push_back(run_solver(kind, mdp, cfg));
                    }
                    check_consistency(rec, cfg.epsilon);
                } catch (const std::exception& e) {
                    throw Error(Errc::Solver, "instance seed " + std::to_string(rec.seed) +
                                                  " (beta=" + format_double(beta) +
                                                  ", gamma=" + format_double(gamma) + "): " + e.what());
                }
                records.push_back(std::move(rec));
            }
        }
    }
    return records;
}

std::vector<SummaryRow> summarize(const std::vector<SweepRecord>& records) {
    struct Acc {
        double v = 0.0, t = 0.0, it = 0.0, ls = 0.0;
        std::size_t n = 0;
    };
    // Keyed by (gamma, beta, solver); std::map keeps the output order fixed.
    std::map<std::tuple<double, double, int>, Acc> acc;
    for (const auto& rec : records) {
        for (const auto& o : rec.outcomes) {
            Acc& a = acc[{rec.gamma, rec.beta, static_cast<int>(o.solver)}];
            a.v += o.v_s0;
            a.t += o.wall_time_s;
            a.it += static_cast<double>(o.iterations);
            a.ls += static_cast<double>(o.linear_solves);
            ++a.n;
        }
    }
    std::vector<SummaryRow> rows;
    for (const auto& [key, a] : acc) {
        const auto [gamma, beta, solver] = key;
        const auto n = static_cast<double>(a.n);
        rows.push_back({gamma, beta, static_cast<SolverKind>(solver), a.v / n, a.t / n, a.it / n,
                        a.ls / n, 0.0});
    }
    for (auto& row : rows) {
        for (const auto& ref : rows) {
            if (ref.gamma == row.gamma && ref.beta == row.beta &&
                ref.solver == SolverKind::Threshold && ref.mean_wall_time_s > 0.0) {
                row.time_ratio_vs_threshold = row.mean_wall_time_s / ref.mean_wall_time_s;
            }
        }
    }
    return rows;
}

SweepResult run_beta_sweep(const ExperimentConfig& cfg) {
    SweepResult result;
    result.records = run_compare(cfg);
    result.summary = summarize(result.records);
    return result;
}

OracleCheckReport run_oracle_check(const ExperimentConfig& cfg) {
    OracleCheckReport report;
    constexpr double kExtendedEpsilon = 1e-4;
    for (const double gamma : cfg.gammas) {
        for (const double beta : cfg.betas) {
            for (std::size_t i = 0; i < cfg.instances; ++i) {
                RngStream rng(instance_seed(cfg, i));
                const auto [p, q] = random_instance(cfg.rule, rng);
                const MigrationMdp mdp(p, q, cfg.min_state, cfg.max_state, beta, gamma);
                ++report.instances;

                const auto threshold = find_optimal_thresholds(mdp);
                const auto exhaustive = exhaustive_threshold_search(mdp);
                const auto pi = policy_iteration(mdp);
                const auto vi = value_iteration(mdp, cfg.epsilon);
                if (max_abs_diff(threshold.values, exhaustive.values) <= 1e-9) {
                    ++report.threshold_matches_exhaustive;
                }
                if (max_abs_diff(threshold.values, pi.values) <= 1e-9) {
                    ++report.policy_iteration_matches;
                }
                if (max_abs_diff(threshold.values, vi.values) <= cfg.epsilon) {
                    ++report.value_iteration_within_epsilon;
                }
                StatePolicy canonical = pi.policy;
                canonical[0] = Action::NoMigrate;
                if (is_threshold_policy(canonical)) {
                    ++report.policy_is_threshold;
                }
                if (threshold.outer_iterations <= mdp.num_threshold_pairs() + 1) {
                    ++report.iteration_bound_held;
                }
            }
        }
    }
    for (std::size_t i = 0; i < cfg.instances; ++i) {
        RngStream rng(instance_seed(cfg, i));
        const auto [p, q] = random_instance(cfg.rule, rng);
        const double gamma = cfg.gammas[i % cfg.gammas.size()];
        const double beta = cfg.betas[i % cfg.betas.size()];
        const MigrationMdp small(p, q, -3, 3, beta, gamma);
        ++report.extended_action_instances;
        const auto extended = extended_action_value_iteration(small, kExtendedEpsilon);
        const auto exact = find_optimal_thresholds(small);
        if (max_abs_diff(extended.values, exact.values) <= 2 * kExtendedEpsilon) {
            ++report.extended_action_held;
        }
    }
    return report;
}

}  // namespace svcmig::bench
