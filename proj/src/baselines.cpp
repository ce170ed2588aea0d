#include "svcmig/baselines.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

#include "svcmig/linalg.hpp"

namespace svcmig {

SolverReport value_iteration(const MigrationMdp& mdp, double epsilon) {
    if (!(epsilon > 0.0)) {
        throw Error(Errc::InvalidCost, "value iteration tolerance must be positive");
    }
    const double scale = mdp.gamma() / (1.0 - mdp.gamma());
    SolverReport report;
    report.values = ValueFunction(mdp, 0.0);
    for (;;) {
        auto [next, policy] = bellman_backup(mdp, report.values);
        ++report.iterations;
        const double delta = max_abs_diff(next, report.values);
        report.values = std::move(next);
        report.policy = std::move(policy);
        if (scale * delta <= epsilon) {
            break;
        }
    }
    return report;
}

ValueFunction evaluate_fixed_policy(const MigrationMdp& mdp, const StatePolicy& policy) {
    validate_policy(mdp, policy);
    const std::size_t n = mdp.num_states();
    const MoveDistribution move = movement_distribution(mdp);
    DenseMatrix lhs = DenseMatrix::identity(n);
    DenseVector cost(n);
    for (int s = mdp.min_state(); s <= mdp.max_state(); ++s) {
        const auto row = static_cast<std::size_t>(s - mdp.min_state());
        const Action a = policy[s];
        cost[row] = one_slot_cost(mdp, s, a);
        const int centre = a == Action::Migrate ? 0 : s;
        const auto col = static_cast<std::size_t>(centre - mdp.min_state());
        lhs(row, col - 1) -= mdp.gamma() * move.down;
        lhs(row, col) -= mdp.gamma() * move.stay;
        lhs(row, col + 1) -= mdp.gamma() * move.up;
    }
    const DenseVector solution = solve_dense(lhs, cost);
    ValueFunction values(mdp);
    std::copy(solution.begin(), solution.end(), values.begin());
    return values;
}

SolverReport policy_iteration(const MigrationMdp& mdp) {
    return policy_iteration(mdp, always_migrate_policy(mdp));
}

SolverReport policy_iteration(const MigrationMdp& mdp, StatePolicy initial) {
    validate_policy(mdp, initial);
    SolverReport report;
    report.policy = std::move(initial);
    // Guard only; stable policies are reached in a handful of evaluations.
    const std::size_t max_iterations = mdp.num_states() * mdp.num_states() + 10;
    for (;;) {
        if (report.iterations == max_iterations) {
            throw std::logic_error("policy iteration failed to stabilise");
        }
        report.values = evaluate_fixed_policy(mdp, report.policy);
        ++report.linear_solves;
        ++report.iterations;
        auto improved = bellman_backup(mdp, report.values).second;
        if (improved == report.policy) {
            break;
        }
        report.policy = std::move(improved);
    }
    return report;
}

StatePolicy never_migrate_policy(const MigrationMdp& mdp) {
    StatePolicy policy(mdp, Action::NoMigrate);
    policy[mdp.min_state()] = Action::Migrate;
    policy[mdp.max_state()] = Action::Migrate;
    return policy;
}

StatePolicy always_migrate_policy(const MigrationMdp& mdp) {
    StatePolicy policy(mdp, Action::Migrate);
    policy[0] = Action::NoMigrate;
    return policy;
}

}  // namespace svcmig
