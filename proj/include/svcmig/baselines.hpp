#pragma once

#include <cstddef>

#include "svcmig/mdp.hpp"

namespace svcmig {

struct SolverReport {
    ValueFunction values;
    StatePolicy policy;
    std::size_t iterations = 0;
    std::size_t linear_solves = 0;
};

/// Value iteration from V = 0. Stops once gamma / (1 - gamma) * ||V' - V||_inf
/// <= epsilon, so the result is within epsilon of the optimum in the sup norm.
SolverReport value_iteration(const MigrationMdp& mdp, double epsilon);

/// Howard policy iteration. Each iteration is one exact evaluation over all
/// |M| + N + 1 states followed by greedy improvement (ties keep NoMigrate).
/// The default start is the always-migrate policy, the same starting point as
/// find_optimal_thresholds, so solve counts compare like for like.
SolverReport policy_iteration(const MigrationMdp& mdp);
SolverReport policy_iteration(const MigrationMdp& mdp, StatePolicy initial);

/// Exact discounted cost of an arbitrary stationary policy (one dense solve).
ValueFunction evaluate_fixed_policy(const MigrationMdp& mdp, const StatePolicy& policy);

/// Migrate only at the forced states M and N.
StatePolicy never_migrate_policy(const MigrationMdp& mdp);

/// Migrate at every nonzero offset; the threshold policy (0, 0).
StatePolicy always_migrate_policy(const MigrationMdp& mdp);

}  // namespace svcmig
