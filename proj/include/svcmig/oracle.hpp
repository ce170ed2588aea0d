#pragma once

// Brute-force verifiers that share no search logic with the solvers they check.

#include <cstddef>
#include <vector>

#include "svcmig/mdp.hpp"
#include "svcmig/threshold_solver.hpp"

namespace svcmig {

inline constexpr std::size_t kEnumerationBudget = 10'000;

struct ExhaustiveResult {
    ThresholdPair thresholds;
    ValueFunction values;
    std::size_t pairs_evaluated = 0;
};

// Evaluates every feasible (k1, k2) and returns one whose value function is the
// pointwise minimum over all pairs (within 1e-9 at every state). Among such
// pairs the smallest |k1| wins, then the smallest k2.
// Throws Error(TooLarge) beyond kEnumerationBudget pairs, and std::logic_error
// if no single pair attains the minimum at every state.
ExhaustiveResult exhaustive_threshold_search(const MigrationMdp& mdp);

// True iff, after forcing action(0) = NoMigrate, the NoMigrate states form one
// contiguous band containing 0.
bool is_threshold_policy(const StatePolicy& policy);

struct ExtendedActionReport {
    ValueFunction values;
    // Per state: best value over {no-migrate, migrate to the user} minus the
    // best value over the full action set, both at the final iterate. Never
    // negative.
    ValueFunction canonical_gap;
    std::size_t sweeps = 0;
};

// Value iteration over the enlarged action set: stay, or migrate the service so
// that it sits at offset d from the user, for every d in [M + 1, N - 1].
// Migrating to d = 0 costs 1; migrating to d != 0 also pays transmission (1 + beta).
// Same stopping rule as value_iteration.
ExtendedActionReport extended_action_value_iteration(const MigrationMdp& mdp, double epsilon);

}  // namespace svcmig
