#pragma once

#include <cstddef>
#include <vector>

#include "svcmig/linalg.hpp"
#include "svcmig/mdp.hpp"

namespace svcmig {

// Threshold policy: NoMigrate on the band [k1, k2] around 0, Migrate outside it.
// Feasible pairs satisfy M < k1 <= 0 <= k2 < N.
struct ThresholdPair {
    int k1 = 0;
    int k2 = 0;

    friend bool operator==(const ThresholdPair&, const ThresholdPair&) = default;
};

// Throws Error(InvalidThresholds) for an infeasible pair.
void validate_thresholds(const MigrationMdp& mdp, ThresholdPair t);

StatePolicy threshold_policy(const MigrationMdp& mdp, ThresholdPair t);

// Linear system v = c + gamma * P' v restricted to the window of states
// k1 - 1 .. k2 + 1. Entry i of both objects refers to state first_state + i.
struct PolicySystem {
    DenseMatrix transition;
    DenseVector cost;
    int first_state = 0;
};

PolicySystem build_policy_system(const MigrationMdp& mdp, ThresholdPair t);

// Exact discounted cost of the threshold policy from every state in [M, N].
// States below k1 - 1 share V(k1 - 1); states above k2 + 1 share V(k2 + 1).
ValueFunction evaluate_thresholds(const MigrationMdp& mdp, ThresholdPair t);

struct ThresholdSolveResult {
    ThresholdPair thresholds;
    ValueFunction values;
    std::size_t outer_iterations = 0;
    std::size_t linear_solves = 0;
    // Thresholds evaluated at the start of each outer iteration, in order.
    std::vector<ThresholdPair> history;
};

// Modified policy iteration over threshold pairs, starting from (0, 0).
//
// Each outer iteration evaluates the current pair exactly, then for each side
// picks a search direction by comparing the migrate value against V(k_i) and
// scans candidate thresholds in that direction: a strict improvement moves the
// threshold, a strict worsening ends the scan, equality keeps scanning. The
// search stops once an iteration leaves both thresholds unchanged, which takes
// at most |M| * N + 1 outer iterations.
ThresholdSolveResult find_optimal_thresholds(const MigrationMdp& mdp);

}  // namespace svcmig
