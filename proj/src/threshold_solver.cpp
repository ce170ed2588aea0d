#include "svcmig/threshold_solver.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace svcmig {

namespace {

constexpr int sign(int k) noexcept { return (k > 0) - (k < 0); }

enum class Direction { TowardZero, TowardBoundary };

// Thresholds from `from` to `to` inclusive, stepping by `step`; empty when
// `to` lies behind `from`.
std::vector<int> scan_range(int from, int to, int step) {
    std::vector<int> out;
    for (int k = from; (to - k) * step >= 0; k += step) {
        out.push_back(k);
    }
    return out;
}

// One side (k1 when `lower_side`, else k2) of a threshold-search iteration.
// `values` belongs to the thresholds at the start of the outer iteration and is
// not refreshed while scanning.
void adjust_threshold(const MigrationMdp& mdp, const ValueFunction& values, double migrate_value,
                      bool lower_side, int& threshold) {
    const int inward = lower_side ? 1 : -1;
    Direction dir;
    std::vector<int> candidates;
    if (migrate_value < values[threshold]) {
        dir = Direction::TowardZero;
        candidates = scan_range(threshold + inward, 0, inward);
        threshold += inward;
    } else {
        dir = Direction::TowardBoundary;
        const int limit = lower_side ? mdp.min_state() + 1 : mdp.max_state() - 1;
        candidates = scan_range(threshold - inward, limit, -inward);
    }

    for (const int k : candidates) {
        const double current = values[k];
        if (dir == Direction::TowardBoundary) {
            const double stay = mdp.beta() +
                                mdp.gamma() * expected_next_value(mdp, values, k, Action::NoMigrate);
            if (stay < current) {
                threshold = k;
            } else if (stay > current) {
                break;
            }
        } else {
            if (migrate_value < current) {
                threshold = k - sign(k);
            } else if (migrate_value > current) {
                break;
            }
        }
    }
}

}  // namespace

void validate_thresholds(const MigrationMdp& mdp, ThresholdPair t) {
    if (!(t.k1 > mdp.min_state() && t.k1 <= 0 && t.k2 >= 0 && t.k2 < mdp.max_state())) {
        throw Error(Errc::InvalidThresholds,
                    "need M < k1 <= 0 <= k2 < N (k1=" + std::to_string(t.k1) +
                        ", k2=" + std::to_string(t.k2) + ")");
    }
}

StatePolicy threshold_policy(const MigrationMdp& mdp, ThresholdPair t) {
    validate_thresholds(mdp, t);
    StatePolicy policy(mdp, Action::Migrate);
    for (int s = t.k1; s <= t.k2; ++s) {
        policy[s] = Action::NoMigrate;
    }
    return policy;
}

PolicySystem build_policy_system(const MigrationMdp& mdp, ThresholdPair t) {
    validate_thresholds(mdp, t);
    const int first = t.k1 - 1;
    const int last = t.k2 + 1;
    const auto n = static_cast<std::size_t>(last - first + 1);
    const MoveDistribution move = movement_distribution(mdp);

    PolicySystem sys{DenseMatrix(n, n), DenseVector(n, mdp.beta()), first};
    for (int s = first; s <= last; ++s) {
        const auto row = static_cast<std::size_t>(s - first);
        const bool migrate = s == first || s == last;
        const int centre = migrate ? 0 : s;
        if (centre - 1 < first || centre + 1 > last) {
            throw std::logic_error("policy kernel leaves the evaluation window");
        }
        const auto col = static_cast<std::size_t>(centre - first);
        sys.transition(row, col - 1) += move.down;
        sys.transition(row, col) += move.stay;
        sys.transition(row, col + 1) += move.up;
        if (migrate) {
            sys.cost[row] = 1.0;
        } else if (s == 0) {
            sys.cost[row] = 0.0;
        }
    }
    return sys;
}

ValueFunction evaluate_thresholds(const MigrationMdp& mdp, ThresholdPair t) {
    const PolicySystem sys = build_policy_system(mdp, t);
    const std::size_t n = sys.cost.size();
    DenseMatrix lhs = DenseMatrix::identity(n);
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) {
            lhs(r, c) -= mdp.gamma() * sys.transition(r, c);
        }
    }
    const DenseVector window = solve_dense(lhs, sys.cost);

    ValueFunction values(mdp);
    for (int s = mdp.min_state(); s <= mdp.max_state(); ++s) {
        const int clamped = s < sys.first_state ? sys.first_state
                            : s > t.k2 + 1  ? t.k2 + 1
                                            : s;
        values[s] = window[static_cast<std::size_t>(clamped - sys.first_state)];
    }
    return values;
}

ThresholdSolveResult find_optimal_thresholds(const MigrationMdp& mdp) {
    ThresholdSolveResult result;
    ThresholdPair current{0, 0};
    const std::size_t max_iterations = mdp.num_threshold_pairs() + 1;

    for (;;) {
        if (result.outer_iterations == max_iterations) {
            throw std::logic_error("threshold search exceeded |M|*N + 1 iterations");
        }
        ++result.outer_iterations;
        const ThresholdPair previous = current;
        result.history.push_back(current);
        result.values = evaluate_thresholds(mdp, current);
        ++result.linear_solves;

        const double migrate_value =
            action_value(mdp, result.values, mdp.max_state(), Action::Migrate);
        adjust_threshold(mdp, result.values, migrate_value, true, current.k1);
        adjust_threshold(mdp, result.values, migrate_value, false, current.k2);

        if (current == previous) {
            break;
        }
    }
    result.thresholds = current;
    return result;
}

}  // namespace svcmig
