#include "svcmig/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <ranges>
#include <stdexcept>
#include <string>
#include <utility>

namespace svcmig {

ExhaustiveResult exhaustive_threshold_search(const MigrationMdp& mdp) {
    const std::size_t pairs = mdp.num_threshold_pairs();
    if (pairs > kEnumerationBudget) {
        throw Error(Errc::TooLarge, std::to_string(pairs) + " threshold pairs exceed the budget of " +
                                        std::to_string(kEnumerationBudget));
    }

    // Ordered by |k1| then k2, which is also the tie-break order.
    std::vector<std::pair<ThresholdPair, ValueFunction>> evaluated;
    evaluated.reserve(pairs);
    for (int k1 = 0; k1 > mdp.min_state(); --k1) {
        for (int k2 = 0; k2 < mdp.max_state(); ++k2) {
            evaluated.emplace_back(ThresholdPair{k1, k2}, evaluate_thresholds(mdp, {k1, k2}));
        }
    }

    ValueFunction lower(mdp, std::numeric_limits<double>::infinity());
    for (const auto& [t, v] : evaluated) {
        for (int s = mdp.min_state(); s <= mdp.max_state(); ++s) {
            lower[s] = std::min(lower[s], v[s]);
        }
    }

    for (auto& [t, v] : evaluated) {
        const bool attains = std::ranges::all_of(std::views::iota(mdp.min_state(), mdp.max_state() + 1),
                                                 [&](int s) { return v[s] <= lower[s] + 1e-9; });
        if (attains) {
            return {t, std::move(v), pairs};
        }
    }
    throw std::logic_error("no threshold pair minimises every state simultaneously");
}

bool is_threshold_policy(const StatePolicy& policy) {
    if (policy.min_state() > 0 || policy.max_state() < 0) {
        return false;
    }
    int lo = 0;
    while (lo - 1 >= policy.min_state() && policy[lo - 1] == Action::NoMigrate) {
        --lo;
    }
    int hi = 0;
    while (hi + 1 <= policy.max_state() && policy[hi + 1] == Action::NoMigrate) {
        ++hi;
    }
    for (int s = policy.min_state(); s <= policy.max_state(); ++s) {
        if ((s < lo || s > hi) && policy[s] == Action::NoMigrate) {
            return false;
        }
    }
    return true;
}

ExtendedActionReport extended_action_value_iteration(const MigrationMdp& mdp, double epsilon) {
    if (!(epsilon > 0.0)) {
        throw Error(Errc::InvalidCost, "value iteration tolerance must be positive");
    }
    const MoveDistribution move = movement_distribution(mdp);
    const double gamma = mdp.gamma();
    const double scale = gamma / (1.0 - gamma);
    const int lo = mdp.min_state();
    const int hi = mdp.max_state();

    auto expected_from = [&](const ValueFunction& v, int centre) {
        return move.down * v[centre - 1] + move.stay * v[centre] + move.up * v[centre + 1];
    };
    // best over all actions, and best over {stay, migrate to the user}
    auto q_values = [&](const ValueFunction& v, int s) {
        double best_migrate = std::numeric_limits<double>::infinity();
        double to_user = 0.0;
        for (int d = lo + 1; d <= hi - 1; ++d) {
            const double cost = d == 0 ? 1.0 : 1.0 + mdp.beta();
            const double value = cost + gamma * expected_from(v, d);
            if (d == 0) {
                to_user = value;
            }
            best_migrate = std::min(best_migrate, value);
        }
        double canonical = to_user;
        double best = best_migrate;
        if (!mdp.is_forced(s)) {
            const double stay = (s == 0 ? 0.0 : mdp.beta()) + gamma * expected_from(v, s);
            canonical = std::min(canonical, stay);
            best = std::min(best, stay);
        }
        return std::pair{best, canonical};
    };

    ExtendedActionReport report{ValueFunction(mdp, 0.0), ValueFunction(mdp, 0.0), 0};
    for (;;) {
        ValueFunction next(mdp);
        for (int s = lo; s <= hi; ++s) {
            next[s] = q_values(report.values, s).first;
        }
        ++report.sweeps;
        const double delta = max_abs_diff(next, report.values);
        report.values = std::move(next);
        if (scale * delta <= epsilon) {
            break;
        }
    }
    for (int s = lo; s <= hi; ++s) {
        const auto [best, canonical] = q_values(report.values, s);
        report.canonical_gap[s] = canonical - best;
    }
    return report;
}

}  // namespace svcmig
