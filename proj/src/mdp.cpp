#include "svcmig/mdp.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace svcmig {

MigrationMdp::MigrationMdp(double p, double q, int min_state, int max_state, double beta,
                           double gamma)
    : p_(p), q_(q), min_state_(min_state), max_state_(max_state), beta_(beta), gamma_(gamma) {
    // NaN fails every comparison below, so the positive form is used throughout.
    if (!(p >= 0.0 && q >= 0.0 && p + q <= 1.0)) {
        throw Error(Errc::InvalidProbability,
                    "need p >= 0, q >= 0, p + q <= 1 (p=" + std::to_string(p) +
                        ", q=" + std::to_string(q) + ")");
    }
    if (min_state >= 0 || max_state <= 0) {
        throw Error(Errc::InvalidBounds, "need M <= -1 and N >= 1 (M=" + std::to_string(min_state) +
                                             ", N=" + std::to_string(max_state) + ")");
    }
    if (!(gamma > 0.0 && gamma < 1.0)) {
        throw Error(Errc::InvalidDiscount, "need 0 < gamma < 1 (gamma=" + std::to_string(gamma) + ")");
    }
    if (!(beta >= 0.0) || !std::isfinite(beta)) {
        throw Error(Errc::InvalidCost, "need finite beta >= 0 (beta=" + std::to_string(beta) + ")");
    }
}

double MigrationMdp::cost_cap() const noexcept {
    return std::max(beta_, 1.0) / (1.0 - gamma_);
}

MoveDistribution movement_distribution(const MigrationMdp& mdp) noexcept {
    return {mdp.q(), 1.0 - mdp.p() - mdp.q(), mdp.p()};
}

double one_slot_cost(const MigrationMdp& mdp, int s, Action a) {
    if (!mdp.contains(s)) {
        throw Error(Errc::OutOfRange, "state " + std::to_string(s) + " outside [M, N]");
    }
    if (a == Action::NoMigrate && mdp.is_forced(s)) {
        throw Error(Errc::ForbiddenAction, "NoMigrate at forced state " + std::to_string(s));
    }
    if (s == 0) {
        return 0.0;
    }
    return a == Action::Migrate ? 1.0 : mdp.beta();
}

double expected_next_value(const MigrationMdp& mdp, const ValueFunction& values, int s, Action a) {
    const MoveDistribution move = movement_distribution(mdp);
    const int centre = a == Action::Migrate ? 0 : s;
    return move.down * values[centre - 1] + move.stay * values[centre] +
           move.up * values[centre + 1];
}

double action_value(const MigrationMdp& mdp, const ValueFunction& values, int s, Action a) {
    return one_slot_cost(mdp, s, a) + mdp.gamma() * expected_next_value(mdp, values, s, a);
}

std::pair<ValueFunction, StatePolicy> bellman_backup(const MigrationMdp& mdp,
                                                     const ValueFunction& values) {
    ValueFunction next(mdp);
    StatePolicy policy(mdp, Action::NoMigrate);
    // The migrate value is the same for every s != 0.
    const double migrate = action_value(mdp, values, mdp.max_state(), Action::Migrate);
    for (int s = mdp.min_state(); s <= mdp.max_state(); ++s) {
        if (mdp.is_forced(s)) {
            next[s] = migrate;
            policy[s] = Action::Migrate;
        } else if (s == 0) {
            next[s] = action_value(mdp, values, 0, Action::NoMigrate);
        } else {
            const double stay = action_value(mdp, values, s, Action::NoMigrate);
            if (migrate < stay) {
                next[s] = migrate;
                policy[s] = Action::Migrate;
            } else {
                next[s] = stay;
            }
        }
    }
    return {std::move(next), std::move(policy)};
}

void validate_policy(const MigrationMdp& mdp, const StatePolicy& policy) {
    if (policy.min_state() != mdp.min_state() || policy.max_state() != mdp.max_state()) {
        throw Error(Errc::OutOfRange, "policy state range does not match the MDP");
    }
    if (policy[mdp.min_state()] != Action::Migrate || policy[mdp.max_state()] != Action::Migrate) {
        throw Error(Errc::ForbiddenAction, "policy must Migrate at M and N");
    }
}

double max_abs_diff(const ValueFunction& a, const ValueFunction& b) {
    double gap = 0.0;
    for (int s = a.min_state(); s <= a.max_state(); ++s) {
        gap = std::max(gap, std::abs(a[s] - b[s]));
    }
    return gap;
}

}  // namespace svcmig
