#include "svcmig/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace svcmig {

std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

RngStream::RngStream(std::uint64_t seed) : seed_(seed), engine_(splitmix64(seed)) {}

RngStream RngStream::child(std::uint64_t index) const {
    return RngStream(splitmix64(seed_ ^ splitmix64(index + 1)));
}

double RngStream::uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

namespace {

// Applies the user's move to the post-action offset.
int move_user(const MoveDistribution& move, int offset, double u) {
    if (u < move.down) {
        return offset - 1;
    }
    if (u < move.down + move.stay || move.up == 0.0) {
        return offset;
    }
    return offset + 1;
}

void check_start(const MigrationMdp& mdp, int s0) {
    if (!mdp.contains(s0)) {
        throw Error(Errc::InvalidStart, "start state " + std::to_string(s0) + " outside [M, N]");
    }
}

void check_contained(const MigrationMdp& mdp, int s) {
    if (!mdp.contains(s)) {
        throw std::logic_error("sampled state " + std::to_string(s) + " left [M, N]");
    }
}

double discounted_return(const MigrationMdp& mdp, const MoveDistribution& move,
                         const StatePolicy& policy, int s0, std::size_t horizon, RngStream& rng) {
    int s = s0;
    double weight = 1.0;
    double total = 0.0;
    for (std::size_t t = 0; t < horizon; ++t) {
        const Action a = policy[s];
        total += weight * one_slot_cost(mdp, s, a);
        weight *= mdp.gamma();
        s = move_user(move, a == Action::Migrate ? 0 : s, rng.uniform());
        check_contained(mdp, s);
    }
    return total;
}

}  // namespace

Trajectory sample_trajectory(const MigrationMdp& mdp, const StatePolicy& policy, int s0,
                             std::size_t horizon, RngStream& rng) {
    validate_policy(mdp, policy);
    check_start(mdp, s0);
    const MoveDistribution move = movement_distribution(mdp);

    Trajectory traj;
    traj.states.reserve(horizon);
    traj.actions.reserve(horizon);
    traj.costs.reserve(horizon);
    int s = s0;
    double weight = 1.0;
    for (std::size_t t = 0; t < horizon; ++t) {
        const Action a = policy[s];
        const double cost = one_slot_cost(mdp, s, a);
        traj.states.push_back(s);
        traj.actions.push_back(a);
        traj.costs.push_back(cost);
        traj.discounted_total += weight * cost;
        weight *= mdp.gamma();
        s = move_user(move, a == Action::Migrate ? 0 : s, rng.uniform());
        check_contained(mdp, s);
    }
    return traj;
}

std::size_t truncation_horizon(const MigrationMdp& mdp, double tol) {
    if (!(tol > 0.0)) {
        throw Error(Errc::InvalidCost, "truncation tolerance must be positive");
    }
    const double ratio = tol / mdp.cost_cap();
    if (ratio >= 1.0) {
        return 1;
    }
    auto horizon = static_cast<std::size_t>(std::ceil(std::log(ratio) / std::log(mdp.gamma())));
    // Guard against log rounding leaving the bound a hair above tol.
    while (std::pow(mdp.gamma(), static_cast<double>(horizon)) * mdp.cost_cap() > tol) {
        ++horizon;
    }
    return std::max<std::size_t>(horizon, 1);
}

MonteCarloEstimate monte_carlo_value(const MigrationMdp& mdp, const StatePolicy& policy, int s0,
                                     std::size_t runs, double truncation_tol, std::uint64_t seed) {
    validate_policy(mdp, policy);
    check_start(mdp, s0);
    if (runs < 2) {
        throw Error(Errc::OutOfRange, "monte_carlo_value needs at least 2 runs");
    }
    const MoveDistribution move = movement_distribution(mdp);
    const std::size_t horizon = truncation_horizon(mdp, truncation_tol);
    const RngStream master(seed);

    // Welford accumulation in run-index order.
    double mean = 0.0;
    double m2 = 0.0;
    for (std::size_t i = 0; i < runs; ++i) {
        RngStream rng = master.child(i);
        const double x = discounted_return(mdp, move, policy, s0, horizon, rng);
        const double delta = x - mean;
        mean += delta / static_cast<double>(i + 1);
        m2 += delta * (x - mean);
    }
    const double variance = m2 / static_cast<double>(runs - 1);
    return {mean, std::sqrt(variance / static_cast<double>(runs)), horizon, runs};
}

}  // namespace svcmig
