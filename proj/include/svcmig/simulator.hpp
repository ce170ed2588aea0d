#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

#include "svcmig/mdp.hpp"

namespace svcmig {

// Seeded 64-bit Mersenne Twister (std::mt19937_64, whose output sequence is
// fixed by the C++ standard). The seed is scrambled with SplitMix64 first so
// that nearby seeds give unrelated streams. Uniform doubles take the top 53
// bits of one draw, so sequences are bit-identical across platforms.
class RngStream {
public:
    static constexpr std::string_view algorithm = "mt19937_64+splitmix64";

    explicit RngStream(std::uint64_t seed);

    std::uint64_t seed() const noexcept { return seed_; }

    // Independent stream for run `index`, derived from (seed, index) only.
    RngStream child(std::uint64_t index) const;

    // Uniform on [0, 1).
    double uniform();

    std::uint64_t next_u64() { return engine_(); }

private:
    std::uint64_t seed_;
    std::mt19937_64 engine_;
};

std::uint64_t splitmix64(std::uint64_t x) noexcept;

struct Trajectory {
    std::vector<int> states;
    std::vector<Action> actions;
    std::vector<double> costs;
    double discounted_total = 0.0;
};

// Per slot: observe s, act a = policy(s), pay one_slot_cost(s, a) * gamma^t,
// reset s to 0 on Migrate, then move the user. One uniform draw per slot:
// [0, q) down, [q, q + stay) stay, otherwise up.
// Throws Error(InvalidStart) if s0 is outside [M, N].
Trajectory sample_trajectory(const MigrationMdp& mdp, const StatePolicy& policy, int s0,
                             std::size_t horizon, RngStream& rng);

// Smallest T with gamma^T * max(beta, 1) / (1 - gamma) <= tol (at least 1).
std::size_t truncation_horizon(const MigrationMdp& mdp, double tol);

struct MonteCarloEstimate {
    double mean = 0.0;
    double std_err = 0.0;
    std::size_t horizon = 0;
    std::size_t runs = 0;
};

// Sample mean and standard error of the discounted cost from s0 over `runs`
// trajectories; run i uses RngStream(seed).child(i).
MonteCarloEstimate monte_carlo_value(const MigrationMdp& mdp, const StatePolicy& policy, int s0,
                                     std::size_t runs, double truncation_tol, std::uint64_t seed);

}  // namespace svcmig
