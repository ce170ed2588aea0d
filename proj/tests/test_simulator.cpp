#include <doctest.h>

#include <cmath>

#include "svcmig/baselines.hpp"
#include "svcmig/simulator.hpp"
#include "svcmig/threshold_solver.hpp"

using namespace svcmig;

TEST_CASE("static user at the origin never pays") {
    const MigrationMdp mdp(0.0, 0.0, -5, 5, 1.0, 0.5);
    RngStream rng(1);
    const auto t = sample_trajectory(mdp, never_migrate_policy(mdp), 0, 10, rng);
    CHECK(t.states.size() == 10);
    for (int s : t.states) {
        CHECK(s == 0);
    }
    for (double c : t.costs) {
        CHECK(c == 0.0);
    }
    CHECK(t.discounted_total == 0.0);
}

TEST_CASE("static user away from the origin pays a geometric series") {
    const MigrationMdp mdp(0.0, 0.0, -5, 5, 1.0, 0.5);
    RngStream rng(1);
    const auto t = sample_trajectory(mdp, never_migrate_policy(mdp), 1, 20, rng);
    CHECK(std::abs(t.discounted_total - 2.0 * (1.0 - std::pow(0.5, 20))) <= 1e-12);
}

TEST_CASE("trajectories are reproducible and stay in range") {
    const MigrationMdp mdp(0.45, 0.45, -4, 4, 0.5, 0.9);
    const StatePolicy pol = never_migrate_policy(mdp);
    RngStream a(42);
    RngStream b(42);
    const auto ta = sample_trajectory(mdp, pol, 0, 500, a);
    const auto tb = sample_trajectory(mdp, pol, 0, 500, b);
    CHECK(ta.states == tb.states);
    CHECK(ta.discounted_total == tb.discounted_total);
    bool hit_boundary = false;
    for (std::size_t i = 0; i < ta.states.size(); ++i) {
        CHECK(mdp.contains(ta.states[i]));
        hit_boundary = hit_boundary || mdp.is_forced(ta.states[i]);
        if (mdp.is_forced(ta.states[i])) {
            CHECK(ta.actions[i] == Action::Migrate);
        }
    }
    CHECK(hit_boundary);

    RngStream c(43);
    CHECK(sample_trajectory(mdp, pol, 0, 500, c).states != ta.states);
}

TEST_CASE("sample_trajectory rejects a start outside the state space") {
    const MigrationMdp mdp(0.3, 0.2, -3, 3, 1.0, 0.9);
    RngStream rng(0);
    try {
        sample_trajectory(mdp, never_migrate_policy(mdp), 4, 10, rng);
        FAIL("expected InvalidStart");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::InvalidStart);
    }
}

TEST_CASE("RngStream children are distinct and deterministic") {
    const RngStream root(7);
    RngStream c0 = root.child(0);
    RngStream c0_again = root.child(0);
    RngStream c1 = root.child(1);
    const auto x = c0.next_u64();
    CHECK(x == c0_again.next_u64());
    CHECK(x != c1.next_u64());
    RngStream u(3);
    for (int i = 0; i < 1000; ++i) {
        const double v = u.uniform();
        CHECK(v >= 0.0);
        CHECK(v < 1.0);
    }
}

TEST_CASE("truncation_horizon is the smallest admissible length") {
    const MigrationMdp mdp(0.3, 0.2, -3, 3, 2.0, 0.9);
    const std::size_t t = truncation_horizon(mdp, 1e-3);
    const auto tail = [&](std::size_t n) { return std::pow(0.9, static_cast<double>(n)) * 2.0 / 0.1; };
    CHECK(tail(t) <= 1e-3);
    CHECK(tail(t - 1) > 1e-3);
}

TEST_CASE("monte carlo matches the always-migrate closed form") {
    const MigrationMdp mdp(0.25, 0.25, -10, 10, 0.5, 0.5);
    const auto est = monte_carlo_value(mdp, always_migrate_policy(mdp), 0, 20000, 1e-4, 11);
    CHECK(est.runs == 20000);
    CHECK(std::abs(est.mean - 0.5) <= 3.5 * est.std_err + 1e-4);
    CHECK(est.std_err > 0.0);
}

TEST_CASE("monte carlo matches analytic threshold values") {
    const MigrationMdp mdp(0.4, 0.3, -5, 5, 0.6, 0.9);
    for (ThresholdPair t : {ThresholdPair{0, 0}, ThresholdPair{-2, 1}, ThresholdPair{-4, 4}}) {
        const auto analytic = evaluate_thresholds(mdp, t);
        for (int s0 : {-3, 0, 2}) {
            const auto est =
                monte_carlo_value(mdp, threshold_policy(mdp, t), s0, 20000, 1e-3, 100 + s0);
            CHECK(std::abs(est.mean - analytic[s0]) <= 3.5 * est.std_err + 1e-3);
        }
    }
}

TEST_CASE("monte carlo is reproducible and insensitive to a longer horizon") {
    const MigrationMdp mdp(0.4, 0.3, -5, 5, 0.6, 0.9);
    const StatePolicy pol = never_migrate_policy(mdp);
    const auto a = monte_carlo_value(mdp, pol, 1, 5000, 1e-3, 5);
    const auto b = monte_carlo_value(mdp, pol, 1, 5000, 1e-3, 5);
    CHECK(a.mean == b.mean);
    CHECK(a.std_err == b.std_err);

    // doubling the horizon changes each run by at most the truncated tail
    const auto longer = monte_carlo_value(mdp, pol, 1, 5000, 1e-3 * std::pow(0.9, a.horizon), 5);
    CHECK(longer.horizon >= 2 * a.horizon - 1);
    CHECK(std::abs(longer.mean - a.mean) <= 1e-3);
}

TEST_CASE("monte carlo needs at least two runs") {
    const MigrationMdp mdp(0.4, 0.3, -5, 5, 0.6, 0.9);
    CHECK_THROWS_AS(monte_carlo_value(mdp, never_migrate_policy(mdp), 0, 1, 1e-3, 0), Error);
}
