#include <doctest.h>

#include <random>

#include "svcmig/baselines.hpp"
#include "svcmig/oracle.hpp"

using namespace svcmig;

namespace {

StatePolicy policy_from(int min_state, std::initializer_list<int> bits) {
    StatePolicy pol(min_state, min_state + static_cast<int>(bits.size()) - 1, Action::Migrate);
    int s = min_state;
    for (int b : bits) {
        pol[s++] = b ? Action::Migrate : Action::NoMigrate;
    }
    return pol;
}

}  // namespace

TEST_CASE("exhaustive search picks the widest band at zero transmission cost") {
    const MigrationMdp mdp(0.3, 0.2, -3, 3, 0.0, 0.9);
    const auto r = exhaustive_threshold_search(mdp);
    CHECK(r.thresholds == ThresholdPair{-2, 2});
    CHECK(r.pairs_evaluated == 9);
}

TEST_CASE("exhaustive search picks always-migrate at huge transmission cost") {
    const MigrationMdp mdp(0.3, 0.3, -10, 10, 100.0, 0.9);
    const auto r = exhaustive_threshold_search(mdp);
    CHECK(r.thresholds == ThresholdPair{0, 0});
    CHECK(r.pairs_evaluated == 100);
}

TEST_CASE("exhaustive search tie-break prefers the narrowest band") {
    // static user: every pair has the same value at 0, but not elsewhere
    const MigrationMdp mdp(0.0, 0.0, -3, 3, 0.5, 0.9);
    const auto r = exhaustive_threshold_search(mdp);
    CHECK(r.values[0] == 0.0);
    CHECK(max_abs_diff(r.values, value_iteration(mdp, 1e-10).values) <= 1e-9);
}

TEST_CASE("exhaustive search refuses oversized state spaces") {
    const MigrationMdp mdp(0.3, 0.2, -200, 200, 1.0, 0.9);
    try {
        exhaustive_threshold_search(mdp);
        FAIL("expected TooLarge");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::TooLarge);
    }
}

TEST_CASE("is_threshold_policy") {
    CHECK(is_threshold_policy(policy_from(-2, {1, 0, 0, 0, 1})));
    CHECK(is_threshold_policy(policy_from(-2, {1, 1, 0, 1, 1})));
    CHECK(is_threshold_policy(policy_from(-2, {1, 1, 0, 0, 1})));
    CHECK_FALSE(is_threshold_policy(policy_from(-2, {1, 0, 0, 1, 0})));
    CHECK_FALSE(is_threshold_policy(policy_from(-3, {1, 0, 1, 0, 0, 0, 1})));

    // the action at 0 is irrelevant: both variants are the same threshold policy
    StatePolicy pol = policy_from(-2, {1, 0, 1, 0, 1});
    CHECK(is_threshold_policy(pol));
    pol[0] = Action::NoMigrate;
    CHECK(is_threshold_policy(pol));
    CHECK_FALSE(is_threshold_policy(policy_from(-2, {1, 0, 1, 1, 0})));
}

TEST_CASE("extended action set on a static user") {
    const MigrationMdp mdp(0.0, 0.0, -3, 3, 1.0, 0.9);
    const auto r = extended_action_value_iteration(mdp, 1e-6);
    CHECK(r.values[0] == 0.0);
    for (double g : r.canonical_gap) {
        CHECK(g >= 0.0);
    }
}

TEST_CASE("extended action set never does worse than the two-action model") {
    std::mt19937_64 gen(9);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 60; ++trial) {
        double p = u(gen);
        double q = u(gen);
        if (p + q > 1.0) {
            p = 1.0 - p;
            q = 1.0 - q;
        }
        const double eps = 1e-4;
        const MigrationMdp mdp(p, q, -3, 3, std::array{0.1, 1.0, 10.0}[trial % 3],
                               std::array{0.5, 0.9}[trial % 2]);
        const auto ext = extended_action_value_iteration(mdp, eps);
        const auto two = value_iteration(mdp, 1e-10);
        for (int s = mdp.min_state(); s <= mdp.max_state(); ++s) {
            CHECK(ext.values[s] <= two.values[s] + eps);
        }
        for (double g : ext.canonical_gap) {
            CHECK(g >= 0.0);
        }
        CHECK(ext.sweeps >= 1);
    }
}
