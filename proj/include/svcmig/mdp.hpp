#pragma once

// Two-action service-migration MDP over the user/host offset state.
//
// State s in [M, N] is the offset between the user's area and the area of the
// micro-cloud hosting its service, observed at the start of a slot. Action
// Migrate moves the service to the user (offset becomes 0) before the user
// moves; the user then steps +1 with probability p, -1 with probability q.
// Migration is forced at s = M and s = N.

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "svcmig/error.hpp"

namespace svcmig {

enum class Action : std::uint8_t { NoMigrate = 0, Migrate = 1 };

struct MoveDistribution {
    double down = 0.0;
    double stay = 1.0;
    double up = 0.0;
};

class MigrationMdp {
public:
    // Throws Error with InvalidProbability, InvalidBounds, InvalidDiscount or InvalidCost.
    MigrationMdp(double p, double q, int min_state, int max_state, double beta, double gamma);

    double p() const noexcept { return p_; }
    double q() const noexcept { return q_; }
    int min_state() const noexcept { return min_state_; }
    int max_state() const noexcept { return max_state_; }
    double beta() const noexcept { return beta_; }
    double gamma() const noexcept { return gamma_; }

    std::size_t num_states() const noexcept {
        return static_cast<std::size_t>(max_state_ - min_state_ + 1);
    }
    bool contains(int s) const noexcept { return s >= min_state_ && s <= max_state_; }
    bool is_forced(int s) const noexcept { return s == min_state_ || s == max_state_; }

    // |M| * N, the number of feasible threshold pairs.
    std::size_t num_threshold_pairs() const noexcept {
        return static_cast<std::size_t>(-min_state_) * static_cast<std::size_t>(max_state_);
    }

    // Cap on the discounted cost of any policy: max(beta, 1) / (1 - gamma).
    double cost_cap() const noexcept;

private:
    double p_;
    double q_;
    int min_state_;
    int max_state_;
    double beta_;
    double gamma_;
};

// Per-state array over [M, N]; state s lives at index s - M.
template <typename T>
class StateArray {
public:
    StateArray() = default;
    StateArray(int min_state, int max_state, T fill = T{})
        : min_state_(min_state), data_(static_cast<std::size_t>(max_state - min_state + 1), fill) {}
    explicit StateArray(const MigrationMdp& mdp, T fill = T{})
        : StateArray(mdp.min_state(), mdp.max_state(), fill) {}

    int min_state() const noexcept { return min_state_; }
    int max_state() const noexcept { return min_state_ + static_cast<int>(data_.size()) - 1; }
    std::size_t size() const noexcept { return data_.size(); }

    T& operator[](int s) { return data_[index(s)]; }
    const T& operator[](int s) const { return data_[index(s)]; }

    T& at(int s) {
        check(s);
        return data_[index(s)];
    }
    const T& at(int s) const {
        check(s);
        return data_[index(s)];
    }

    std::span<T> raw() noexcept { return data_; }
    std::span<const T> raw() const noexcept { return data_; }
    auto begin() noexcept { return data_.begin(); }
    auto end() noexcept { return data_.end(); }
    auto begin() const noexcept { return data_.begin(); }
    auto end() const noexcept { return data_.end(); }

    friend bool operator==(const StateArray&, const StateArray&) = default;

private:
    std::size_t index(int s) const noexcept { return static_cast<std::size_t>(s - min_state_); }
    void check(int s) const {
        if (s < min_state_ || s > max_state()) {
            throw Error(Errc::OutOfRange, "state " + std::to_string(s) + " outside [" +
                                              std::to_string(min_state_) + ", " +
                                              std::to_string(max_state()) + "]");
        }
    }

    int min_state_ = 0;
    std::vector<T> data_;
};

using ValueFunction = StateArray<double>;
using StatePolicy = StateArray<Action>;

MoveDistribution movement_distribution(const MigrationMdp& mdp) noexcept;

// Returns 0 at s = 0, beta for NoMigrate elsewhere, 1 for Migrate elsewhere.
// Throws OutOfRange outside [M, N] and ForbiddenAction for NoMigrate at M or N.
double one_slot_cost(const MigrationMdp& mdp, int s, Action a);

// Expected continuation sum_j p_{sj} V(j) for taking action a in state s.
// For Migrate (and for s = 0) the kernel is centred at 0.
double expected_next_value(const MigrationMdp& mdp, const ValueFunction& values, int s, Action a);

// Value of taking action a in state s then following `values`: cost + gamma * E[V(next)].
double action_value(const MigrationMdp& mdp, const ValueFunction& values, int s, Action a);

// Bellman optimality backup. The returned policy picks NoMigrate at s = 0 and
// on ties elsewhere; M and N always Migrate.
std::pair<ValueFunction, StatePolicy> bellman_backup(const MigrationMdp& mdp,
                                                     const ValueFunction& values);

// Throws ForbiddenAction if the policy does not Migrate at M and N, or
// OutOfRange if its state range differs from the MDP's.
void validate_policy(const MigrationMdp& mdp, const StatePolicy& policy);

double max_abs_diff(const ValueFunction& a, const ValueFunction& b);

}  // namespace svcmig
