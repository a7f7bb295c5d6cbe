#pragma once

#include <map>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "cstm/cohort.hpp"
#include "cstm/model.hpp"
#include "cstm/transition_builder.hpp"

namespace cstm {

/// Entry (i, j) of slice t is the reward credited to mass moving i -> j in
/// cycle t: the destination state's reward plus any transition increment.
struct RewardArray {
    std::vector<std::string> labels;
    std::vector<Eigen::MatrixXd> slices;

    [[nodiscard]] int n_slices() const noexcept { return static_cast<int>(slices.size()); }
};

struct TransitionEdit {
    std::string origin;
    std::string destination;
    double delta = 0.0;
};

/// n_cycles + 1 identical slices. Throws std::invalid_argument for labels
/// that are missing from `labels` or from `state_rewards`.
[[nodiscard]] RewardArray build_reward_array(const std::vector<std::string> &labels,
                                             const std::map<std::string, double> &state_rewards,
                                             const std::vector<TransitionEdit> &edits,
                                             int n_cycles);

/// State rewards and transition increments of one strategy, resolved
/// against a parameter set.
struct StrategyRewards {
    std::map<std::string, double> state_cost;
    std::map<std::string, double> state_utility;
    std::vector<TransitionEdit> cost_edits;
    std::vector<TransitionEdit> utility_edits;
};

[[nodiscard]] StrategyRewards resolve_rewards(const ModelSpec &spec, const Strategy &strategy,
                                              const ParameterSet &params);

[[nodiscard]] RewardArray build_cost_array(const ModelSpec &spec, const Strategy &strategy,
                                           const ParameterSet &params);
[[nodiscard]] RewardArray build_utility_array(const ModelSpec &spec, const Strategy &strategy,
                                              const ParameterSet &params);

/// Copies each base entry to every expanded (origin, destination) pair.
[[nodiscard]] RewardArray expand_rewards(const RewardArray &base, const TunnelPlan &plan);

/// y_t = sum over (i, j) of A_t(i, j) * R_t(i, j).
[[nodiscard]] Eigen::VectorXd cycle_outcomes(const TransitionDynamicsArray &dynamics,
                                             const RewardArray &rewards);

/// Simpson-style weights over the n_cycles + 1 points: 1/3 at both ends,
/// otherwise 2/3 at even and 4/3 at odd 1-based positions. n_cycles >= 2.
[[nodiscard]] Eigen::VectorXd wcc_weights(int n_cycles);

/// (1 + d)^-t for t = 0 ... n_cycles.
[[nodiscard]] Eigen::VectorXd discount_weights(double rate, int n_cycles);

/// y' (d .* w).
[[nodiscard]] double total_discounted(const Eigen::VectorXd &y, const Eigen::VectorXd &discount,
                                      const Eigen::VectorXd &wcc);

} // namespace cstm
