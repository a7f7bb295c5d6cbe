#include "cstm/rewards.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <fmt/format.h>

namespace cstm {

namespace {
int label_index(const std::vector<std::string> &labels, const std::string &label) {
    auto it = std::find(labels.begin(), labels.end(), label);
    if (it == labels.end()) {
        throw std::invalid_argument(fmt::format("unknown state '{}'", label));
    }
    return static_cast<int>(it - labels.begin());
}
} // namespace

RewardArray build_reward_array(const std::vector<std::string> &labels,
                               const std::map<std::string, double> &state_rewards,
                               const std::vector<TransitionEdit> &edits, int n_cycles) {
    if (n_cycles < 0) {
        throw std::invalid_argument("negative cycle count");
    }
    const auto n = static_cast<Eigen::Index>(labels.size());
    Eigen::MatrixXd slice(n, n);
    for (Eigen::Index j = 0; j < n; ++j) {
        auto it = state_rewards.find(labels[static_cast<std::size_t>(j)]);
        if (it == state_rewards.end()) {
            throw std::invalid_argument(
                fmt::format("no reward for state '{}'", labels[static_cast<std::size_t>(j)]));
        }
        slice.col(j).setConstant(it->second);
    }
    for (const auto &[s, _] : state_rewards) {
        label_index(labels, s);
    }
    for (const auto &e : edits) {
        slice(label_index(labels, e.origin), label_index(labels, e.destination)) += e.delta;
    }
    return {labels, std::vector<Eigen::MatrixXd>(static_cast<std::size_t>(n_cycles + 1), slice)};
}

StrategyRewards resolve_rewards(const ModelSpec &spec, const Strategy &strategy,
                                const ParameterSet &params) {
    StrategyRewards r;
    for (const auto &[state, expr] : spec.state_rewards.cost) {
        r.state_cost[state] = expr.evaluate(params);
    }
    for (const auto &[state, expr] : strategy.cost_addons) {
        r.state_cost.at(state) += expr.evaluate(params);
    }
    for (const auto &[state, expr] : spec.state_rewards.utility) {
        r.state_utility[state] = expr.evaluate(params);
    }
    for (const auto &[state, expr] : strategy.utility_overrides) {
        r.state_utility.at(state) = expr.evaluate(params);
    }
    const auto add_edits = [&](const std::vector<TransitionReward> &rewards) {
        for (const auto &tr : rewards) {
            const double dc = tr.cost.evaluate(params);
            const double du = tr.utility.evaluate(params);
            for (const auto &origin : tr.origins) {
                r.cost_edits.push_back({origin, tr.destination, dc});
                r.utility_edits.push_back({origin, tr.destination, du});
            }
        }
    };
    add_edits(spec.transition_rewards);
    add_edits(strategy.transition_reward_edits);
    return r;
}

RewardArray build_cost_array(const ModelSpec &spec, const Strategy &strategy,
                             const ParameterSet &params) {
    const auto r = resolve_rewards(spec, strategy, params);
    return build_reward_array(spec.states.names(), r.state_cost, r.cost_edits,
                              spec.grid.n_cycles);
}

RewardArray build_utility_array(const ModelSpec &spec, const Strategy &strategy,
                                const ParameterSet &params) {
    const auto r = resolve_rewards(spec, strategy, params);
    return build_reward_array(spec.states.names(), r.state_utility, r.utility_edits,
                              spec.grid.n_cycles);
}

RewardArray expand_rewards(const RewardArray &base, const TunnelPlan &plan) {
    if (base.labels != plan.base_labels) {
        throw std::invalid_argument("reward labels do not match the tunnel plan");
    }
    const int n = plan.n_expanded();
    RewardArray out{plan.expanded_labels, {}};
    out.slices.reserve(base.slices.size());
    for (const auto &s : base.slices) {
        Eigen::MatrixXd e(n, n);
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                e(i, j) = s(plan.base_index[i], plan.base_index[j]);
            }
        }
        out.slices.push_back(std::move(e));
    }
    return out;
}

Eigen::VectorXd cycle_outcomes(const TransitionDynamicsArray &dynamics,
                               const RewardArray &rewards) {
    if (dynamics.n_slices() != rewards.n_slices() || dynamics.labels != rewards.labels) {
        throw std::invalid_argument(
            fmt::format("dynamics ({} slices) and rewards ({} slices) do not line up",
                        dynamics.n_slices(), rewards.n_slices()));
    }
    Eigen::VectorXd y(dynamics.n_slices());
    for (int t = 0; t < dynamics.n_slices(); ++t) {
        y(t) = dynamics.slices[static_cast<std::size_t>(t)]
                   .cwiseProduct(rewards.slices[static_cast<std::size_t>(t)])
                   .sum();
    }
    return y;
}

Eigen::VectorXd wcc_weights(int n_cycles) {
    if (n_cycles < 2) {
        throw std::invalid_argument("within-cycle correction needs at least 2 cycles");
    }
    Eigen::VectorXd w(n_cycles + 1);
    for (int pos = 1; pos <= n_cycles + 1; ++pos) {
        w(pos - 1) = pos % 2 == 0 ? 2.0 / 3.0 : 4.0 / 3.0;
    }
    w(0) = 1.0 / 3.0;
    w(n_cycles) = 1.0 / 3.0;
    return w;
}

Eigen::VectorXd discount_weights(double rate, int n_cycles) {
    if (!(rate >= 0.0) || !std::isfinite(rate)) {
        throw std::invalid_argument("discount rate must be non-negative");
    }
    if (n_cycles < 0) {
        throw std::invalid_argument("negative cycle count");
    }
    Eigen::VectorXd d(n_cycles + 1);
    for (int t = 0; t <= n_cycles; ++t) {
        d(t) = 1.0 / std::pow(1.0 + rate, t);
    }
    return d;
}

double total_discounted(const Eigen::VectorXd &y, const Eigen::VectorXd &discount,
                        const Eigen::VectorXd &wcc) {
    if (y.size() != discount.size() || y.size() != wcc.size()) {
        throw std::invalid_argument(fmt::format("length mismatch: y {}, discount {}, wcc {}",
                                                y.size(), discount.size(), wcc.size()));
    }
    return y.dot(discount.cwiseProduct(wcc));
}

} // namespace cstm
