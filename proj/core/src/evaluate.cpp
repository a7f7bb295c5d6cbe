#include "cstm/evaluate.hpp"

#include <stdexcept>

#include <fmt/format.h>

#include "cstm/rewards.hpp"
#include "cstm/transition_builder.hpp"

namespace cstm {

std::string_view to_string(ModelVariant v) noexcept {
    return v == ModelVariant::simtime ? "simtime" : "tunnels";
}

ModelVariant variant_from_string(std::string_view name) {
    if (name == "simtime") {
        return ModelVariant::simtime;
    }
    if (name == "tunnels") {
        return ModelVariant::tunnels;
    }
    throw std::invalid_argument(
        fmt::format("unknown model variant '{}' (expected simtime or tunnels)", name));
}

StrategyResult evaluate_strategy(const ModelSpec &spec, const Strategy &strategy,
                                 const ParameterSet &params, ModelVariant variant) {
    StrategyResult res;
    res.name = strategy.name;
    const int n = spec.grid.n_cycles;
    auto costs = build_cost_array(spec, strategy, params);
    auto utils = build_utility_array(spec, strategy, params);

    TransitionDynamicsArray dyn;
    if (variant == ModelVariant::simtime) {
        const auto arr = build_simtime_array(spec, strategy, params);
        const auto init = to_row(spec.initial);
        res.trace = run_cohort(init, arr);
        dyn = run_transition_dynamics(init, arr);
    } else {
        const auto plan = TunnelPlan::make(spec.states.names(), spec.tunnels.state,
                                           spec.tunnels.size);
        const auto arr = build_tunnel_array(spec, strategy, plan, params);
        const auto init = expand_initial(spec.initial, plan);
        res.expanded_trace = run_cohort(init, arr);
        res.trace = aggregate_tunnels(*res.expanded_trace, plan);
        dyn = run_transition_dynamics(init, arr);
        costs = expand_rewards(costs, plan);
        utils = expand_rewards(utils, plan);
    }

    res.cost_per_cycle = cycle_outcomes(dyn, costs);
    res.qaly_per_cycle = cycle_outcomes(dyn, utils);
    const auto wcc = wcc_weights(n);
    res.total_cost = total_discounted(res.cost_per_cycle, discount_weights(params.get("d_c"), n), wcc);
    res.total_qaly = total_discounted(res.qaly_per_cycle, discount_weights(params.get("d_e"), n), wcc);
    return res;
}

std::vector<StrategyResult> evaluate_all(const ModelSpec &spec, const ParameterSet &params,
                                         ModelVariant variant) {
    std::vector<StrategyResult> out;
    out.reserve(spec.strategies.size());
    for (const auto &s : spec.strategies) {
        out.push_back(evaluate_strategy(spec, s, params, variant));
    }
    return out;
}

std::vector<StrategyResult> evaluate_all(const ModelSpec &spec, ModelVariant variant) {
    return evaluate_all(spec, spec.parameters, variant);
}

} // namespace cstm
