#include "cstm/transition_builder.hpp"

#include <algorithm>
#include <stdexcept>

#include <fmt/format.h>

#include "cstm/hazards.hpp"

namespace cstm {

MortalityVectors mortality_vectors(const LifeTable &life_table, const TimeGrid &grid,
                                   double hr_S1, double hr_S2, double hr_H) {
    MortalityVectors v;
    const auto n = static_cast<std::size_t>(grid.n_cycles);
    v.p_HD.reserve(n);
    v.p_S1D.reserve(n);
    v.p_S2D.reserve(n);
    for (int t = 0; t < grid.n_cycles; ++t) {
        const Rate mu(life_table.rate_at(grid.age_at(t)));
        v.p_HD.push_back(prob_from_rate(apply_hazard_ratio(mu, hr_H), grid.cycle_length).value());
        v.p_S1D.push_back(prob_from_rate(apply_hazard_ratio(mu, hr_S1), grid.cycle_length).value());
        v.p_S2D.push_back(prob_from_rate(apply_hazard_ratio(mu, hr_S2), grid.cycle_length).value());
    }
    return v;
}

std::string tunnel_label(const std::string &state, int i) { return fmt::format("{}_{}Yr", state, i); }

TunnelPlan TunnelPlan::make(const std::vector<std::string> &base_labels, const std::string &state,
                            int tunnel_size) {
    if (tunnel_size < 1) {
        throw std::invalid_argument("tunnel size must be at least 1");
    }
    auto it = std::find(base_labels.begin(), base_labels.end(), state);
    if (it == base_labels.end()) {
        throw std::invalid_argument(fmt::format("cannot expand unknown state '{}'", state));
    }
    TunnelPlan plan;
    plan.expanded_state = state;
    plan.tunnel_size = tunnel_size;
    plan.base_labels = base_labels;
    for (std::size_t b = 0; b < base_labels.size(); ++b) {
        if (base_labels[b] == state) {
            plan.first_tunnel = static_cast<int>(plan.expanded_labels.size());
            for (int i = 1; i <= tunnel_size; ++i) {
                plan.expanded_labels.push_back(tunnel_label(state, i));
                plan.base_index.push_back(static_cast<int>(b));
            }
        } else {
            plan.expanded_labels.push_back(base_labels[b]);
            plan.base_index.push_back(static_cast<int>(b));
        }
    }
    return plan;
}

namespace {

struct Indices {
    int H, S1, S2, D;
};

// Transition probability after the strategy's hazard ratio (if any) has been
// applied on the rate scale.
double modified_prob(double p, const Strategy &strategy, const char *key,
                     const ParameterSet &params, double cycle_length) {
    auto it = strategy.hazard_modifiers.find(key);
    if (it == strategy.hazard_modifiers.end()) {
        return p;
    }
    const double hr = it->second.evaluate(params);
    return prob_from_rate(apply_hazard_ratio(rate_from_prob(Probability(p), cycle_length), hr),
                          cycle_length)
        .value();
}

double hr_modifier(const Strategy &strategy, const char *key, const ParameterSet &params) {
    auto it = strategy.hazard_modifiers.find(key);
    return it == strategy.hazard_modifiers.end() ? 1.0 : it->second.evaluate(params);
}

MortalityVectors strategy_mortality(const ModelSpec &spec, const Strategy &strategy,
                                    const ParameterSet &params) {
    if (!spec.life_table) {
        throw ValidationError([] {
            ValidationReport r;
            r.add("life_table", "life table coverage: no life table given");
            return r;
        }());
    }
    return mortality_vectors(*spec.life_table, spec.grid,
                             params.get("hr_S1") * hr_modifier(strategy, "S1D", params),
                             params.get("hr_S2") * hr_modifier(strategy, "S2D", params),
                             hr_modifier(strategy, "HD", params));
}

void throw_if_invalid(const TransitionArray &arr, const std::string &strategy) {
    auto report = check_transition_array(arr);
    if (!report.ok()) {
        ValidationReport prefixed;
        prefixed.merge(report, "strategy " + strategy + ": ");
        throw ValidationError(std::move(prefixed));
    }
}

} // namespace

TransitionArray build_simtime_array(const ModelSpec &spec, const Strategy &strategy,
                                    const ParameterSet &params) {
    const double cl = spec.grid.cycle_length;
    const Indices ix{static_cast<int>(spec.states.index_of("H")),
                     static_cast<int>(spec.states.index_of("S1")),
                     static_cast<int>(spec.states.index_of("S2")),
                     static_cast<int>(spec.states.index_of("D"))};
    const double p_HS1 = modified_prob(params.get("p_HS1"), strategy, "HS1", params, cl);
    const double p_S1H = modified_prob(params.get("p_S1H"), strategy, "S1H", params, cl);
    const double p_S1S2 = modified_prob(params.get("p_S1S2"), strategy, "S1S2", params, cl);
    const auto mort = strategy_mortality(spec, strategy, params);

    TransitionArray arr(spec.states.names(), spec.grid.n_cycles);
    for (int t = 0; t < spec.grid.n_cycles; ++t) {
        auto &p = arr.slice(t);
        const double pHD = mort.p_HD[t];
        const double pS1D = mort.p_S1D[t];
        const double pS2D = mort.p_S2D[t];

        p(ix.H, ix.H) = (1 - pHD) * (1 - p_HS1);
        p(ix.H, ix.S1) = (1 - pHD) * p_HS1;
        p(ix.H, ix.D) = pHD;

        p(ix.S1, ix.H) = (1 - pS1D) * p_S1H;
        p(ix.S1, ix.S1) = (1 - pS1D) * (1 - (p_S1H + p_S1S2));
        p(ix.S1, ix.S2) = (1 - pS1D) * p_S1S2;
        p(ix.S1, ix.D) = pS1D;

        p(ix.S2, ix.S2) = 1 - pS2D;
        p(ix.S2, ix.D) = pS2D;

        p(ix.D, ix.D) = 1;
    }
    throw_if_invalid(arr, strategy.name);
    return arr;
}

TransitionArray build_simtime_array(const ModelSpec &spec, const Strategy &strategy) {
    return build_simtime_array(spec, strategy, spec.parameters);
}

TransitionArray build_tunnel_array(const ModelSpec &spec, const Strategy &strategy,
                                   const TunnelPlan &plan, const ParameterSet &params) {
    if (plan.base_labels != spec.states.names() || plan.expanded_state != "S1") {
        throw std::invalid_argument("tunnel plan does not match the spec's S1 state");
    }
    const double cl = spec.grid.cycle_length;
    const auto find = [&](const char *label) {
        return static_cast<int>(std::find(plan.expanded_labels.begin(), plan.expanded_labels.end(),
                                          label) -
                                plan.expanded_labels.begin());
    };
    const int H = find("H");
    const int S2 = find("S2");
    const int D = find("D");
    const int n_tun = plan.tunnel_size;

    const double p_HS1 = modified_prob(params.get("p_HS1"), strategy, "HS1", params, cl);
    const double p_S1H = modified_prob(params.get("p_S1H"), strategy, "S1H", params, cl);
    const double hr_S1S2 = hr_modifier(strategy, "S1S2", params);
    const auto rates =
        weibull_cycle_rates(params.get("p_S1S2_scale"), params.get("p_S1S2_shape"), n_tun);
    std::vector<double> p_S1S2(static_cast<std::size_t>(n_tun));
    for (int i = 0; i < n_tun; ++i) {
        const Rate r = hr_S1S2 == 1.0 ? rates[i] : apply_hazard_ratio(rates[i], hr_S1S2);
        p_S1S2[i] = prob_from_rate(r, cl).value();
    }
    const auto mort = strategy_mortality(spec, strategy, params);

    TransitionArray arr(plan.expanded_labels, spec.grid.n_cycles);
    for (int t = 0; t < spec.grid.n_cycles; ++t) {
        auto &p = arr.slice(t);
        const double pHD = mort.p_HD[t];
        const double pS1D = mort.p_S1D[t];
        const double pS2D = mort.p_S2D[t];

        p(H, H) = (1 - pHD) * (1 - p_HS1);
        p(H, plan.first_tunnel) = (1 - pHD) * p_HS1;
        p(H, D) = pHD;

        for (int i = 0; i < n_tun; ++i) {
            const int row = plan.first_tunnel + i;
            const int stay = i + 1 < n_tun ? row + 1 : row;
            p(row, H) = (1 - pS1D) * p_S1H;
            p(row, stay) = (1 - pS1D) * (1 - (p_S1H + p_S1S2[i]));
            p(row, S2) = (1 - pS1D) * p_S1S2[i];
            p(row, D) = pS1D;
        }

        p(S2, S2) = 1 - pS2D;
        p(S2, D) = pS2D;

        p(D, D) = 1;
    }
    throw_if_invalid(arr, strategy.name);
    return arr;
}

TransitionArray build_tunnel_array(const ModelSpec &spec, const Strategy &strategy,
                                   const TunnelPlan &plan) {
    return build_tunnel_array(spec, strategy, plan, spec.parameters);
}

} // namespace cstm
