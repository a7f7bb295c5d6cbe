#pragma once

#include <string>
#include <vector>

#include "cstm/model.hpp"
#include "cstm/transition_array.hpp"

namespace cstm {

/// Per-cycle probabilities of dying from H, S1 and S2. Element t uses the
/// life-table rate at the cohort's age in cycle t, scaled by the hazard ratio.
struct MortalityVectors {
    std::vector<double> p_HD;
    std::vector<double> p_S1D;
    std::vector<double> p_S2D;
};

/// Throws std::out_of_range when the table misses an age in the horizon.
[[nodiscard]] MortalityVectors mortality_vectors(const LifeTable &life_table, const TimeGrid &grid,
                                                 double hr_S1, double hr_S2, double hr_H = 1.0);

/// Expansion of one state into `tunnel_size` residence-time copies
/// ("S1_1Yr" ... "S1_{n}Yr"), placed where the original state was.
struct TunnelPlan {
    std::string expanded_state;
    int tunnel_size = 0;
    std::vector<std::string> base_labels;
    std::vector<std::string> expanded_labels;
    /// For each expanded label, the index of its base label.
    std::vector<int> base_index;
    /// Index of "S1_1Yr" in expanded_labels.
    int first_tunnel = 0;

    /// Throws std::invalid_argument for an unknown state or size < 1.
    static TunnelPlan make(const std::vector<std::string> &base_labels, const std::string &state,
                           int tunnel_size);

    [[nodiscard]] int n_expanded() const noexcept {
        return static_cast<int>(expanded_labels.size());
    }
};

[[nodiscard]] std::string tunnel_label(const std::string &state, int i);

/// Age-dependent Sick-Sicker array for one strategy. Non-death transitions
/// are conditioned on surviving the cycle and D is absorbing. Throws
/// ValidationError (never renormalizes) if the result is not row-stochastic.
[[nodiscard]] TransitionArray build_simtime_array(const ModelSpec &spec, const Strategy &strategy,
                                                  const ParameterSet &params);
[[nodiscard]] TransitionArray build_simtime_array(const ModelSpec &spec, const Strategy &strategy);

/// Same model with S1 expanded into tunnel states whose S1->S2 hazard
/// follows the Weibull residence-time curve. The last tunnel self-loops.
[[nodiscard]] TransitionArray build_tunnel_array(const ModelSpec &spec, const Strategy &strategy,
                                                 const TunnelPlan &plan,
                                                 const ParameterSet &params);
[[nodiscard]] TransitionArray build_tunnel_array(const ModelSpec &spec, const Strategy &strategy,
                                                 const TunnelPlan &plan);

} // namespace cstm
