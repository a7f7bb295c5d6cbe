#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "cstm/cohort.hpp"
#include "cstm/model.hpp"

namespace cstm {

enum class ModelVariant { simtime, tunnels };

[[nodiscard]] std::string_view to_string(ModelVariant v) noexcept;
/// Throws std::invalid_argument for anything but "simtime" / "tunnels".
[[nodiscard]] ModelVariant variant_from_string(std::string_view name);

struct StrategyResult {
    std::string name;
    /// Base-state trace (aggregated over tunnels for the tunnel variant).
    CohortTrace trace;
    /// Tunnel-expanded trace; only set for the tunnel variant.
    std::optional<CohortTrace> expanded_trace;
    Eigen::VectorXd cost_per_cycle;
    Eigen::VectorXd qaly_per_cycle;
    double total_cost = 0.0;
    double total_qaly = 0.0;
};

/// Build, run and reward one strategy. Throws ValidationError if an array
/// fails its checks.
[[nodiscard]] StrategyResult evaluate_strategy(const ModelSpec &spec, const Strategy &strategy,
                                               const ParameterSet &params, ModelVariant variant);

/// All strategies in spec order.
[[nodiscard]] std::vector<StrategyResult> evaluate_all(const ModelSpec &spec,
                                                       const ParameterSet &params,
                                                       ModelVariant variant);
[[nodiscard]] std::vector<StrategyResult> evaluate_all(const ModelSpec &spec,
                                                       ModelVariant variant = ModelVariant::simtime);

} // namespace cstm
