#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "cstm/model.hpp"
#include "cstm/transition_array.hpp"
#include "cstm/transition_builder.hpp"

namespace cstm {

/// Occupancy by cycle: row t is the cohort distribution at the start of
/// cycle t, for t = 0 ... n_cycles.
struct CohortTrace {
    std::vector<std::string> labels;
    Eigen::MatrixXd values;

    [[nodiscard]] int n_cycles() const noexcept { return static_cast<int>(values.rows()) - 1; }
    [[nodiscard]] int n_states() const noexcept { return static_cast<int>(labels.size()); }
    /// Throws std::out_of_range for unknown labels.
    [[nodiscard]] int index_of(const std::string &label) const;
};

/// Flows by cycle: slice 0 is diag(m_0); slice t+1 is diag(m_t) P_t, so
/// entry (i, j) is the mass that moved from i to j during cycle t.
struct TransitionDynamicsArray {
    std::vector<std::string> labels;
    std::vector<Eigen::MatrixXd> slices;

    [[nodiscard]] int n_slices() const noexcept { return static_cast<int>(slices.size()); }
};

[[nodiscard]] Eigen::RowVectorXd to_row(const InitialStateVector &init);

/// Moves the expanded state's initial mass into its first tunnel.
[[nodiscard]] Eigen::RowVectorXd expand_initial(const InitialStateVector &init,
                                                const TunnelPlan &plan);

/// m_{t+1} = m_t P_t. Throws std::invalid_argument on a size mismatch.
[[nodiscard]] CohortTrace run_cohort(const Eigen::RowVectorXd &init, const TransitionArray &arr);
[[nodiscard]] CohortTrace run_cohort(const InitialStateVector &init, const TransitionArray &arr);

[[nodiscard]] TransitionDynamicsArray run_transition_dynamics(const Eigen::RowVectorXd &init,
                                                              const TransitionArray &arr);
[[nodiscard]] TransitionDynamicsArray run_transition_dynamics(const InitialStateVector &init,
                                                              const TransitionArray &arr);

/// Collapses tunnel columns back into their base state. Throws
/// std::invalid_argument if the trace labels are not the plan's.
[[nodiscard]] CohortTrace aggregate_tunnels(const CohortTrace &expanded, const TunnelPlan &plan);

} // namespace cstm
