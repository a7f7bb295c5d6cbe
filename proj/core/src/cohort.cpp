#include "cstm/cohort.hpp"

#include <algorithm>
#include <stdexcept>

#include <fmt/format.h>

namespace cstm {

int CohortTrace::index_of(const std::string &label) const {
    auto it = std::find(labels.begin(), labels.end(), label);
    if (it == labels.end()) {
        throw std::out_of_range(fmt::format("unknown state '{}'", label));
    }
    return static_cast<int>(it - labels.begin());
}

Eigen::RowVectorXd to_row(const InitialStateVector &init) {
    const auto &v = init.values();
    return Eigen::Map<const Eigen::RowVectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

Eigen::RowVectorXd expand_initial(const InitialStateVector &init, const TunnelPlan &plan) {
    if (init.size() != plan.base_labels.size()) {
        throw std::invalid_argument("initial vector does not match the tunnel plan");
    }
    Eigen::RowVectorXd out = Eigen::RowVectorXd::Zero(plan.n_expanded());
    for (int e = 0; e < plan.n_expanded(); ++e) {
        const bool later_tunnel = e > plan.first_tunnel && e < plan.first_tunnel + plan.tunnel_size;
        if (!later_tunnel) {
            out(e) = init.values()[static_cast<std::size_t>(plan.base_index[e])];
        }
    }
    return out;
}

namespace {
void check_dims(const Eigen::RowVectorXd &init, const TransitionArray &arr) {
    if (init.size() != arr.n_states()) {
        throw std::invalid_argument(fmt::format(
            "initial vector has {} states but the transition array has {}", init.size(),
            arr.n_states()));
    }
}
} // namespace

CohortTrace run_cohort(const Eigen::RowVectorXd &init, const TransitionArray &arr) {
    check_dims(init, arr);
    CohortTrace trace{arr.labels(), Eigen::MatrixXd(arr.n_cycles() + 1, arr.n_states())};
    trace.values.row(0) = init;
    for (int t = 0; t < arr.n_cycles(); ++t) {
        trace.values.row(t + 1).noalias() = trace.values.row(t) * arr.slice(t);
    }
    return trace;
}

CohortTrace run_cohort(const InitialStateVector &init, const TransitionArray &arr) {
    return run_cohort(to_row(init), arr);
}

TransitionDynamicsArray run_transition_dynamics(const Eigen::RowVectorXd &init,
                                                const TransitionArray &arr) {
    const auto trace = run_cohort(init, arr);
    TransitionDynamicsArray dyn{arr.labels(), {}};
    dyn.slices.reserve(static_cast<std::size_t>(arr.n_cycles() + 1));
    dyn.slices.emplace_back(init.asDiagonal());
    for (int t = 0; t < arr.n_cycles(); ++t) {
        dyn.slices.emplace_back(trace.values.row(t).asDiagonal() * arr.slice(t));
    }
    return dyn;
}

TransitionDynamicsArray run_transition_dynamics(const InitialStateVector &init,
                                                const TransitionArray &arr) {
    return run_transition_dynamics(to_row(init), arr);
}

CohortTrace aggregate_tunnels(const CohortTrace &expanded, const TunnelPlan &plan) {
    if (expanded.labels != plan.expanded_labels) {
        throw std::invalid_argument("trace labels do not match the tunnel plan");
    }
    CohortTrace out{plan.base_labels,
                    Eigen::MatrixXd::Zero(expanded.values.rows(),
                                          static_cast<Eigen::Index>(plan.base_labels.size()))};
    for (int e = 0; e < plan.n_expanded(); ++e) {
        out.values.col(plan.base_index[e]) += expanded.values.col(e);
    }
    return out;
}

} // namespace cstm
