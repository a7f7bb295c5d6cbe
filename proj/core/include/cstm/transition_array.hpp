#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "cstm/report.hpp"

namespace cstm {

/// Labelled stack of row-stochastic matrices, one per cycle.
/// slice(t)(i, j) is the probability of moving from state i to state j
/// during cycle t.
class TransitionArray {
  public:
    TransitionArray() = default;
    /// All slices start as zero matrices.
    TransitionArray(std::vector<std::string> labels, int n_cycles);
    TransitionArray(std::vector<std::string> labels, std::vector<Eigen::MatrixXd> slices);

    [[nodiscard]] const std::vector<std::string> &labels() const noexcept { return labels_; }
    [[nodiscard]] int n_states() const noexcept { return static_cast<int>(labels_.size()); }
    [[nodiscard]] int n_cycles() const noexcept { return static_cast<int>(slices_.size()); }

    [[nodiscard]] const Eigen::MatrixXd &slice(int t) const { return slices_.at(t); }
    [[nodiscard]] Eigen::MatrixXd &slice(int t) { return slices_.at(t); }

    [[nodiscard]] double operator()(int i, int j, int t) const { return slices_[t](i, j); }
    double &operator()(int i, int j, int t) { return slices_[t](i, j); }

    /// Throws std::out_of_range for unknown labels.
    [[nodiscard]] int index_of(const std::string &label) const;

    bool operator==(const TransitionArray &other) const;

  private:
    std::vector<std::string> labels_;
    std::vector<Eigen::MatrixXd> slices_;
};

/// Reports entries outside [0, 1] ("out of bounds") and rows whose sum
/// differs from 1 by more than `tol`, with (state, cycle) coordinates.
[[nodiscard]] ValidationReport check_transition_array(const TransitionArray &arr,
                                                      double tol = 1e-12);

} // namespace cstm
