#include "cstm/transition_array.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <fmt/format.h>

namespace cstm {

TransitionArray::TransitionArray(std::vector<std::string> labels, int n_cycles)
    : labels_(std::move(labels)) {
    if (n_cycles < 0) {
        throw std::invalid_argument("negative cycle count");
    }
    const auto n = static_cast<Eigen::Index>(labels_.size());
    slices_.assign(static_cast<std::size_t>(n_cycles), Eigen::MatrixXd::Zero(n, n));
}

TransitionArray::TransitionArray(std::vector<std::string> labels,
                                 std::vector<Eigen::MatrixXd> slices)
    : labels_(std::move(labels)), slices_(std::move(slices)) {
    const auto n = static_cast<Eigen::Index>(labels_.size());
    for (const auto &s : slices_) {
        if (s.rows() != n || s.cols() != n) {
            throw std::invalid_argument(fmt::format(
                "slice is {}x{} but there are {} state labels", s.rows(), s.cols(), n));
        }
    }
}

int TransitionArray::index_of(const std::string &label) const {
    auto it = std::find(labels_.begin(), labels_.end(), label);
    if (it == labels_.end()) {
        throw std::out_of_range(fmt::format("unknown state '{}'", label));
    }
    return static_cast<int>(it - labels_.begin());
}

bool TransitionArray::operator==(const TransitionArray &other) const {
    if (labels_ != other.labels_ || slices_.size() != other.slices_.size()) {
        return false;
    }
    for (std::size_t t = 0; t < slices_.size(); ++t) {
        if (slices_[t] != other.slices_[t]) {
            return false;
        }
    }
    return true;
}

ValidationReport check_transition_array(const TransitionArray &arr, double tol) {
    ValidationReport report;
    const int n = arr.n_states();
    for (int t = 0; t < arr.n_cycles(); ++t) {
        const auto &p = arr.slice(t);
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                const double v = p(i, j);
                if (!(v >= 0.0 && v <= 1.0)) {
                    report.add(fmt::format("P[{},{},{}]", arr.labels()[i], arr.labels()[j], t),
                               fmt::format("probability out of bounds: {:.17g}", v));
                }
            }
            const double sum = p.row(i).sum();
            if (!(std::abs(sum - 1.0) <= tol)) {
                report.add(fmt::format("P[{},,{}]", arr.labels()[i], t),
                           fmt::format("row for state {} at cycle {} sums to {:.17g}",
                                       arr.labels()[i], t, sum));
            }
        }
    }
    return report;
}

} // namespace cstm
