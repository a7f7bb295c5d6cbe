#pragma once

#include <limits>
#include <string>
#include <string_view>
#include <vector>

namespace cstm {

enum class DominanceStatus { ND, D, ED };

[[nodiscard]] std::string_view to_string(DominanceStatus s) noexcept;

struct CeaRow {
    std::string name;
    double cost = 0.0;
    double effect = 0.0;
    // NaN where not applicable: the first frontier strategy and dominated rows.
    double inc_cost = std::numeric_limits<double>::quiet_NaN();
    double inc_effect = std::numeric_limits<double>::quiet_NaN();
    double icer = std::numeric_limits<double>::quiet_NaN();
    DominanceStatus status = DominanceStatus::ND;
};

/// Dominance-aware ICER table. Non-dominated rows come first in increasing
/// cost, each compared with the previous frontier row; dominated rows follow
/// in increasing cost. Strongly dominated: another strategy costs no more and
/// is at least as effective, one of them strictly. Extended dominance is
/// removed one strategy at a time until frontier ICERs strictly increase.
/// Identical (cost, effect) pairs keep the first in input order.
///
/// Throws std::invalid_argument for NaN or infinite values, mismatched
/// lengths, an empty input or duplicate names.
[[nodiscard]] std::vector<CeaRow> calculate_icers(const std::vector<double> &costs,
                                                  const std::vector<double> &effects,
                                                  const std::vector<std::string> &names);

/// The ND rows, in cost order.
[[nodiscard]] std::vector<CeaRow> frontier(const std::vector<CeaRow> &rows);

} // namespace cstm
