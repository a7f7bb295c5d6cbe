#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cstm/cohort.hpp"

namespace cstm {

/// S(t) = share of the cohort outside the death states, t = 0 ... n_cycles.
/// Throws std::out_of_range for unknown labels.
[[nodiscard]] std::vector<double> survival(const CohortTrace &trace,
                                           const std::vector<std::string> &death_states);

/// Restricted life expectancy: sum of S(t) times the cycle length.
[[nodiscard]] double life_expectancy(const std::vector<double> &survival,
                                     double cycle_length = 1.0);

/// Share of the living cohort in `states` per cycle. Cycles with S(t) = 0
/// are left empty. Throws std::invalid_argument if `states` overlaps the
/// death states and std::out_of_range for unknown labels.
[[nodiscard]] std::vector<std::optional<double>>
prevalence(const CohortTrace &trace, const std::vector<std::string> &states,
           const std::vector<std::string> &death_states);

} // namespace cstm
