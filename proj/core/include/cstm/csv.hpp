#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "cstm/cea.hpp"
#include "cstm/cohort.hpp"
#include "cstm/evaluate.hpp"
#include "cstm/psa.hpp"
#include "cstm/transition_array.hpp"

namespace cstm {

/// 10 significant digits; NaN is written as "NA".
[[nodiscard]] std::string format_number(double v);
/// Inverse of format_number. Throws IoError on anything else.
[[nodiscard]] double parse_number(std::string_view text);

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    /// Throws IoError when the column is missing or holds non-numbers.
    [[nodiscard]] std::vector<double> numeric_column(std::string_view name) const;
    [[nodiscard]] std::vector<std::string> column(std::string_view name) const;
};

/// Plain comma-separated values without quoting, which is all the writers
/// below produce. Throws IoError on ragged rows.
[[nodiscard]] CsvTable parse_csv(std::string_view text);
[[nodiscard]] CsvTable read_csv(const std::filesystem::path &path);

void write_transition_array_csv(std::ostream &out, const TransitionArray &arr);
void write_trace_csv(std::ostream &out, const CohortTrace &trace);
void write_dynamics_csv(std::ostream &out, const TransitionDynamicsArray &dyn);
void write_survival_csv(std::ostream &out, const std::vector<double> &survival);
void write_prevalence_csv(std::ostream &out, const std::vector<std::string> &names,
                          const std::vector<std::vector<std::optional<double>>> &columns);
void write_outcomes_csv(std::ostream &out, const StrategyResult &result);
void write_totals_csv(std::ostream &out, const std::vector<StrategyResult> &results);
void write_cea_csv(std::ostream &out, const std::vector<CeaRow> &rows);
void write_frontier_csv(std::ostream &out, const std::vector<CeaRow> &rows);
void write_psa_samples_csv(std::ostream &out, const PsaResult &res);
void write_psa_parameters_csv(std::ostream &out, const PsaResult &res);
void write_ceac_csv(std::ostream &out, const DecisionCurves &curves);
void write_elc_csv(std::ostream &out, const DecisionCurves &curves);
void write_evpi_csv(std::ostream &out, const DecisionCurves &curves);

/// Writes through `fill` to `path`, creating parent directories. Throws IoError.
template <typename Fill> void write_file(const std::filesystem::path &path, Fill &&fill);

void write_text_file(const std::filesystem::path &path, std::string_view content);

} // namespace cstm

#include <sstream>

template <typename Fill> void cstm::write_file(const std::filesystem::path &path, Fill &&fill) {
    std::ostringstream buf;
    fill(static_cast<std::ostream &>(buf));
    write_text_file(path, buf.str());
}
