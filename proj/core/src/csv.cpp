#include "cstm/csv.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>

#include <fmt/format.h>

namespace cstm {

std::string format_number(double v) {
    if (std::isnan(v)) {
        return "NA";
    }
    return fmt::format("{:.10g}", v);
}

double parse_number(std::string_view text) {
    if (text == "NA") {
        return std::nan("");
    }
    double v = 0.0;
    const auto *end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(text.data(), end, v);
    if (ec != std::errc() || ptr != end) {
        throw IoError(fmt::format("not a number: '{}'", text));
    }
    return v;
}

namespace {

std::vector<std::string> split(std::string_view line) {
    std::vector<std::string> out;
    std::size_t pos = 0;
    while (true) {
        const auto comma = line.find(',', pos);
        if (comma == std::string_view::npos) {
            out.emplace_back(line.substr(pos));
            return out;
        }
        out.emplace_back(line.substr(pos, comma - pos));
        pos = comma + 1;
    }
}

std::size_t column_index(const CsvTable &t, std::string_view name) {
    for (std::size_t i = 0; i < t.header.size(); ++i) {
        if (t.header[i] == name) {
            return i;
        }
    }
    throw IoError(fmt::format("no column '{}'", name));
}

} // namespace

std::vector<std::string> CsvTable::column(std::string_view name) const {
    const auto c = column_index(*this, name);
    std::vector<std::string> out;
    out.reserve(rows.size());
    for (const auto &r : rows) {
        out.push_back(r[c]);
    }
    return out;
}

std::vector<double> CsvTable::numeric_column(std::string_view name) const {
    std::vector<double> out;
    for (const auto &s : column(name)) {
        out.push_back(parse_number(s));
    }
    return out;
}

CsvTable parse_csv(std::string_view text) {
    CsvTable t;
    std::size_t pos = 0;
    std::size_t line_no = 0;
    while (pos < text.size()) {
        auto nl = text.find('\n', pos);
        if (nl == std::string_view::npos) {
            nl = text.size();
        }
        auto line = text.substr(pos, nl - pos);
        pos = nl + 1;
        ++line_no;
        if (!line.empty() && line.back() == '\r') {
            line.remove_suffix(1);
        }
        if (line.empty()) {
            continue;
        }
        auto fields = split(line);
        if (t.header.empty()) {
            t.header = std::move(fields);
        } else if (fields.size() != t.header.size()) {
            throw IoError(fmt::format("line {}: expected {} fields, got {}", line_no,
                                      t.header.size(), fields.size()));
        } else {
            t.rows.push_back(std::move(fields));
        }
    }
    return t;
}

CsvTable read_csv(const std::filesystem::path &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError(fmt::format("cannot open '{}'", path.string()));
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_csv(buf.str());
}

void write_text_file(const std::filesystem::path &path, std::string_view content) {
    std::error_code ec;
    if (path.has_parent_path()) {
        std::filesystem::create_directories(path.parent_path(), ec);
        if (ec) {
            throw IoError(fmt::format("cannot create directory '{}': {}",
                                      path.parent_path().string(), ec.message()));
        }
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw IoError(fmt::format("cannot write '{}'", path.string()));
    }
    out << content;
    if (!out) {
        throw IoError(fmt::format("error writing '{}'", path.string()));
    }
}

void write_transition_array_csv(std::ostream &out, const TransitionArray &arr) {
    out << "origin,destination,cycle,probability\n";
    const auto &labels = arr.labels();
    for (int t = 0; t < arr.n_cycles(); ++t) {
        const auto &p = arr.slice(t);
        for (int i = 0; i < arr.n_states(); ++i) {
            for (int j = 0; j < arr.n_states(); ++j) {
                out << labels[i] << ',' << labels[j] << ',' << t << ',' << format_number(p(i, j))
                    << '\n';
            }
        }
    }
}

void write_trace_csv(std::ostream &out, const CohortTrace &trace) {
    out << "cycle";
    for (const auto &l : trace.labels) {
        out << ',' << l;
    }
    out << '\n';
    for (Eigen::Index t = 0; t < trace.values.rows(); ++t) {
        out << t;
        for (Eigen::Index j = 0; j < trace.values.cols(); ++j) {
            out << ',' << format_number(trace.values(t, j));
        }
        out << '\n';
    }
}

void write_dynamics_csv(std::ostream &out, const TransitionDynamicsArray &dyn) {
    out << "cycle,origin,destination,mass\n";
    for (int t = 0; t < dyn.n_slices(); ++t) {
        const auto &a = dyn.slices[static_cast<std::size_t>(t)];
        for (Eigen::Index i = 0; i < a.rows(); ++i) {
            for (Eigen::Index j = 0; j < a.cols(); ++j) {
                out << t << ',' << dyn.labels[static_cast<std::size_t>(i)] << ','
                    << dyn.labels[static_cast<std::size_t>(j)] << ',' << format_number(a(i, j))
                    << '\n';
            }
        }
    }
}

void write_survival_csv(std::ostream &out, const std::vector<double> &survival) {
    out << "cycle,survival\n";
    for (std::size_t t = 0; t < survival.size(); ++t) {
        out << t << ',' << format_number(survival[t]) << '\n';
    }
}

void write_prevalence_csv(std::ostream &out, const std::vector<std::string> &names,
                          const std::vector<std::vector<std::optional<double>>> &columns) {
    out << "cycle";
    for (const auto &n : names) {
        out << ',' << n;
    }
    out << '\n';
    const std::size_t rows = columns.empty() ? 0 : columns.front().size();
    for (std::size_t t = 0; t < rows; ++t) {
        out << t;
        for (const auto &c : columns) {
            out << ',' << format_number(c[t].value_or(std::nan("")));
        }
        out << '\n';
    }
}

void write_outcomes_csv(std::ostream &out, const StrategyResult &result) {
    out << "cycle,cost,qaly\n";
    for (Eigen::Index t = 0; t < result.cost_per_cycle.size(); ++t) {
        out << t << ',' << format_number(result.cost_per_cycle(t)) << ','
            << format_number(result.qaly_per_cycle(t)) << '\n';
    }
}

void write_totals_csv(std::ostream &out, const std::vector<StrategyResult> &results) {
    out << "strategy,cost,qaly\n";
    for (const auto &r : results) {
        out << r.name << ',' << format_number(r.total_cost) << ',' << format_number(r.total_qaly)
            << '\n';
    }
}

void write_cea_csv(std::ostream &out, const std::vector<CeaRow> &rows) {
    out << "strategy,cost,effect,inc_cost,inc_effect,icer,status\n";
    for (const auto &r : rows) {
        out << r.name << ',' << format_number(r.cost) << ',' << format_number(r.effect) << ','
            << format_number(r.inc_cost) << ',' << format_number(r.inc_effect) << ','
            << format_number(r.icer) << ',' << to_string(r.status) << '\n';
    }
}

void write_frontier_csv(std::ostream &out, const std::vector<CeaRow> &rows) {
    out << "strategy,cost,effect\n";
    for (const auto &r : frontier(rows)) {
        out << r.name << ',' << format_number(r.cost) << ',' << format_number(r.effect) << '\n';
    }
}

void write_psa_samples_csv(std::ostream &out, const PsaResult &res) {
    out << "sample,strategy,cost,qaly\n";
    for (int i = 0; i < res.n_samples(); ++i) {
        for (int s = 0; s < res.n_strategies(); ++s) {
            out << i << ',' << res.strategies[static_cast<std::size_t>(s)] << ','
                << format_number(res.costs(i, s)) << ',' << format_number(res.effects(i, s))
                << '\n';
        }
    }
}

void write_psa_parameters_csv(std::ostream &out, const PsaResult &res) {
    if (res.samples.empty()) {
        out << "sample\n";
        return;
    }
    out << "sample";
    for (const auto &[name, _] : res.samples.front().values()) {
        out << ',' << name;
    }
    out << '\n';
    for (std::size_t i = 0; i < res.samples.size(); ++i) {
        out << i;
        for (const auto &[_, v] : res.samples[i].values()) {
            out << ',' << format_number(v);
        }
        out << '\n';
    }
}

void write_ceac_csv(std::ostream &out, const DecisionCurves &curves) {
    out << "wtp";
    for (const auto &s : curves.strategies) {
        out << ',' << s;
    }
    out << ",ceaf\n";
    for (std::size_t w = 0; w < curves.wtp.size(); ++w) {
        out << format_number(curves.wtp[w]);
        for (Eigen::Index s = 0; s < curves.ceac.cols(); ++s) {
            out << ',' << format_number(curves.ceac(static_cast<Eigen::Index>(w), s));
        }
        out << ',' << curves.strategies[static_cast<std::size_t>(curves.ceaf[w])] << '\n';
    }
}

void write_elc_csv(std::ostream &out, const DecisionCurves &curves) {
    out << "wtp";
    for (const auto &s : curves.strategies) {
        out << ',' << s;
    }
    out << '\n';
    for (std::size_t w = 0; w < curves.wtp.size(); ++w) {
        out << format_number(curves.wtp[w]);
        for (Eigen::Index s = 0; s < curves.expected_loss.cols(); ++s) {
            out << ',' << format_number(curves.expected_loss(static_cast<Eigen::Index>(w), s));
        }
        out << '\n';
    }
}

void write_evpi_csv(std::ostream &out, const DecisionCurves &curves) {
    out << "wtp,evpi\n";
    for (std::size_t w = 0; w < curves.wtp.size(); ++w) {
        out << format_number(curves.wtp[w]) << ','
            << format_number(curves.evpi(static_cast<Eigen::Index>(w))) << '\n';
    }
}

} // namespace cstm
