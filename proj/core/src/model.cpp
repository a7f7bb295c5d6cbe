#include "cstm/model.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

#include <fmt/format.h>

namespace cstm {

namespace {

bool starts_with(const std::string &s, std::string_view prefix) {
    return s.rfind(prefix, 0) == 0;
}

bool ends_with(const std::string &s, std::string_view suffix) {
    return s.size() >= suffix.size() &&
           s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

} // namespace

// ---------------------------------------------------------------- StateSpace

StateSpace::StateSpace(std::vector<std::string> names, std::vector<std::string> absorbing,
                       std::vector<std::string> death_states)
    : names_(std::move(names)), absorbing_(std::move(absorbing)),
      death_states_(std::move(death_states)) {}

bool StateSpace::contains(std::string_view label) const {
    return std::find(names_.begin(), names_.end(), label) != names_.end();
}

std::size_t StateSpace::index_of(std::string_view label) const {
    auto it = std::find(names_.begin(), names_.end(), label);
    if (it == names_.end()) {
        throw std::out_of_range(fmt::format("unknown state '{}'", label));
    }
    return static_cast<std::size_t>(it - names_.begin());
}

ValidationReport StateSpace::validate() const {
    ValidationReport report;
    if (names_.empty()) {
        report.add("states.names", "state space is empty");
    }
    std::set<std::string> seen;
    for (std::size_t i = 0; i < names_.size(); ++i) {
        const auto path = fmt::format("states.names[{}]", i);
        if (names_[i].empty()) {
            report.add(path, "empty state label");
        } else if (!seen.insert(names_[i]).second) {
            report.add(path, fmt::format("duplicate state name '{}'", names_[i]));
        }
    }
    for (const auto &s : absorbing_) {
        if (!contains(s)) {
            report.add("states.absorbing", fmt::format("unknown state '{}'", s));
        }
    }
    for (const auto &s : death_states_) {
        if (!contains(s)) {
            report.add("states.death", fmt::format("unknown state '{}'", s));
        }
    }
    return report;
}

// ------------------------------------------------------------------ TimeGrid

TimeGrid TimeGrid::from_ages(double age_init, double age_max, double cycle_length) {
    if (!(cycle_length > 0.0) || !std::isfinite(cycle_length)) {
        throw std::invalid_argument("cycle length must be positive");
    }
    const double cycles = (age_max - age_init) / cycle_length;
    const double rounded = std::round(cycles);
    if (!(rounded >= 1.0) || std::abs(cycles - rounded) > 1e-9 * std::max(1.0, rounded)) {
        throw std::invalid_argument(fmt::format(
            "ages {} to {} do not span a positive whole number of {}-year cycles", age_init,
            age_max, cycle_length));
    }
    return {static_cast<int>(rounded), cycle_length, age_init, age_max};
}

ValidationReport TimeGrid::validate() const {
    ValidationReport report;
    if (!(cycle_length > 0.0) || !std::isfinite(cycle_length)) {
        report.add("time.cycle_length", "cycle length must be positive");
        return report;
    }
    if (n_cycles < 1) {
        report.add("time", "n_cycles must be at least 1");
    }
    const double expected = (age_max - age_init) / cycle_length;
    if (std::abs(expected - n_cycles) > 1e-9 * std::max(1.0, expected)) {
        report.add("time", fmt::format("n_cycles {} does not equal (age_max - age_init) / "
                                       "cycle_length = {}",
                                       n_cycles, expected));
    }
    return report;
}

// -------------------------------------------------------------- ParameterSet

double ParameterSet::get(const std::string &name) const {
    auto it = values_.find(name);
    if (it == values_.end()) {
        throw std::out_of_range(fmt::format("unknown parameter '{}'", name));
    }
    return it->second;
}

std::string check_parameter(const std::string &name, double value) {
    if (!std::isfinite(value)) {
        return "value must be finite";
    }
    if (starts_with(name, "p_")) {
        if (ends_with(name, "_scale") || ends_with(name, "_shape")) {
            return value > 0.0 ? "" : fmt::format("Weibull parameter must be positive: {}", value);
        }
        return value >= 0.0 && value <= 1.0
                   ? ""
                   : fmt::format("probability out of range [0, 1]: {}", value);
    }
    if (starts_with(name, "hr_")) {
        return value > 0.0 ? "" : fmt::format("hazard ratio must be positive: {}", value);
    }
    if (starts_with(name, "c_") || starts_with(name, "ic_")) {
        return value >= 0.0 ? "" : fmt::format("cost must be non-negative: {}", value);
    }
    if (starts_with(name, "u_") || starts_with(name, "du_")) {
        return value >= 0.0 && value <= 1.0
                   ? ""
                   : fmt::format("utility out of range [0, 1]: {}", value);
    }
    if (starts_with(name, "d_")) {
        return value >= 0.0 ? "" : fmt::format("discount rate must be non-negative: {}", value);
    }
    return {};
}

ValidationReport ParameterSet::validate() const {
    ValidationReport report;
    for (const auto &[name, value] : values_) {
        if (auto msg = check_parameter(name, value); !msg.empty()) {
            report.add("parameters." + name, msg);
        }
    }
    return report;
}

const std::vector<std::string> &required_parameters() {
    static const std::vector<std::string> names = {
        "p_HS1", "p_S1H", "p_S1S2", "hr_S1", "hr_S2", "p_S1S2_scale", "p_S1S2_shape", "d_c",
        "d_e"};
    return names;
}

// ----------------------------------------------------------------- LifeTable

LifeTable::LifeTable(std::vector<int> ages, std::vector<double> rates) {
    ValidationReport report;
    if (ages.size() != rates.size()) {
        report.add("life_table", "ages and rates differ in length");
        throw ValidationError(std::move(report));
    }
    for (std::size_t i = 1; i < ages.size(); ++i) {
        if (ages[i] != ages[i - 1] + 1) {
            report.add(fmt::format("life_table[{}]", i),
                       fmt::format("ages must be contiguous and ascending: {} follows {}", ages[i],
                                   ages[i - 1]));
        }
    }
    if (!report.ok()) {
        throw ValidationError(std::move(report));
    }
    *this = LifeTable(ages.empty() ? 0 : ages.front(), std::move(rates));
}

LifeTable::LifeTable(int first_age, std::vector<double> rates)
    : first_age_(first_age), rates_(std::move(rates)) {
    ValidationReport report;
    for (std::size_t i = 0; i < rates_.size(); ++i) {
        if (!(rates_[i] >= 0.0) || !std::isfinite(rates_[i])) {
            report.add(fmt::format("life_table[age {}]", first_age_ + static_cast<int>(i)),
                       fmt::format("mortality rate must be non-negative: {}", rates_[i]));
        }
    }
    if (!report.ok()) {
        throw ValidationError(std::move(report));
    }
}

double LifeTable::rate_at(double age) const {
    const auto year = static_cast<int>(std::floor(age + 1e-9));
    if (!covers(year)) {
        throw std::out_of_range(fmt::format("life table has no rate for age {}", year));
    }
    return rates_[static_cast<std::size_t>(year - first_age_)];
}

// ----------------------------------------------------------------- ParamExpr

ParamExpr::ParamExpr(double constant) : terms_{{constant, {}, false}} {}

ParamExpr::ParamExpr(const char *parameter) : ParamExpr(std::string_view(parameter)) {}

ParamExpr::ParamExpr(std::string_view parameter) {
    Term t;
    if (!parameter.empty() && parameter.front() == '-') {
        t.negated = true;
        parameter.remove_prefix(1);
    }
    t.parameter = std::string(parameter);
    terms_.push_back(std::move(t));
}

double ParamExpr::evaluate(const ParameterSet &params) const {
    double total = 0.0;
    for (const auto &t : terms_) {
        if (t.parameter.empty()) {
            total += t.constant;
        } else {
            const double v = params.get(t.parameter);
            total += t.negated ? -v : v;
        }
    }
    return total;
}

std::vector<std::string> ParamExpr::parameters() const {
    std::vector<std::string> out;
    for (const auto &t : terms_) {
        if (!t.parameter.empty()) {
            out.push_back(t.parameter);
        }
    }
    return out;
}

ParamExpr ParamExpr::plus(const ParamExpr &other) const {
    auto terms = terms_;
    terms.insert(terms.end(), other.terms_.begin(), other.terms_.end());
    return ParamExpr(std::move(terms));
}

// -------------------------------------------------------- InitialStateVector

ValidationReport InitialStateVector::validate(std::size_t n_states) const {
    ValidationReport report;
    if (values_.size() != n_states) {
        report.add("initial", fmt::format("expected {} entries, got {}", n_states, values_.size()));
        return report;
    }
    double sum = 0.0;
    for (std::size_t i = 0; i < values_.size(); ++i) {
        if (!(values_[i] >= 0.0) || !std::isfinite(values_[i])) {
            report.add(fmt::format("initial[{}]", i), "occupancy must be non-negative");
        }
        sum += values_[i];
    }
    if (std::abs(sum - 1.0) > 1e-12) {
        report.add("initial", fmt::format("occupancy sums to {:.17g}, not 1", sum));
    }
    return report;
}

// ----------------------------------------------------------------- ModelSpec

const Strategy &ModelSpec::strategy(std::string_view name) const {
    for (const auto &s : strategies) {
        if (s.name == name) {
            return s;
        }
    }
    throw std::out_of_range(fmt::format("unknown strategy '{}'", name));
}

namespace {

class SpecChecker {
  public:
    explicit SpecChecker(const ModelSpec &spec) : spec_(spec) {}

    ValidationReport run() {
        report_.merge(spec_.states.validate());
        check_structure();
        report_.merge(spec_.grid.validate());
        report_.merge(spec_.parameters.validate());
        for (const auto &name : required_parameters()) {
            if (!spec_.parameters.contains(name)) {
                report_.add("parameters." + name, "required parameter is missing");
            }
        }
        check_life_table();
        report_.merge(spec_.initial.validate(spec_.states.size()));
        check_state_rewards();
        for (std::size_t i = 0; i < spec_.transition_rewards.size(); ++i) {
            check_transition_reward(spec_.transition_rewards[i],
                                    fmt::format("transition_rewards[{}]", i));
        }
        check_strategies();
        if (spec_.tunnels.state != "S1") {
            report_.add("tunnels.state", "only S1 can be expanded into tunnel states");
        }
        if (spec_.tunnels.size < 1) {
            report_.add("tunnels.size", "tunnel size must be at least 1");
        }
        if (spec_.psa) {
            report_.merge(validate_distributions(*spec_.psa));
            for (const auto &[name, dist] : *spec_.psa) {
                if (!spec_.parameters.contains(name)) {
                    report_.add("psa." + name, "distribution for unknown parameter");
                }
            }
        }
        return std::move(report_);
    }

  private:
    void check_structure() {
        for (const char *s : {"H", "S1", "S2", "D"}) {
            if (!spec_.states.contains(s)) {
                report_.add("states.names", fmt::format("required state '{}' is missing", s));
            }
        }
        if (spec_.states.size() != 4) {
            report_.add("states.names", "the transition structure needs exactly H, S1, S2 and D");
        }
    }

    void check_life_table() {
        if (!spec_.life_table) {
            report_.add("life_table", spec_.life_table_error.empty()
                                          ? "life table coverage: no life table given"
                                          : "life table coverage: " + spec_.life_table_error);
            return;
        }
        const auto &g = spec_.grid;
        if (g.n_cycles < 1 || !(g.cycle_length > 0.0)) {
            return;
        }
        const auto first = static_cast<int>(std::floor(g.age_at(0) + 1e-9));
        const auto last = static_cast<int>(std::floor(g.age_at(g.n_cycles - 1) + 1e-9));
        const auto &lt = *spec_.life_table;
        if (!lt.covers(first) || !lt.covers(last)) {
            report_.add("life_table",
                        fmt::format("life table coverage: ages {}-{} are needed but the table "
                                    "covers {}-{}",
                                    first, last, lt.first_age(), lt.last_age()));
        }
    }

    void check_expr(const ParamExpr &e, const std::string &path) {
        for (const auto &p : e.parameters()) {
            if (!spec_.parameters.contains(p)) {
                report_.add(path, fmt::format("unknown parameter '{}'", p));
            }
        }
    }

    void check_state(const std::string &label, const std::string &path) {
        if (!spec_.states.contains(label)) {
            report_.add(path, fmt::format("unknown state '{}'", label));
        }
    }

    void check_state_map(const std::map<std::string, ParamExpr> &m, const std::string &path) {
        for (const auto &[state, expr] : m) {
            check_state(state, path);
            check_expr(expr, path + "." + state);
        }
    }

    void check_state_rewards() {
        check_state_map(spec_.state_rewards.cost, "state_rewards.cost");
        check_state_map(spec_.state_rewards.utility, "state_rewards.utility");
        for (const auto &s : spec_.states.names()) {
            if (!spec_.state_rewards.cost.count(s)) {
                report_.add("state_rewards.cost", fmt::format("no cost for state '{}'", s));
            }
            if (!spec_.state_rewards.utility.count(s)) {
                report_.add("state_rewards.utility", fmt::format("no utility for state '{}'", s));
            }
        }
    }

    void check_transition_reward(const TransitionReward &r, const std::string &path) {
        if (r.origins.empty()) {
            report_.add(path + ".origins", "no origin states");
        }
        for (const auto &o : r.origins) {
            check_state(o, path + ".origins");
        }
        check_state(r.destination, path + ".destination");
        check_expr(r.cost, path + ".cost");
        check_expr(r.utility, path + ".utility");
    }

    void check_strategies() {
        if (spec_.strategies.empty()) {
            report_.add("strategies", "at least one strategy is required");
        }
        std::set<std::string> seen;
        for (std::size_t i = 0; i < spec_.strategies.size(); ++i) {
            const auto &s = spec_.strategies[i];
            const auto path = fmt::format("strategies[{}]", i);
            if (s.name.empty()) {
                report_.add(path + ".name", "empty strategy name");
            } else if (!seen.insert(s.name).second) {
                report_.add(path + ".name", fmt::format("duplicate strategy name '{}'", s.name));
            }
            check_state_map(s.utility_overrides, path + ".utility_overrides");
            check_state_map(s.cost_addons, path + ".cost_addons");
            for (const auto &[key, expr] : s.hazard_modifiers) {
                const auto hpath = path + ".hazard_modifiers." + key;
                if (std::find(std::begin(kModifiableTransitions), std::end(kModifiableTransitions),
                              key) == std::end(kModifiableTransitions)) {
                    report_.add(hpath, "unknown transition");
                }
                check_expr(expr, hpath);
                try {
                    if (const double hr = expr.evaluate(spec_.parameters); !(hr > 0.0)) {
                        report_.add(hpath, fmt::format("hazard ratio must be positive: {}", hr));
                    }
                } catch (const std::out_of_range &) {
                    // already reported as an unknown parameter
                }
            }
            for (std::size_t j = 0; j < s.transition_reward_edits.size(); ++j) {
                check_transition_reward(s.transition_reward_edits[j],
                                        fmt::format("{}.transition_reward_edits[{}]", path, j));
            }
        }
    }

    const ModelSpec &spec_;
    ValidationReport report_;
};

} // namespace

ValidationReport validate_spec(const ModelSpec &spec) { return SpecChecker(spec).run(); }

} // namespace cstm
