#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cstm/distribution.hpp"
#include "cstm/report.hpp"

namespace cstm {

class StateSpace {
  public:
    StateSpace() = default;
    StateSpace(std::vector<std::string> names, std::vector<std::string> absorbing,
               std::vector<std::string> death_states);

    [[nodiscard]] const std::vector<std::string> &names() const noexcept { return names_; }
    [[nodiscard]] const std::vector<std::string> &absorbing() const noexcept { return absorbing_; }
    [[nodiscard]] const std::vector<std::string> &death_states() const noexcept {
        return death_states_;
    }
    [[nodiscard]] std::size_t size() const noexcept { return names_.size(); }
    [[nodiscard]] bool contains(std::string_view label) const;
    /// Throws std::out_of_range for unknown labels.
    [[nodiscard]] std::size_t index_of(std::string_view label) const;

    [[nodiscard]] ValidationReport validate() const;

    bool operator==(const StateSpace &) const = default;

  private:
    std::vector<std::string> names_;
    std::vector<std::string> absorbing_;
    std::vector<std::string> death_states_;
};

struct TimeGrid {
    int n_cycles = 0;
    double cycle_length = 1.0;
    double age_init = 0.0;
    double age_max = 0.0;

    /// Derives n_cycles; throws std::invalid_argument if the span is not a
    /// whole number of cycles.
    static TimeGrid from_ages(double age_init, double age_max, double cycle_length);

    /// Age of the cohort at the start of cycle t.
    [[nodiscard]] double age_at(int t) const noexcept { return age_init + t * cycle_length; }
    [[nodiscard]] ValidationReport validate() const;

    bool operator==(const TimeGrid &) const = default;
};

/// Named scalar parameters. Constraints are keyed on the name prefix:
/// p_ probabilities (except *_scale / *_shape, which are positive Weibull
/// parameters), hr_ hazard ratios, c_/ic_ costs, u_/du_ utilities, d_
/// discount rates.
class ParameterSet {
  public:
    ParameterSet() = default;
    ParameterSet(std::initializer_list<std::pair<const std::string, double>> values)
        : values_(values) {}

    void set(const std::string &name, double value) { values_[name] = value; }
    [[nodiscard]] bool contains(const std::string &name) const { return values_.count(name) != 0; }
    /// Throws std::out_of_range naming the missing parameter.
    [[nodiscard]] double get(const std::string &name) const;
    [[nodiscard]] const std::map<std::string, double> &values() const noexcept { return values_; }
    [[nodiscard]] std::size_t size() const noexcept { return values_.size(); }

    [[nodiscard]] ValidationReport validate() const;

    bool operator==(const ParameterSet &) const = default;

  private:
    std::map<std::string, double> values_;
};

/// Checks a single value against the constraint implied by its name.
/// Returns an empty string when the value is acceptable.
[[nodiscard]] std::string check_parameter(const std::string &name, double value);

class LifeTable {
  public:
    LifeTable() = default;
    /// Ages must be contiguous and ascending, rates non-negative and finite.
    /// Throws ValidationError otherwise.
    LifeTable(std::vector<int> ages, std::vector<double> rates);
    LifeTable(int first_age, std::vector<double> rates);

    [[nodiscard]] bool empty() const noexcept { return rates_.empty(); }
    [[nodiscard]] int first_age() const noexcept { return first_age_; }
    [[nodiscard]] int last_age() const noexcept {
        return first_age_ + static_cast<int>(rates_.size()) - 1;
    }
    [[nodiscard]] const std::vector<double> &rates() const noexcept { return rates_; }
    [[nodiscard]] bool covers(int age) const noexcept {
        return !empty() && age >= first_age_ && age <= last_age();
    }
    /// Hazard for the integer year of age containing `age`.
    [[nodiscard]] double rate_at(double age) const;

    bool operator==(const LifeTable &) const = default;

  private:
    int first_age_ = 0;
    std::vector<double> rates_;
};

/// A reward or modifier value written in terms of parameters: a sum of
/// terms, each either a constant or an optionally negated parameter name.
/// "c_S1", ["c_trtA", "c_trtB"], "-du_HS1" and 250 are all valid.
class ParamExpr {
  public:
    struct Term {
        double constant = 0.0;
        std::string parameter;
        bool negated = false;

        bool operator==(const Term &) const = default;
    };

    ParamExpr() = default;
    ParamExpr(double constant);                  // NOLINT(google-explicit-constructor)
    ParamExpr(const char *parameter);            // NOLINT(google-explicit-constructor)
    ParamExpr(std::string_view parameter);       // NOLINT(google-explicit-constructor)
    explicit ParamExpr(std::vector<Term> terms) : terms_(std::move(terms)) {}

    [[nodiscard]] double evaluate(const ParameterSet &params) const;
    [[nodiscard]] const std::vector<Term> &terms() const noexcept { return terms_; }
    [[nodiscard]] std::vector<std::string> parameters() const;
    [[nodiscard]] ParamExpr plus(const ParamExpr &other) const;

    bool operator==(const ParamExpr &) const = default;

  private:
    std::vector<Term> terms_;
};

/// One-time reward attached to moving from any of `origins` into `destination`.
struct TransitionReward {
    std::vector<std::string> origins;
    std::string destination;
    ParamExpr cost;
    ParamExpr utility;

    bool operator==(const TransitionReward &) const = default;
};

/// Transitions of the Sick-Sicker structure whose hazards a strategy may scale.
inline constexpr std::string_view kModifiableTransitions[] = {"HS1", "S1H", "S1S2",
                                                              "HD",  "S1D", "S2D"};

struct Strategy {
    std::string name;
    std::string label;
    std::map<std::string, ParamExpr> utility_overrides;
    std::map<std::string, ParamExpr> cost_addons;
    /// transition key -> hazard ratio applied to the underlying rate
    std::map<std::string, ParamExpr> hazard_modifiers;
    std::vector<TransitionReward> transition_reward_edits;

    bool operator==(const Strategy &) const = default;
};

struct StateRewards {
    std::map<std::string, ParamExpr> cost;
    std::map<std::string, ParamExpr> utility;

    bool operator==(const StateRewards &) const = default;
};

struct TunnelConfig {
    std::string state = "S1";
    int size = 0;

    bool operator==(const TunnelConfig &) const = default;
};

class InitialStateVector {
  public:
    InitialStateVector() = default;
    explicit InitialStateVector(std::vector<double> occupancy) : values_(std::move(occupancy)) {}

    [[nodiscard]] const std::vector<double> &values() const noexcept { return values_; }
    [[nodiscard]] std::size_t size() const noexcept { return values_.size(); }
    [[nodiscard]] ValidationReport validate(std::size_t n_states) const;

    bool operator==(const InitialStateVector &) const = default;

  private:
    std::vector<double> values_;
};

struct ModelSpec {
    std::string name;
    StateSpace states;
    TimeGrid grid;
    ParameterSet parameters;
    std::optional<LifeTable> life_table;
    /// Where the life table came from: a path as written in the spec file,
    /// or empty when it is inline / built in.
    std::string life_table_source;
    /// Set when the spec named a life table that could not be loaded.
    std::string life_table_error;
    InitialStateVector initial;
    StateRewards state_rewards;
    std::vector<TransitionReward> transition_rewards;
    std::vector<Strategy> strategies;
    TunnelConfig tunnels;
    std::optional<DistributionSpec> psa;

    [[nodiscard]] const Strategy &strategy(std::string_view name) const;

    bool operator==(const ModelSpec &) const = default;
};

/// Structural and numerical checks on a spec. Nothing is coerced.
[[nodiscard]] ValidationReport validate_spec(const ModelSpec &spec);

/// Parameter names the transition builder reads directly.
[[nodiscard]] const std::vector<std::string> &required_parameters();

/// The age-dependent Sick-Sicker model with its four strategies
/// (SoC, A, B, AB) and the bundled US life table.
[[nodiscard]] ModelSpec builtin_sick_sicker();

/// The bundled US mortality table (ages 0-110).
[[nodiscard]] const LifeTable &reference_life_table();

} // namespace cstm
