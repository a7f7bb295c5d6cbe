#pragma once

#include <map>
#include <string>
#include <string_view>

#include "cstm/report.hpp"

namespace cstm {

enum class Family { fixed, beta, gamma, lognormal, uniform };

[[nodiscard]] std::string_view to_string(Family f) noexcept;
/// Throws std::invalid_argument for unknown names.
[[nodiscard]] Family family_from_string(std::string_view name);

/// A univariate sampling distribution. Meaning of (a, b) by family:
///   fixed      a = value
///   beta       a = alpha, b = beta
///   gamma      a = shape, b = scale
///   lognormal  a = meanlog, b = sdlog
///   uniform    a = min,   b = max
struct Distribution {
    Family family = Family::fixed;
    double a = 0.0;
    double b = 0.0;

    static Distribution fixed(double value) { return {Family::fixed, value, 0.0}; }
    static Distribution beta(double alpha, double beta) { return {Family::beta, alpha, beta}; }
    static Distribution gamma(double shape, double scale) { return {Family::gamma, shape, scale}; }
    static Distribution lognormal(double meanlog, double sdlog) {
        return {Family::lognormal, meanlog, sdlog};
    }
    static Distribution uniform(double lo, double hi) { return {Family::uniform, lo, hi}; }

    // Moment matching from a mean and standard error. Each throws
    // std::invalid_argument when no member of the family has those moments.
    static Distribution beta_from_moments(double mean, double se);
    static Distribution gamma_from_moments(double mean, double se);
    static Distribution lognormal_from_moments(double mean, double se);

    [[nodiscard]] double mean() const;
    /// Empty when the family parameters are usable.
    [[nodiscard]] std::string check() const;

    bool operator==(const Distribution &) const = default;
};

/// Parameter name -> distribution. Parameters not listed keep their base value.
using DistributionSpec = std::map<std::string, Distribution>;

[[nodiscard]] ValidationReport validate_distributions(const DistributionSpec &dists);

/// Beta for probabilities and utilities, gamma for costs, lognormal for
/// hazard ratios and Weibull parameters; all moment-matched to the
/// base-case value. u_H is left at 1 because no beta has mean 1.
[[nodiscard]] DistributionSpec default_sick_sicker_distributions();

} // namespace cstm
