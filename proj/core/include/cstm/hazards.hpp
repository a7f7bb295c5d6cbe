#pragma once

#include <vector>

namespace cstm {

/// Instantaneous hazard, events per year. Non-negative and finite.
///
/// Rates and probabilities are separate types on purpose: hazard ratios
/// can only be applied to a Rate, never to a per-cycle Probability.
class Rate {
  public:
    constexpr Rate() noexcept = default;
    /// Throws std::invalid_argument for negative or non-finite values.
    explicit Rate(double per_year);

    [[nodiscard]] constexpr double value() const noexcept { return value_; }
    friend constexpr auto operator<=>(Rate, Rate) noexcept = default;

  private:
    double value_ = 0.0;
};

/// Per-cycle transition probability in [0, 1].
class Probability {
  public:
    constexpr Probability() noexcept = default;
    /// Throws std::invalid_argument outside [0, 1] or for NaN.
    explicit Probability(double p);

    [[nodiscard]] constexpr double value() const noexcept { return value_; }
    friend constexpr auto operator<=>(Probability, Probability) noexcept = default;

  private:
    double value_ = 0.0;
};

/// 1 - exp(-rate * cycle_length), assuming a constant hazard over the cycle.
[[nodiscard]] Probability prob_from_rate(Rate rate, double cycle_length);

/// -ln(1 - p) / cycle_length. p must be < 1.
[[nodiscard]] Rate rate_from_prob(Probability p, double cycle_length);

/// rate * hr, hr > 0.
[[nodiscard]] Rate apply_hazard_ratio(Rate rate, double hr);

/// Weibull cumulative hazard H(tau) = (scale * tau)^shape.
[[nodiscard]] double weibull_cumulative_hazard(double scale, double shape, double tau);

/// Piecewise-constant rates for residence cycles 1..n: element tau-1 is
/// H(tau) - H(tau - 1), so the partial sums telescope to H(tau).
[[nodiscard]] std::vector<Rate> weibull_cycle_rates(double scale, double shape, int n);

/// prob_from_rate applied to each element of weibull_cycle_rates.
[[nodiscard]] std::vector<Probability> weibull_cycle_probs(double scale, double shape, int n,
                                                           double cycle_length);

} // namespace cstm
