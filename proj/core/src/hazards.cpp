#include "cstm/hazards.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace cstm {

namespace {
void require_positive(double x, const char *what) {
    if (!(x > 0.0) || !std::isfinite(x)) {
        throw std::invalid_argument(std::string(what) + " must be positive and finite, got " +
                                    std::to_string(x));
    }
}
} // namespace

Rate::Rate(double per_year) : value_(per_year) {
    if (!(per_year >= 0.0) || !std::isfinite(per_year)) {
        throw std::invalid_argument("rate must be non-negative and finite, got " +
                                    std::to_string(per_year));
    }
}

Probability::Probability(double p) : value_(p) {
    if (!(p >= 0.0 && p <= 1.0)) {
        throw std::invalid_argument("probability must lie in [0, 1], got " + std::to_string(p));
    }
}

Probability prob_from_rate(Rate rate, double cycle_length) {
    require_positive(cycle_length, "cycle length");
    // -expm1(-x) keeps full precision for the tiny mortality hazards at young ages.
    return Probability(-std::expm1(-rate.value() * cycle_length));
}

Rate rate_from_prob(Probability p, double cycle_length) {
    require_positive(cycle_length, "cycle length");
    if (p.value() >= 1.0) {
        throw std::invalid_argument("probability 1 has no finite rate");
    }
    return Rate(-std::log1p(-p.value()) / cycle_length);
}

Rate apply_hazard_ratio(Rate rate, double hr) {
    require_positive(hr, "hazard ratio");
    return Rate(rate.value() * hr);
}

double weibull_cumulative_hazard(double scale, double shape, double tau) {
    require_positive(scale, "Weibull scale");
    require_positive(shape, "Weibull shape");
    return std::pow(scale * tau, shape);
}

std::vector<Rate> weibull_cycle_rates(double scale, double shape, int n) {
    require_positive(scale, "Weibull scale");
    require_positive(shape, "Weibull shape");
    if (n < 1) {
        throw std::invalid_argument("tunnel count must be at least 1");
    }
    std::vector<Rate> rates;
    rates.reserve(static_cast<std::size_t>(n));
    double previous = 0.0;
    for (int tau = 1; tau <= n; ++tau) {
        const double current = std::pow(scale * tau, shape);
        rates.emplace_back(current - previous);
        previous = current;
    }
    return rates;
}

std::vector<Probability> weibull_cycle_probs(double scale, double shape, int n,
                                             double cycle_length) {
    const auto rates = weibull_cycle_rates(scale, shape, n);
    std::vector<Probability> probs;
    probs.reserve(rates.size());
    for (auto r : rates) {
        probs.push_back(prob_from_rate(r, cycle_length));
    }
    return probs;
}

} // namespace cstm
