#include "cstm/distribution.hpp"

#include <cmath>
#include <stdexcept>

#include <fmt/format.h>

namespace cstm {

std::string_view to_string(Family f) noexcept {
    switch (f) {
    case Family::fixed:
        return "fixed";
    case Family::beta:
        return "beta";
    case Family::gamma:
        return "gamma";
    case Family::lognormal:
        return "lognormal";
    case Family::uniform:
        return "uniform";
    }
    return "unknown";
}

Family family_from_string(std::string_view name) {
    for (auto f : {Family::fixed, Family::beta, Family::gamma, Family::lognormal, Family::uniform}) {
        if (to_string(f) == name) {
            return f;
        }
    }
    throw std::invalid_argument(fmt::format("unknown distribution family '{}'", name));
}

namespace {
void require_moments(double mean, double se) {
    if (!std::isfinite(mean) || !std::isfinite(se) || se <= 0.0) {
        throw std::invalid_argument(
            fmt::format("invalid moments (mean {}, se {}): se must be positive", mean, se));
    }
}
} // namespace

Distribution Distribution::beta_from_moments(double mean, double se) {
    require_moments(mean, se);
    const double var = se * se;
    if (mean <= 0.0 || mean >= 1.0 || var >= mean * (1.0 - mean)) {
        throw std::invalid_argument(
            fmt::format("no beta distribution has mean {} and se {}", mean, se));
    }
    const double k = mean * (1.0 - mean) / var - 1.0;
    return beta(mean * k, (1.0 - mean) * k);
}

Distribution Distribution::gamma_from_moments(double mean, double se) {
    require_moments(mean, se);
    if (mean <= 0.0) {
        throw std::invalid_argument(fmt::format("no gamma distribution has mean {}", mean));
    }
    const double var = se * se;
    return gamma(mean * mean / var, var / mean);
}

Distribution Distribution::lognormal_from_moments(double mean, double se) {
    require_moments(mean, se);
    if (mean <= 0.0) {
        throw std::invalid_argument(fmt::format("no lognormal distribution has mean {}", mean));
    }
    const double s2 = std::log1p(se * se / (mean * mean));
    return lognormal(std::log(mean) - 0.5 * s2, std::sqrt(s2));
}

double Distribution::mean() const {
    switch (family) {
    case Family::fixed:
        return a;
    case Family::beta:
        return a / (a + b);
    case Family::gamma:
        return a * b;
    case Family::lognormal:
        return std::exp(a + 0.5 * b * b);
    case Family::uniform:
        return 0.5 * (a + b);
    }
    return std::nan("");
}

std::string Distribution::check() const {
    if (!std::isfinite(a) || !std::isfinite(b)) {
        return "distribution parameters must be finite";
    }
    switch (family) {
    case Family::fixed:
        return {};
    case Family::beta:
        return a > 0.0 && b > 0.0 ? "" : "beta requires alpha > 0 and beta > 0";
    case Family::gamma:
        return a > 0.0 && b > 0.0 ? "" : "gamma requires shape > 0 and scale > 0";
    case Family::lognormal:
        return b > 0.0 ? "" : "lognormal requires sdlog > 0";
    case Family::uniform:
        return a < b ? "" : "uniform requires min < max";
    }
    return "unknown family";
}

ValidationReport validate_distributions(const DistributionSpec &dists) {
    ValidationReport report;
    for (const auto &[name, dist] : dists) {
        if (auto msg = dist.check(); !msg.empty()) {
            report.add("psa." + name, msg);
        }
    }
    return report;
}

DistributionSpec default_sick_sicker_distributions() {
    using D = Distribution;
    return {
        {"p_HS1", D::beta_from_moments(0.15, 0.025)},
        {"p_S1H", D::beta_from_moments(0.5, 0.045)},
        {"p_S1S2", D::beta_from_moments(0.105, 0.0108)},
        {"hr_S1", D::lognormal_from_moments(3.0, 0.3)},
        {"hr_S2", D::lognormal_from_moments(10.0, 1.0)},
        {"hr_S1S2_trtB", D::lognormal_from_moments(0.6, 0.06)},
        {"p_S1S2_scale", D::lognormal_from_moments(0.08, 0.008)},
        {"p_S1S2_shape", D::lognormal_from_moments(1.1, 0.05)},
        {"c_H", D::gamma_from_moments(2000.0, 200.0)},
        {"c_S1", D::gamma_from_moments(4000.0, 300.0)},
        {"c_S2", D::gamma_from_moments(15000.0, 1000.0)},
        {"c_trtA", D::gamma_from_moments(12000.0, 1400.0)},
        {"c_trtB", D::gamma_from_moments(13000.0, 1400.0)},
        {"u_S1", D::beta_from_moments(0.75, 0.03)},
        {"u_S2", D::beta_from_moments(0.5, 0.023)},
        {"u_trtA", D::beta_from_moments(0.95, 0.012)},
        {"du_HS1", D::beta_from_moments(0.01, 0.003)},
        {"ic_HS1", D::gamma_from_moments(1000.0, 200.0)},
        {"ic_D", D::gamma_from_moments(2000.0, 200.0)},
    };
}

} // namespace cstm
