#include "cstm/psa.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <random>
#include <stdexcept>
#include <thread>

#include <boost/random/beta_distribution.hpp>
#include <boost/random/gamma_distribution.hpp>
#include <boost/random/lognormal_distribution.hpp>
#include <boost/random/uniform_real_distribution.hpp>
#include <fmt/format.h>

namespace cstm {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::mt19937_64 substream(std::uint64_t seed, std::uint64_t index) {
    return std::mt19937_64(splitmix64(splitmix64(seed) ^ index));
}

double draw(const Distribution &d, std::mt19937_64 &rng) {
    switch (d.family) {
    case Family::fixed:
        return d.a;
    case Family::beta:
        return boost::random::beta_distribution<double>(d.a, d.b)(rng);
    case Family::gamma:
        return boost::random::gamma_distribution<double>(d.a, d.b)(rng);
    case Family::lognormal:
        return boost::random::lognormal_distribution<double>(d.a, d.b)(rng);
    case Family::uniform:
        return boost::random::uniform_real_distribution<double>(d.a, d.b)(rng);
    }
    return std::nan("");
}

} // namespace

std::vector<ParameterSet> sample_parameters(const ParameterSet &base,
                                            const DistributionSpec &dists, int n,
                                            std::uint64_t seed, int max_retries) {
    if (n < 1) {
        throw std::invalid_argument("number of samples must be at least 1");
    }
    auto report = validate_distributions(dists);
    for (const auto &[name, _] : dists) {
        if (!base.contains(name)) {
            report.add("psa." + name, "distribution for unknown parameter");
        }
    }
    if (!report.ok()) {
        throw ValidationError(std::move(report));
    }

    std::vector<ParameterSet> out;
    out.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        auto rng = substream(seed, static_cast<std::uint64_t>(i));
        for (int attempt = 0;; ++attempt) {
            if (attempt > max_retries) {
                throw Error(fmt::format("sample {}: no valid draw after {} retries", i,
                                        max_retries));
            }
            ParameterSet p = base;
            for (const auto &[name, dist] : dists) {
                p.set(name, draw(dist, rng));
            }
            if (p.validate().ok()) {
                out.push_back(std::move(p));
                break;
            }
        }
    }
    return out;
}

PsaResult run_psa(const ModelSpec &spec, const DistributionSpec &dists, int n,
                  std::uint64_t seed, ModelVariant variant, unsigned threads) {
    PsaResult res;
    res.seed = seed;
    res.samples = sample_parameters(spec.parameters, dists, n, seed);
    const auto k = static_cast<Eigen::Index>(spec.strategies.size());
    for (const auto &s : spec.strategies) {
        res.strategies.push_back(s.name);
    }
    res.costs.resize(n, k);
    res.effects.resize(n, k);

    if (threads == 0) {
        threads = std::max(1u, std::thread::hardware_concurrency());
    }
    threads = std::min<unsigned>(threads, static_cast<unsigned>(n));

    std::atomic<int> next{0};
    std::atomic<bool> failed{false};
    std::exception_ptr error;
    int error_sample = -1;
    std::mutex error_mutex;

    const auto worker = [&] {
        for (int i = next++; i < n && !failed; i = next++) {
            try {
                const auto results = evaluate_all(spec, res.samples[static_cast<std::size_t>(i)],
                                                  variant);
                for (Eigen::Index s = 0; s < k; ++s) {
                    res.costs(i, s) = results[static_cast<std::size_t>(s)].total_cost;
                    res.effects(i, s) = results[static_cast<std::size_t>(s)].total_qaly;
                }
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!error || i < error_sample) {
                    error = std::current_exception();
                    error_sample = i;
                }
                failed = true;
            }
        }
    };

    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(threads);
        for (unsigned t = 0; t < threads; ++t) {
            pool.emplace_back(worker);
        }
        for (auto &t : pool) {
            t.join();
        }
    }
    if (error) {
        try {
            std::rethrow_exception(error);
        } catch (const std::exception &e) {
            throw Error(fmt::format("PSA sample {}: {}", error_sample, e.what()));
        }
    }
    return res;
}

std::vector<double> wtp_grid(double min, double max, double step) {
    if (!(min >= 0.0) || !(max >= min) || !(step > 0.0) || !std::isfinite(max) ||
        !std::isfinite(step)) {
        throw std::invalid_argument(
            fmt::format("invalid WTP grid: min {}, max {}, step {}", min, max, step));
    }
    std::vector<double> grid;
    const auto count = static_cast<long long>(std::floor((max - min) / step + 1e-9));
    for (long long i = 0; i <= count; ++i) {
        grid.push_back(min + static_cast<double>(i) * step);
    }
    return grid;
}

namespace {
Eigen::MatrixXd nmb(const PsaResult &res, double wtp) { return res.effects * wtp - res.costs; }

// NMB values are large (millions) while EVPI is their small difference, so
// the averages behind it are accumulated in extended precision.
template <typename Vec> long double precise_mean(const Vec &v) {
    long double sum = 0.0L;
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        sum += static_cast<long double>(v(i));
    }
    return sum / static_cast<long double>(v.size());
}
} // namespace

DecisionCurves ceac_ceaf(const PsaResult &res, const std::vector<double> &wtp) {
    const auto n = res.n_samples();
    const auto k = res.n_strategies();
    DecisionCurves c;
    c.wtp = wtp;
    c.strategies = res.strategies;
    const auto nw = static_cast<Eigen::Index>(wtp.size());
    c.ceac = Eigen::MatrixXd::Zero(nw, k);
    c.expected_nmb.resize(nw, k);
    c.ceaf.resize(wtp.size());
    for (Eigen::Index w = 0; w < nw; ++w) {
        const auto v = nmb(res, wtp[static_cast<std::size_t>(w)]);
        for (int i = 0; i < n; ++i) {
            const double best = v.row(i).maxCoeff();
            int ties = 0;
            for (int s = 0; s < k; ++s) {
                ties += v(i, s) == best;
            }
            for (int s = 0; s < k; ++s) {
                if (v(i, s) == best) {
                    c.ceac(w, s) += 1.0 / ties;
                }
            }
        }
        c.ceac.row(w) /= n;
        c.expected_nmb.row(w) = v.colwise().mean();
        Eigen::Index arg = 0;
        c.expected_nmb.row(w).maxCoeff(&arg);
        c.ceaf[static_cast<std::size_t>(w)] = static_cast<int>(arg);
    }
    return c;
}

void elc_evpi(const PsaResult &res, DecisionCurves &curves) {
    const auto nw = static_cast<Eigen::Index>(curves.wtp.size());
    const auto k = res.n_strategies();
    curves.expected_loss.resize(nw, k);
    curves.evpi.resize(nw);
    for (Eigen::Index w = 0; w < nw; ++w) {
        const auto v = nmb(res, curves.wtp[static_cast<std::size_t>(w)]);
        const Eigen::VectorXd best = v.rowwise().maxCoeff();
        for (int s = 0; s < k; ++s) {
            curves.expected_loss(w, s) = static_cast<double>(precise_mean(best - v.col(s)));
        }
        curves.evpi(w) = curves.expected_loss.row(w).minCoeff();
    }
}

DecisionCurves decision_curves(const PsaResult &res, const std::vector<double> &wtp) {
    auto c = ceac_ceaf(res, wtp);
    elc_evpi(res, c);
    return c;
}

Eigen::VectorXd evpi_direct(const PsaResult &res, const std::vector<double> &wtp) {
    Eigen::VectorXd out(static_cast<Eigen::Index>(wtp.size()));
    for (std::size_t w = 0; w < wtp.size(); ++w) {
        const auto v = nmb(res, wtp[w]);
        long double best_mean = -std::numeric_limits<long double>::infinity();
        for (Eigen::Index s = 0; s < v.cols(); ++s) {
            best_mean = std::max(best_mean, precise_mean(v.col(s)));
        }
        const Eigen::VectorXd best = v.rowwise().maxCoeff();
        out(static_cast<Eigen::Index>(w)) = static_cast<double>(precise_mean(best) - best_mean);
    }
    return out;
}

} // namespace cstm
