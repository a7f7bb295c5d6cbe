#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "cstm/distribution.hpp"
#include "cstm/evaluate.hpp"
#include "cstm/model.hpp"

namespace cstm {

/// Draws n parameter sets. Parameters without a distribution keep their base
/// value. Sample i uses its own generator seeded from (seed, i), so results
/// do not depend on how samples are scheduled. A draw that violates the
/// parameter constraints is redrawn, at most `max_retries` times.
///
/// Throws ValidationError for invalid distributions or unknown parameter
/// names, and Error when the retry cap is hit.
[[nodiscard]] std::vector<ParameterSet> sample_parameters(const ParameterSet &base,
                                                          const DistributionSpec &dists, int n,
                                                          std::uint64_t seed,
                                                          int max_retries = 1000);

struct PsaResult {
    std::vector<std::string> strategies;
    /// n_samples x n_strategies
    Eigen::MatrixXd costs;
    Eigen::MatrixXd effects;
    std::uint64_t seed = 0;
    std::vector<ParameterSet> samples;

    [[nodiscard]] int n_samples() const noexcept { return static_cast<int>(costs.rows()); }
    [[nodiscard]] int n_strategies() const noexcept { return static_cast<int>(costs.cols()); }
};

/// Evaluates every strategy for every sample. `threads` = 0 uses the
/// hardware concurrency. Errors are rethrown as Error naming the sample.
[[nodiscard]] PsaResult run_psa(const ModelSpec &spec, const DistributionSpec &dists, int n,
                                std::uint64_t seed, ModelVariant variant = ModelVariant::simtime,
                                unsigned threads = 0);

struct DecisionCurves {
    std::vector<double> wtp;
    std::vector<std::string> strategies;
    /// n_wtp x n_strategies; probability each strategy has the highest NMB.
    Eigen::MatrixXd ceac;
    /// n_wtp x n_strategies; mean NMB.
    Eigen::MatrixXd expected_nmb;
    /// Index of the strategy with the highest mean NMB per WTP.
    std::vector<int> ceaf;
    /// n_wtp x n_strategies; mean NMB forgone by committing to each strategy.
    Eigen::MatrixXd expected_loss;
    /// Lower envelope of the expected loss curves.
    Eigen::VectorXd evpi;
};

/// min, min + step, ... up to max (inclusive, within rounding).
/// Throws std::invalid_argument unless 0 <= min <= max and step > 0.
[[nodiscard]] std::vector<double> wtp_grid(double min, double max, double step);

/// NMB = effect * WTP - cost. CEAC credit for tied maxima is split evenly.
[[nodiscard]] DecisionCurves ceac_ceaf(const PsaResult &res, const std::vector<double> &wtp);

/// Adds expected loss and EVPI to curves produced by ceac_ceaf.
void elc_evpi(const PsaResult &res, DecisionCurves &curves);

/// Both parts in one call.
[[nodiscard]] DecisionCurves decision_curves(const PsaResult &res, const std::vector<double> &wtp);

/// EVPI as E[max NMB] - max E[NMB], computed independently of the loss curves.
[[nodiscard]] Eigen::VectorXd evpi_direct(const PsaResult &res, const std::vector<double> &wtp);

} // namespace cstm
