#include <cmath>

#include <gtest/gtest.h>

#include "cstm/psa.hpp"
#include "oracles.hpp"

using namespace cstm;

namespace {

const ModelSpec &spec() {
    static const ModelSpec s = builtin_sick_sicker();
    return s;
}

DistributionSpec all_fixed(const ParameterSet &params) {
    DistributionSpec d;
    for (const auto &[name, value] : params.values()) {
        d[name] = Distribution::fixed(value);
    }
    return d;
}

PsaResult small_result() {
    PsaResult res;
    res.strategies = {"a", "b", "c"};
    res.costs.resize(4, 3);
    res.effects.resize(4, 3);
    res.costs << 0, 10, 30,
                 0, 12, 25,
                 0, 8, 40,
                 0, 10, 30;
    res.effects << 0, 1, 4,
                   0, 2, 3,
                   0, 0.5, 5,
                   0, 1, 4;
    return res;
}

} // namespace

TEST(Distribution, MomentMatching) {
    const auto b = Distribution::beta_from_moments(0.15, 0.025);
    EXPECT_NEAR(b.mean(), 0.15, 1e-12);
    const double k = b.a + b.b;
    EXPECT_NEAR(std::sqrt(b.a * b.b / (k * k * (k + 1))), 0.025, 1e-12);
    const auto g = Distribution::gamma_from_moments(2000, 200);
    EXPECT_NEAR(g.a * g.b, 2000, 1e-9);
    EXPECT_NEAR(std::sqrt(g.a) * g.b, 200, 1e-9);
    const auto l = Distribution::lognormal_from_moments(3, 0.3);
    EXPECT_NEAR(l.mean(), 3, 1e-12);
    EXPECT_NEAR(std::sqrt(std::expm1(l.b * l.b)) * l.mean(), 0.3, 1e-12);
    EXPECT_THROW((void)Distribution::beta_from_moments(0.5, 0.6), std::invalid_argument);
    EXPECT_THROW((void)Distribution::gamma_from_moments(-1, 1), std::invalid_argument);
    EXPECT_EQ(Distribution::uniform(1, 3).mean(), 2.0);
    EXPECT_FALSE(Distribution::uniform(3, 1).check().empty());
    EXPECT_EQ(family_from_string("lognormal"), Family::lognormal);
    EXPECT_THROW((void)family_from_string("normal"), std::invalid_argument);
}

TEST(Sampling, DeterministicForAFixedSeed) {
    const auto d = default_sick_sicker_distributions();
    const auto a = sample_parameters(spec().parameters, d, 50, 42);
    const auto b = sample_parameters(spec().parameters, d, 50, 42);
    const auto c = sample_parameters(spec().parameters, d, 50, 43);
    EXPECT_EQ(a, b);
    EXPECT_NE(a, c);
    // Sample i does not depend on how many samples are drawn.
    const auto prefix = sample_parameters(spec().parameters, d, 10, 42);
    EXPECT_TRUE(std::equal(prefix.begin(), prefix.end(), a.begin()));
}

TEST(Sampling, BetaMeanWithinThreeStandardErrors) {
    const auto dist = Distribution::beta_from_moments(0.15, 0.025);
    const auto samples = sample_parameters(spec().parameters, {{"p_HS1", dist}}, 10000, 1);
    double sum = 0.0;
    for (const auto &p : samples) {
        sum += p.get("p_HS1");
        EXPECT_EQ(p.get("c_S2"), 15000.0);
    }
    EXPECT_NEAR(sum / 10000, 0.15, 3 * 0.025 / std::sqrt(10000.0));
}

TEST(Sampling, FixedDistributionsCopyTheirValue) {
    const auto samples = sample_parameters(spec().parameters, {{"c_H", Distribution::fixed(5)}}, 5, 1);
    for (const auto &p : samples) {
        EXPECT_EQ(p.get("c_H"), 5.0);
    }
}

TEST(Sampling, DefaultDrawsRespectParameterConstraints) {
    for (const auto &p : sample_parameters(spec().parameters, default_sick_sicker_distributions(), 500, 9)) {
        EXPECT_TRUE(p.validate().ok()) << p.validate().to_string();
    }
}

TEST(Sampling, RejectsUnknownParametersAndBadDistributions) {
    EXPECT_THROW((void)sample_parameters(spec().parameters, {{"nope", Distribution::fixed(1)}}, 1, 1),
                 ValidationError);
    EXPECT_THROW((void)sample_parameters(spec().parameters, {{"c_H", Distribution::gamma(-1, 1)}}, 1, 1),
                 ValidationError);
    EXPECT_THROW((void)sample_parameters(spec().parameters, {}, 0, 1), std::invalid_argument);
}

TEST(Sampling, RetryCapIsReported) {
    // Every draw is a probability above 1.
    EXPECT_THROW((void)sample_parameters(spec().parameters, {{"p_HS1", Distribution::uniform(2, 3)}}, 1,
                                         1, 5),
                 Error);
}

TEST(Psa, DegenerateDistributionsReproduceTheBaseCase) {
    const auto base = evaluate_all(spec());
    const auto res = run_psa(spec(), all_fixed(spec().parameters), 3, 1);
    for (int s = 0; s < 4; ++s) {
        for (int i = 0; i < 3; ++i) {
            EXPECT_EQ(res.costs(i, s), base[s].total_cost);
            EXPECT_EQ(res.effects(i, s), base[s].total_qaly);
        }
    }
}

TEST(Psa, IndependentOfThreadCount) {
    const auto d = default_sick_sicker_distributions();
    const auto one = run_psa(spec(), d, 40, 7, ModelVariant::simtime, 1);
    const auto many = run_psa(spec(), d, 40, 7, ModelVariant::simtime, 5);
    EXPECT_EQ(one.costs, many.costs);
    EXPECT_EQ(one.effects, many.effects);
    EXPECT_EQ(one.samples, many.samples);
}

TEST(Psa, FailingSampleIsNamed) {
    auto s = spec();
    try {
        (void)run_psa(s, {{"p_S1H", Distribution::uniform(0.95, 0.99)}}, 3, 1, ModelVariant::simtime, 2);
        FAIL();
    } catch (const Error &e) {
        EXPECT_NE(std::string(e.what()).find("PSA sample"), std::string::npos);
    }
}

TEST(DecisionCurves, CeacSumsToOneAndMatchesBruteForce) {
    const auto res = run_psa(spec(), default_sick_sicker_distributions(), 200, 3);
    const auto wtp = wtp_grid(0, 200000, 5000);
    ASSERT_EQ(wtp.size(), 41u);
    const auto c = decision_curves(res, wtp);
    for (std::size_t w = 0; w < wtp.size(); ++w) {
        EXPECT_NEAR(c.ceac.row(w).sum(), 1.0, 1e-12);
        const auto expected = oracle::ceac_at(res, wtp[w]);
        for (int s = 0; s < 4; ++s) {
            EXPECT_NEAR(c.ceac(w, s), expected[s], 1e-12);
        }
        std::vector<double> mc(4), me(4);
        for (int s = 0; s < 4; ++s) {
            mc[s] = res.costs.col(s).mean();
            me[s] = res.effects.col(s).mean();
        }
        EXPECT_EQ(c.ceaf[w], oracle::best_by_nmb(mc, me, wtp[w]));
    }
    // At WTP 0 the cheapest strategy always wins.
    EXPECT_EQ(c.ceac(0, 0), 1.0);
    EXPECT_EQ(c.ceaf[0], 0);
}

TEST(DecisionCurves, EvpiIdentityAndSign) {
    const auto res = run_psa(spec(), default_sick_sicker_distributions(), 300, 11);
    const auto wtp = wtp_grid(0, 200000, 5000);
    const auto c = decision_curves(res, wtp);
    const auto direct = evpi_direct(res, wtp);
    for (std::size_t w = 0; w < wtp.size(); ++w) {
        EXPECT_GE(c.evpi(w), 0.0);
        EXPECT_NEAR(c.evpi(w), direct(w), 1e-9);
        EXPECT_NEAR(c.evpi(w), c.expected_loss.row(w).minCoeff(), 1e-12);
        EXPECT_EQ(c.expected_loss(w, c.ceaf[w]), c.expected_loss.row(w).minCoeff());
    }
}

TEST(DecisionCurves, TiesSplitCredit) {
    auto res = small_result();
    const auto c = ceac_ceaf(res, {10});
    // NMB at 10: row 0 -> (0, 0, 10), row 1 -> (0, 8, 5), row 2 -> (0, -3, 10), row 3 -> (0, 0, 10)
    EXPECT_DOUBLE_EQ(c.ceac(0, 2), 0.75);
    EXPECT_DOUBLE_EQ(c.ceac(0, 1), 0.25);
    const auto z = ceac_ceaf(res, {0});
    EXPECT_DOUBLE_EQ(z.ceac(0, 0), 1.0);
    res.costs.col(1).setZero();
    res.effects.col(1).setZero();
    const auto tie = ceac_ceaf(res, {0});
    EXPECT_DOUBLE_EQ(tie.ceac(0, 0), 0.5);
    EXPECT_DOUBLE_EQ(tie.ceac(0, 1), 0.5);
}

TEST(DecisionCurves, SingleStrategyHasNoValueOfInformation) {
    PsaResult res;
    res.strategies = {"only"};
    res.costs = Eigen::MatrixXd::Random(20, 1);
    res.effects = Eigen::MatrixXd::Random(20, 1);
    const auto c = decision_curves(res, {0, 10, 100});
    EXPECT_EQ(c.evpi, Eigen::VectorXd::Zero(3));
    EXPECT_EQ(c.ceac, Eigen::MatrixXd::Ones(3, 1));
}

TEST(DecisionCurves, WtpGrid) {
    EXPECT_EQ(wtp_grid(0, 10, 5), (std::vector<double>{0, 5, 10}));
    EXPECT_EQ(wtp_grid(0, 0.3, 0.1).size(), 4u);
    EXPECT_THROW((void)wtp_grid(10, 0, 1), std::invalid_argument);
    EXPECT_THROW((void)wtp_grid(0, 10, 0), std::invalid_argument);
    EXPECT_THROW((void)wtp_grid(-1, 10, 1), std::invalid_argument);
}
