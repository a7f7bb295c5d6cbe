#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "cstm/hazards.hpp"

using namespace cstm;

TEST(Rate, RejectsNegativeAndNonFinite) {
    EXPECT_THROW((void)Rate{-1e-9}, std::invalid_argument);
    EXPECT_THROW((void)Rate{std::nan("")}, std::invalid_argument);
    EXPECT_THROW((void)Rate{INFINITY}, std::invalid_argument);
    EXPECT_NO_THROW((void)Rate{0.0});
}

TEST(Probability, RejectsOutsideUnitInterval) {
    EXPECT_THROW((void)Probability{-0.01}, std::invalid_argument);
    EXPECT_THROW((void)Probability{1.01}, std::invalid_argument);
    EXPECT_THROW((void)Probability{std::nan("")}, std::invalid_argument);
    EXPECT_NO_THROW((void)Probability{1.0});
}

TEST(ProbFromRate, ZeroHazardGivesZero) {
    EXPECT_EQ(prob_from_rate(Rate(0.0), 1.0).value(), 0.0);
}

TEST(ProbFromRate, YoungAdultMortality) {
    // 1 - exp(-0.001014)
    EXPECT_NEAR(prob_from_rate(Rate(0.00101400), 1.0).value(), 0.001013486, 1e-9);
}

TEST(ProbFromRate, HalfLife) {
    EXPECT_NEAR(prob_from_rate(Rate(std::log(2.0)), 1.0).value(), 0.5, 1e-15);
}

TEST(ProbFromRate, ScalesWithCycleLength) {
    EXPECT_NEAR(prob_from_rate(Rate(0.1), 0.5).value(), 1 - std::exp(-0.05), 1e-15);
    EXPECT_THROW((void)prob_from_rate(Rate(0.1), 0.0), std::invalid_argument);
}

TEST(RateFromProb, Examples) {
    EXPECT_EQ(rate_from_prob(Probability(0.0), 1.0).value(), 0.0);
    EXPECT_NEAR(rate_from_prob(Probability(0.5), 1.0).value(), 0.6931472, 1e-7);
    EXPECT_NEAR(rate_from_prob(Probability(0.001013486), 1.0).value(), 0.00101400, 1e-9);
}

TEST(RateFromProb, CertainEventHasNoRate) {
    EXPECT_THROW((void)rate_from_prob(Probability(1.0), 1.0), std::invalid_argument);
}

TEST(RateFromProb, RoundTripsThroughProbFromRate) {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(0.0, 0.999);
    for (int i = 0; i < 1000; ++i) {
        const double p = u(rng);
        for (double cl : {1.0, 0.25, 3.0}) {
            const auto back = prob_from_rate(rate_from_prob(Probability(p), cl), cl).value();
            EXPECT_NEAR(back, p, 1e-12);
        }
    }
}

TEST(ApplyHazardRatio, IdentityAndMortalityMultipliers) {
    const Rate mu(0.00101400);
    EXPECT_EQ(apply_hazard_ratio(mu, 1.0), mu);
    EXPECT_NEAR(prob_from_rate(apply_hazard_ratio(mu, 3.0), 1.0).value(), 0.003037378, 1e-9);
    EXPECT_NEAR(prob_from_rate(apply_hazard_ratio(mu, 10.0), 1.0).value(), 0.010088764, 1e-9);
}

TEST(ApplyHazardRatio, RejectsNonPositive) {
    EXPECT_THROW((void)apply_hazard_ratio(Rate(0.1), 0.0), std::invalid_argument);
    EXPECT_THROW((void)apply_hazard_ratio(Rate(0.1), -2.0), std::invalid_argument);
}

TEST(WeibullCycleRates, ShapeOneIsExponential) {
    const auto r = weibull_cycle_rates(0.3, 1.0, 12);
    ASSERT_EQ(r.size(), 12u);
    for (auto x : r) {
        EXPECT_NEAR(x.value(), 0.3, 1e-15);
    }
}

TEST(WeibullCycleRates, FirstElementAtBaseCase) {
    const auto r = weibull_cycle_rates(0.08, 1.10, 75);
    EXPECT_NEAR(r[0].value(), std::pow(0.08, 1.1), 1e-15);
    EXPECT_NEAR(r[0].value(), 0.0621440, 1e-7);
}

TEST(WeibullCycleRates, ElementMatchesDifferenceOfCumulativeHazards) {
    const double lambda = 0.08, gamma = 1.1;
    const auto r = weibull_cycle_rates(lambda, gamma, 75);
    for (int tau = 1; tau <= 75; ++tau) {
        const double expected =
            std::pow(lambda * tau, gamma) - std::pow(lambda * (tau - 1), gamma);
        EXPECT_NEAR(r[tau - 1].value(), expected, 1e-15);
    }
}

TEST(WeibullCycleRates, Telescopes) {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> scale(0.01, 0.5), shape(0.3, 3.0);
    std::uniform_int_distribution<int> count(1, 200);
    for (int k = 0; k < 200; ++k) {
        const double l = scale(rng), g = shape(rng);
        const int n = count(rng);
        const auto r = weibull_cycle_rates(l, g, n);
        double sum = 0.0;
        for (int tau = 1; tau <= n; ++tau) {
            sum += r[tau - 1].value();
            EXPECT_NEAR(sum, weibull_cumulative_hazard(l, g, tau), 1e-12);
        }
        EXPECT_NEAR(sum, std::pow(l * n, g), 1e-12);
    }
}

TEST(WeibullCycleRates, MonotoneByShape) {
    const auto inc = weibull_cycle_rates(0.1, 1.5, 30);
    const auto dec = weibull_cycle_rates(0.1, 0.7, 30);
    for (std::size_t i = 1; i < inc.size(); ++i) {
        EXPECT_GT(inc[i].value(), inc[i - 1].value());
        EXPECT_LT(dec[i].value(), dec[i - 1].value());
    }
}

TEST(WeibullCycleRates, RejectsBadArguments) {
    EXPECT_THROW((void)weibull_cycle_rates(0.0, 1.0, 3), std::invalid_argument);
    EXPECT_THROW((void)weibull_cycle_rates(0.1, -1.0, 3), std::invalid_argument);
    EXPECT_THROW((void)weibull_cycle_rates(0.1, 1.0, 0), std::invalid_argument);
}

TEST(WeibullCycleProbs, FirstElementAtBaseCase) {
    const auto p = weibull_cycle_probs(0.08, 1.10, 75, 1.0);
    EXPECT_NEAR(p[0].value(), 1 - std::exp(-std::pow(0.08, 1.1)), 1e-15);
    EXPECT_NEAR(p[0].value(), 0.0602524, 1e-7);
}

TEST(WeibullCycleProbs, ShapeOneIsConstant) {
    for (auto p : weibull_cycle_probs(0.2, 1.0, 10, 1.0)) {
        EXPECT_NEAR(p.value(), 1 - std::exp(-0.2), 1e-15);
    }
}

TEST(WeibullCycleProbs, WithinUnitInterval) {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> scale(0.001, 0.5), shape(0.2, 4.0);
    for (int k = 0; k < 100; ++k) {
        for (auto p : weibull_cycle_probs(scale(rng), shape(rng), 50, 1.0)) {
            EXPECT_GT(p.value(), 0.0);
            EXPECT_LE(p.value(), 1.0);
        }
    }
}

TEST(ProbFromRate, MonotoneAndBelowOne) {
    double prev = -1.0;
    for (double r = 0.0; r < 30.0; r += 0.05) {
        const double p = prob_from_rate(Rate(r), 1.0).value();
        EXPECT_GT(p, prev);
        EXPECT_LT(p, 1.0);
        prev = p;
    }
}
