#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include <gtest/gtest.h>

#include "cstm/cea.hpp"
#include "oracles.hpp"

using namespace cstm;

namespace {

const CeaRow &find(const std::vector<CeaRow> &rows, const std::string &name) {
    return *std::find_if(rows.begin(), rows.end(), [&](const CeaRow &r) { return r.name == name; });
}

std::vector<std::string> names_of(const std::vector<CeaRow> &rows) {
    std::vector<std::string> out;
    for (const auto &r : rows) {
        out.push_back(r.name);
    }
    return out;
}

// Largest |ICER - x| consistent with inputs rounded to the given precision.
std::pair<double, double> icer_range(double dc, double de, double cost_eps, double effect_eps) {
    return {(dc - 2 * cost_eps) / (de + 2 * effect_eps), (dc + 2 * cost_eps) / (de - 2 * effect_eps)};
}

} // namespace

TEST(Cea, PublishedTotals) {
    const auto rows = calculate_icers({114560, 211911, 194481, 282370},
                                      {19.142, 19.840, 20.480, 21.302},
                                      {"SoC", "A", "B", "AB"});
    EXPECT_EQ(names_of(rows), (std::vector<std::string>{"SoC", "B", "AB", "A"}));
    EXPECT_EQ(names_of(frontier(rows)), (std::vector<std::string>{"SoC", "B", "AB"}));
    EXPECT_EQ(find(rows, "A").status, DominanceStatus::D);
    EXPECT_TRUE(std::isnan(find(rows, "A").icer));
    EXPECT_TRUE(std::isnan(find(rows, "SoC").icer));

    const auto &b = find(rows, "B");
    EXPECT_DOUBLE_EQ(b.inc_cost, 79921);
    EXPECT_NEAR(b.inc_effect, 1.338, 1e-12);
    EXPECT_DOUBLE_EQ(b.icer, b.inc_cost / b.inc_effect);
    // The published ICERs were computed before rounding the totals, so they
    // only agree with the rounded inputs up to the rounding interval.
    const auto [b_lo, b_hi] = icer_range(79921, 1.338, 0.5, 0.0005);
    EXPECT_GE(59726, b_lo);
    EXPECT_LE(59726, b_hi);
    EXPECT_GE(b.icer, b_lo);
    EXPECT_LE(b.icer, b_hi);

    const auto &ab = find(rows, "AB");
    const auto [ab_lo, ab_hi] = icer_range(87889, 0.822, 0.5, 0.0005);
    EXPECT_GE(106927, ab_lo);
    EXPECT_LE(106927, ab_hi);
    EXPECT_GE(ab.icer, ab_lo);
    EXPECT_LE(ab.icer, ab_hi);
}

TEST(Cea, ExtendedDominance) {
    const auto rows = calculate_icers({0, 10, 30}, {0, 1, 4}, {"lo", "mid", "hi"});
    EXPECT_EQ(find(rows, "mid").status, DominanceStatus::ED);
    EXPECT_EQ(names_of(frontier(rows)), (std::vector<std::string>{"lo", "hi"}));
    EXPECT_DOUBLE_EQ(find(rows, "hi").icer, 7.5);
    for (int wtp = 0; wtp <= 20; ++wtp) {
        EXPECT_NE(oracle::best_by_nmb({0, 10, 30}, {0, 1, 4}, wtp), 1) << wtp;
    }
}

TEST(Cea, ExtendedDominanceIsIterated) {
    // Removing c exposes b as extended dominated too.
    const auto rows = calculate_icers({0, 10, 21, 40}, {0, 1, 2, 5}, {"a", "b", "c", "d"});
    EXPECT_EQ(names_of(frontier(rows)), (std::vector<std::string>{"a", "d"}));
    EXPECT_EQ(find(rows, "b").status, DominanceStatus::ED);
    EXPECT_EQ(find(rows, "c").status, DominanceStatus::ED);
}

TEST(Cea, EqualIcersCountAsExtendedDominance) {
    const auto rows = calculate_icers({0, 10, 20}, {0, 1, 2}, {"a", "b", "c"});
    EXPECT_EQ(find(rows, "b").status, DominanceStatus::ED);
    EXPECT_DOUBLE_EQ(find(rows, "c").icer, 10.0);
}

TEST(Cea, SingleStrategy) {
    const auto rows = calculate_icers({5}, {1}, {"only"});
    ASSERT_EQ(rows.size(), 1u);
    EXPECT_EQ(rows[0].status, DominanceStatus::ND);
    EXPECT_TRUE(std::isnan(rows[0].icer));
    EXPECT_TRUE(std::isnan(rows[0].inc_cost));
}

TEST(Cea, TiesAndStrongDominance) {
    // Same cost, less effect: dominated. Identical pairs keep the first listed.
    const auto rows = calculate_icers({10, 10, 0, 0}, {2, 1, 0, 0}, {"x", "y", "p", "q"});
    EXPECT_EQ(names_of(frontier(rows)), (std::vector<std::string>{"p", "x"}));
    EXPECT_EQ(find(rows, "y").status, DominanceStatus::D);
    EXPECT_EQ(find(rows, "q").status, DominanceStatus::D);
    // More costly and less effective.
    const auto r2 = calculate_icers({0, 5}, {1, 0.5}, {"cheap", "worse"});
    EXPECT_EQ(find(r2, "worse").status, DominanceStatus::D);
}

TEST(Cea, InvariantToInputOrder) {
    std::vector<double> c{114560, 211911, 194481, 282370, 150000, 400000};
    std::vector<double> e{19.142, 19.840, 20.480, 21.302, 19.5, 21.4};
    std::vector<std::string> n{"SoC", "A", "B", "AB", "X", "Y"};
    const auto reference = calculate_icers(c, e, n);
    std::vector<int> idx(c.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::mt19937_64 rng(3);
    for (int rep = 0; rep < 20; ++rep) {
        std::shuffle(idx.begin(), idx.end(), rng);
        std::vector<double> c2, e2;
        std::vector<std::string> n2;
        for (int i : idx) {
            c2.push_back(c[i]);
            e2.push_back(e[i]);
            n2.push_back(n[i]);
        }
        const auto rows = calculate_icers(c2, e2, n2);
        EXPECT_EQ(names_of(frontier(rows)), names_of(frontier(reference)));
        for (const auto &r : reference) {
            EXPECT_EQ(find(rows, r.name).status, r.status) << r.name;
        }
    }
}

TEST(Cea, FrontierAgreesWithNetMonetaryBenefit) {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> cost(0, 100), effect(0, 10);
    for (int rep = 0; rep < 200; ++rep) {
        const int k = 2 + rep % 6;
        std::vector<double> c(k), e(k);
        std::vector<std::string> n(k);
        for (int i = 0; i < k; ++i) {
            c[i] = std::round(cost(rng));
            e[i] = std::round(effect(rng) * 10) / 10;
            n[i] = "s" + std::to_string(i);
        }
        const auto rows = calculate_icers(c, e, n);
        const auto front = frontier(rows);
        for (double wtp = 0; wtp <= 200; wtp += 0.37) {
            const int best = oracle::best_by_nmb(c, e, wtp);
            const double best_nmb = e[best] * wtp - c[best];
            double front_nmb = -INFINITY;
            for (const auto &r : front) {
                front_nmb = std::max(front_nmb, r.effect * wtp - r.cost);
            }
            EXPECT_NEAR(front_nmb, best_nmb, 1e-9) << "rep " << rep << " wtp " << wtp;
        }
        for (std::size_t i = 1; i < front.size(); ++i) {
            EXPECT_GT(front[i].cost, front[i - 1].cost);
            EXPECT_GT(front[i].effect, front[i - 1].effect);
            if (i > 1) {
                EXPECT_GT(front[i].icer, front[i - 1].icer);
            }
        }
    }
}

TEST(Cea, RejectsBadInput) {
    EXPECT_THROW((void)calculate_icers({NAN}, {1}, {"a"}), std::invalid_argument);
    EXPECT_THROW((void)calculate_icers({1}, {INFINITY}, {"a"}), std::invalid_argument);
    EXPECT_THROW((void)calculate_icers({1, 2}, {1}, {"a", "b"}), std::invalid_argument);
    EXPECT_THROW((void)calculate_icers({}, {}, {}), std::invalid_argument);
    EXPECT_THROW((void)calculate_icers({1, 2}, {1, 2}, {"a", "a"}), std::invalid_argument);
}

TEST(Cea, StatusNames) {
    EXPECT_EQ(to_string(DominanceStatus::ND), "ND");
    EXPECT_EQ(to_string(DominanceStatus::D), "D");
    EXPECT_EQ(to_string(DominanceStatus::ED), "ED");
}
