#include "spinwalls/errors.hpp"
#include "spinwalls/stable_pairs.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <set>

using namespace spinwalls;

namespace {

// Critical sigma for integer subbundle degrees, read straight off the two
// stability inequalities: sigma = deg_E/2 - d (section) or d - deg_E/2.
std::set<Rational> oracle_critical(const Rational& degE)
{
    std::set<Rational> out;
    const Rational half = degE / Rational(2);
    for (std::int64_t d = -50; d <= 50; ++d)
        for (const Rational s : {half - Rational(d), Rational(d) - half})
            if (Rational(0) < s && s < half)
                out.insert(s);
    return out;
}

std::vector<Rational> samples(const OpenInterval& c, int count)
{
    std::vector<Rational> out;
    for (int k = 1; k <= count; ++k)
        out.push_back(c.lo + (c.hi - c.lo) * Rational(k, count + 1));
    return out;
}

} // namespace

TEST(SigmaTau, Conversions)
{
    EXPECT_DOUBLE_EQ(sigma_from_tau(0, 3, 7), -3.5);
    EXPECT_DOUBLE_EQ(sigma_from_tau(4 * std::numbers::pi, 1, 0), 1.0);
    const double tau0 = 2 * std::numbers::pi * 7 / 3;
    EXPECT_NEAR(sigma_from_tau(tau0, 3, 7), 0.0, 1e-12);
    EXPECT_NEAR(tau_from_sigma(0, 3, 7), tau0, 1e-12);
    for (double s : {0.0, 0.25, 1.5, 3.5})
        EXPECT_NEAR(sigma_from_tau(tau_from_sigma(s, 2.5, 7), 2.5, 7), s, 1e-12);
    EXPECT_THROW(sigma_from_tau(1, 0, 1), ValidationError);
    EXPECT_THROW(tau_from_sigma(1, -1, 1), ValidationError);
}

TEST(SigmaStability, Examples)
{
    // sigma = 0: both branches are slope stability.
    for (std::int64_t d = -3; d <= 6; ++d)
        EXPECT_EQ(is_sigma_stable(d, true, 7, 0), is_sigma_stable(d, false, 7, 0));
    EXPECT_TRUE(is_sigma_stable(3, true, 7, 0));
    EXPECT_FALSE(is_sigma_stable(4, true, 7, 0));
    // deg_E = 7, sigma = 3, section: deg L < 1/2.
    EXPECT_TRUE(is_sigma_stable(0, true, 7, 3));
    EXPECT_TRUE(is_sigma_stable(-2, true, 7, 3));
    EXPECT_FALSE(is_sigma_stable(1, true, 7, 3));
    // Boundary deg L = deg_E/2 - sigma.
    EXPECT_FALSE(is_sigma_stable(Rational(1, 2), true, 7, 3));
    EXPECT_THROW(is_sigma_stable(0, true, 7, Rational(-1, 2)), ValidationError);
}

TEST(SigmaStability, PairNeedsEveryCandidate)
{
    const std::vector<SubbundleCandidate> cs{{0, true}, {1, false}, {5, false}};
    EXPECT_TRUE(is_pair_stable(cs, 7, 2));
    EXPECT_FALSE(is_pair_stable(cs, 7, 1));
    EXPECT_TRUE(is_pair_stable({}, 7, 1));
}

TEST(SigmaStability, MonotoneInSigma)
{
    for (std::int64_t degE = 0; degE <= 8; ++degE)
        for (std::int64_t d2 = -6; d2 <= 12; ++d2) {
            const Rational d(d2, 2);
            for (std::int64_t a = 0; a < 40; ++a) {
                const Rational s(a, 4), t(a + 1, 4);
                // Larger sigma weakens the free branch...
                if (is_sigma_stable(d, false, degE, s)) {
                    ASSERT_TRUE(is_sigma_stable(d, false, degE, t));
                }
                // ...and strengthens the section branch.
                if (is_sigma_stable(d, true, degE, t)) {
                    ASSERT_TRUE(is_sigma_stable(d, true, degE, s));
                }
            }
        }
}

TEST(NonemptyRange, Examples)
{
    const ClosedInterval a = nonempty_range(7);
    EXPECT_FALSE(a.empty);
    EXPECT_EQ(a.lo, Rational(0));
    EXPECT_EQ(a.hi, Rational(7, 2));
    const ClosedInterval b = nonempty_range(0);
    EXPECT_FALSE(b.empty);
    EXPECT_EQ(b.lo, b.hi);
    EXPECT_TRUE(nonempty_range(-2).empty);
}

TEST(FlipChain, DegreeSeven)
{
    const FlipChain c = flip_chain(7);
    const std::vector<OpenInterval> expected{
        {Rational(5, 2), Rational(7, 2)}, {Rational(3, 2), Rational(5, 2)}, {Rational(1, 2), Rational(3, 2)},
        {Rational(0), Rational(1, 2)}};
    EXPECT_EQ(c.chambers, expected);
    EXPECT_EQ(c.critical_values, (std::vector<Rational>{Rational(5, 2), Rational(3, 2), Rational(1, 2)}));
    EXPECT_EQ(c.max_chamber(), expected.front());
    EXPECT_EQ(c.zero_chamber(), expected.back());
    EXPECT_EQ(c.chamber_of(Rational(2)), 1u);
    EXPECT_FALSE(c.chamber_of(Rational(3, 2)));
    EXPECT_FALSE(c.chamber_of(Rational(4)));
}

TEST(FlipChain, SmallDegrees)
{
    const FlipChain one = flip_chain(1);
    ASSERT_EQ(one.chambers.size(), 1u);
    EXPECT_EQ(one.chambers[0], (OpenInterval{0, Rational(1, 2)}));
    EXPECT_TRUE(one.critical_values.empty());
    const FlipChain two = flip_chain(2);
    ASSERT_EQ(two.chambers.size(), 1u);
    EXPECT_EQ(two.chambers[0], (OpenInterval{0, 1}));
    EXPECT_TRUE(flip_chain(0).empty());
    EXPECT_TRUE(flip_chain(-3).empty());
}

TEST(FlipChain, TilesAndMatchesCriticalOracle)
{
    for (std::int64_t degE = 1; degE <= 30; ++degE) {
        const FlipChain c = flip_chain(degE);
        const Rational half(degE, 2);
        ASSERT_FALSE(c.empty());
        EXPECT_EQ(c.chambers.front().hi, half);
        EXPECT_EQ(c.chambers.back().lo, Rational(0));
        for (std::size_t i = 1; i < c.chambers.size(); ++i) {
            EXPECT_EQ(c.chambers[i].hi, c.chambers[i - 1].lo);
            EXPECT_LT(c.chambers[i].lo, c.chambers[i].hi);
        }
        const std::set<Rational> oracle = oracle_critical(degE);
        EXPECT_EQ(std::set<Rational>(c.critical_values.begin(), c.critical_values.end()), oracle) << degE;
    }
}

TEST(FlipChain, VerdictsConstantWithinChambers)
{
    for (std::int64_t degE = 1; degE <= 12; ++degE) {
        const FlipChain c = flip_chain(degE);
        for (const auto& chamber : c.chambers) {
            const auto pts = samples(chamber, 10);
            for (std::int64_t d = -4; d <= degE + 4; ++d)
                for (bool section : {true, false}) {
                    const bool first = is_sigma_stable(d, section, degE, pts.front());
                    for (const auto& s : pts)
                        ASSERT_EQ(is_sigma_stable(d, section, degE, s), first);
                }
        }
    }
}

TEST(FlipChain, NonIntegralDegreeUsesShiftedCriticalSet)
{
    const FlipChain c = flip_chain(Rational(9, 2));
    EXPECT_EQ(c.chambers.front().hi, Rational(9, 4));
    EXPECT_EQ(c.critical_values, (std::vector<Rational>{Rational(5, 4), Rational(1, 4)}));
    // Section-branch verdicts for integer degrees stay constant in chambers.
    for (const auto& chamber : c.chambers)
        for (std::int64_t d = -3; d <= 5; ++d) {
            const auto pts = samples(chamber, 10);
            const bool first = is_sigma_stable(d, true, Rational(9, 2), pts.front());
            for (const auto& s : pts)
                ASSERT_EQ(is_sigma_stable(d, true, Rational(9, 2), s), first);
        }
}
