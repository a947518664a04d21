#include <gtest/gtest.h>

#include <cmath>

#include "ntfc/operators.hpp"
#include "ntfc/repro.hpp"
#include "support.hpp"

using namespace ntfc;
using test::max_diff;

namespace {

// Untempered GL straight from the Gamma-ratio coefficients in long double.
double naive_gl(const Signal& x, double alpha, int m)
{
    long double s = 0;
    for (int i = 0; i <= m - 1; ++i) {
        long double c = std::tgamma(static_cast<long double>(i) - alpha) /
                        (std::tgamma(static_cast<long double>(i) + 1) * std::tgamma(static_cast<long double>(-alpha)));
        s += c * x.at(m - i);
    }
    return static_cast<double>(s);
}

}  // namespace

TEST(NablaN, PolynomialsAndSin)
{
    const Grid g(0, 3, 10);
    const Signal d1 = nabla_n(test::poly(g, "0,1"), 1);
    const Signal d2 = nabla_n(test::poly(g, "0,0,1"), 2);
    for (int m = 1; m <= 10; ++m) {
        EXPECT_DOUBLE_EQ(d1.at(m), 1.0);
        EXPECT_DOUBLE_EQ(d2.at(m), 2.0);
    }
    EXPECT_NEAR(nabla_n(test::sin10(g), 1).at(1), -0.5440211108893698, 1e-15);
}

TEST(NablaN, NeedsHistory) { EXPECT_THROW(nabla_n(test::sin10(Grid(0, 1, 5)), 2), InsufficientHistory); }

TEST(NablaTempered, ExponentialWeightOnConstant)
{
    const Grid g(0, 1, 6);
    const Signal y = nabla_n_tempered(test::constant(g, 1.0), 1, make_exponential_weight(g, 0.5));
    for (int m = 1; m <= 6; ++m) EXPECT_DOUBLE_EQ(y.at(m), -1.0);
}

TEST(NablaTempered, UnitWeightAndScaling)
{
    const Grid g(0, 3, 12);
    const Signal x = test::random_signal(5, g);
    EXPECT_LT(max_diff(nabla_n_tempered(x, 3, unit_weight(g)), nabla_n(x, 3)), 1e-15);
    const Weight w = builtin_weight("case4", g);
    EXPECT_LT(max_diff(nabla_n_tempered(x, 2, scale_weight(w, 2.0)), nabla_n_tempered(x, 2, w)), 1e-15);
}

TEST(Gl, OrderZeroIsIdentity)
{
    const Grid g(0, 0, 30);
    const Signal x = test::sin10(g);
    EXPECT_EQ(max_diff(gl_tempered(x, 0.0, builtin_weight("case2", g)), x), 0.0);
}

TEST(Gl, OrderMinusOneIsRunningSum)
{
    const Grid g(2.5, 0, 20);
    const Signal y = gl_tempered(test::constant(g, 1.0), -1.0, unit_weight(g));
    for (int m = 1; m <= 20; ++m) EXPECT_DOUBLE_EQ(y.at(m), m);
}

TEST(Gl, MatchesHighPrecisionSums)
{
    // direct sums at 40 digits
    const Grid g(0, 0, 10);
    const Signal x = test::sin10(g);
    EXPECT_NEAR(gl_tempered(x, 0.5, unit_weight(g)).at(5), -0.54723573445835617572, 1e-15);
    EXPECT_NEAR(gl_tempered(x, -0.7, unit_weight(g)).at(9), 0.44027661552635488333, 1e-15);
    EXPECT_NEAR(gl_tempered(x, 0.3, builtin_weight("case1", g)).at(6), -0.27379463258203869564, 1e-15);
}

TEST(Gl, UntemperedMatchesGammaCoefficients)
{
    const Grid g(0, 0, 16);
    const Signal x = test::random_signal(9, g);
    for (double alpha : {0.4, 1.3, -0.6, -1.8}) {
        const Signal y = gl_tempered(x, alpha, unit_weight(g));
        for (int m = 1; m <= 16; ++m) EXPECT_NEAR(y.at(m), naive_gl(x, alpha, m), 1e-13) << alpha << " " << m;
    }
}

TEST(Gl, HalfGeometricWeightDiverges)
{
    const Grid g(0, 0, 100);
    const Signal x = test::sin10(g);
    const Weight w = builtin_weight("halfgeom", g);
    EXPECT_GT(std::abs(gl_tempered(x, 0.5, w).at(100)), 1e6);
    EXPECT_GT(std::abs(gl_tempered(x, -0.5, w).at(100)), 1e6);
}

TEST(Rl, EqualsGlOnFourCases)
{
    const auto t = repro::error_table();
    for (const auto& row : t.rows) {
        EXPECT_LE(std::abs(row[1]), 5e-15);
        EXPECT_LE(std::abs(row[2]), 5e-15);
    }
}

TEST(Rl, HalfOrderOfRisingPowerIsOne)
{
    const Grid g(0, 1, 12);
    const Signal x = make_signal_from_fn(g, [](double k) { return k <= 0 ? 0.0 : nabla_power(static_cast<long>(k), 0.5); });
    const Signal y = rl_tempered(x, 0.5, unit_weight(g));
    for (int m = 1; m <= 12; ++m) EXPECT_NEAR(y.at(m), 1.0, 1e-14);
}

TEST(Rl, RejectsIntegerOrderAndShortHistory)
{
    const Grid g(0, 1, 8);
    EXPECT_THROW(rl_tempered(test::sin10(g), 1.0, unit_weight(g)), IntegerOrder);
    EXPECT_THROW(caputo_tempered(test::sin10(g), 1.5, unit_weight(g)), InsufficientHistory);
}

TEST(Caputo, KillsConstants)
{
    const Grid g(0, 1, 30);
    for (double alpha : {0.2, 0.5, 0.9}) {
        const Signal y = caputo_tempered(test::constant(g, 3.0), alpha, unit_weight(g));
        for (int m = 1; m <= 30; ++m) EXPECT_EQ(y.at(m), 0.0);
    }
}

TEST(Operators, ScaleInvariance)
{
    const Grid g(0, 2, 24);
    const Signal x = test::random_signal(17, g);
    const Weight w = builtin_weight("case1", g);
    for (OpKind k : {OpKind::GL, OpKind::RL, OpKind::Caputo}) {
        const Signal p = apply({k, 1.4, w}, x);
        const Signal q = apply({k, 1.4, scale_weight(w, -3.7)}, x);
        const Signal r = apply({k, 1.4, scale_weight(w, 4.0)}, x);
        EXPECT_LT(max_diff(p, q), 1e-13);
        EXPECT_EQ(max_diff(p, r), 0.0);
    }
}

TEST(Operators, Linearity)
{
    const Grid g(0, 2, 24);
    const Signal x = test::random_signal(1, g), y = test::random_signal(2, g);
    const Signal comb = pointwise(x, y, [](double u, double v) { return 2.5 * u - 0.75 * v; });
    const Weight w = builtin_weight("case4", g);
    for (OpKind k : {OpKind::GL, OpKind::RL, OpKind::Caputo}) {
        const Signal lhs = apply({k, 1.6, w}, comb);
        const Signal px = apply({k, 1.6, w}, x), py = apply({k, 1.6, w}, y);
        const Signal rhs = pointwise(px, py, [](double u, double v) { return 2.5 * u - 0.75 * v; });
        EXPECT_LT(max_diff(lhs, rhs), 1e-13);
    }
}

TEST(Defect, VanishesFromLagN)
{
    const Grid g(0, 3, 20);
    const Signal x = test::random_signal(23, g);
    const Weight w = builtin_weight("case2", g);
    for (int n = 1; n <= 3; ++n) {
        const Signal d = gl_integer_vs_nabla_defect(x, n, w);
        for (int m = n + 1; m <= 20; ++m) EXPECT_NEAR(d.at(m), 0.0, 1e-12);
        EXPECT_LT(max_diff(d, gl_integer_boundary_terms(x, n, w)), 1e-12);
    }
}

TEST(Defect, FirstPointHandValues)
{
    const Grid g(0, 2, 5);
    const Signal x = test::poly(g, "0.75,1");
    // n = 1: GL keeps only x(a+1), the difference subtracts x(a), so the defect is +x(a)
    EXPECT_DOUBLE_EQ(gl_integer_vs_nabla_defect(x, 1, unit_weight(g)).at(1), x.at(0));
    // n = 2 on a constant: GL gives 1, the difference 0
    EXPECT_DOUBLE_EQ(gl_integer_vs_nabla_defect(test::constant(g, 1.0), 2, unit_weight(g)).at(1), 1.0);
}
