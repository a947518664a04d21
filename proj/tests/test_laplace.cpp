#include <gtest/gtest.h>

#include <cmath>

#include "ntfc/laplace.hpp"
#include "support.hpp"

using namespace ntfc;
using test::max_diff;

namespace {

void expect_pass(const IdentityReport& r)
{
    EXPECT_TRUE(r.pass) << r.id << " max_abs_dev=" << r.max_abs_dev << " tol=" << r.tolerance << " " << r.note;
}

}  // namespace

TEST(Nlt, GeometricSeries)
{
    const Grid g(0, 0, 200);
    const auto e = nlt(test::constant(g, 1.0), cplx(0.5, 0), 200);
    EXPECT_TRUE(e.converged);
    EXPECT_NEAR(std::abs(e.value - 2.0), 0.0, 1e-13);
    EXPECT_EQ(nlt(test::constant(g, 0.0), cplx(0.7, 0.1), 200).value, cplx(0, 0));
}

TEST(Nlt, FiniteSupportIsExact)
{
    const Grid g(0, 0, 3);
    const Signal x = test::poly(g, "1,1");  // 2, 3, 4 at k = 1, 2, 3
    const cplx s(0.4, 0.3), r = 1.0 - s;
    const auto e = nlt(x, s, 3, TailPolicy::finite_support);
    EXPECT_NEAR(std::abs(e.value - (2.0 + 3.0 * r + 4.0 * r * r)), 0.0, 1e-15);
}

TEST(Nlt, ExponentialShift)
{
    const double lambda = 0.3;
    const Grid g(0, 0, 3000);
    const Signal y = test::sin10(g);
    const Signal x = make_signal_from_fn(g, [&](double k) { return std::pow(1 - lambda, k) * std::sin(10 * k); });
    const cplx s(0.85, 0.1);
    const cplx lhs = nlt(x, s, 3000).value;
    const cplx rhs = (1 - lambda) * nlt(y, s + lambda - lambda * s, 3000).value;
    EXPECT_LT(std::abs(lhs - rhs), 1e-9);
}

TEST(Nlt, LinearInSignal)
{
    const Grid g(0, 0, 500);
    const Signal x = test::random_signal(1, g), y = test::random_signal(2, g);
    const Signal z = pointwise(x, y, [](double u, double v) { return 3 * u - v; });
    const cplx s(0.9, 0.05);
    const cplx d = nlt(z, s, 500).value - (3.0 * nlt(x, s, 500).value - nlt(y, s, 500).value);
    EXPECT_LT(std::abs(d), 1e-12);
}

TEST(TransformRules, Examples)
{
    const Grid g(0, 3, 3000);
    const Signal one = test::constant(g, 1.0);
    expect_pass(check_transform_rule_gl(test::sin10(g), 0.0, 0.3, cplx(0.9, 0.1)));
    expect_pass(check_transform_rule_gl(one, -1.0, 0.0, cplx(0.9, 0.0)));
    expect_pass(check_transform_rule_gl(builtin_signal("geom:0.8", g), 0.5, 0.5, cplx(0.9, 0.0), 1.0, 1e-8));
    expect_pass(check_transform_rule_diff(one, RuleKind::integer, 1, 0.0, cplx(0.8, 0)));
    expect_pass(check_transform_rule_diff(one, RuleKind::caputo, 0.5, 0.0, cplx(0.8, 0)));
    expect_pass(check_transform_rule_diff(test::sin10(g), RuleKind::rl, 0.5, 0.25, cplx(0.95, 0)));
    expect_pass(check_transform_rule_diff(test::sin10(g), RuleKind::caputo, 2.3, -0.4, cplx(1.1, -0.2)));
}

TEST(TransformRules, OutsideRegionRejected)
{
    const Grid g(0, 3, 100);
    EXPECT_THROW(check_transform_rule_gl(test::sin10(g), 0.5, 0.5, cplx(0.2, 0)), RegionOfConvergence);
}

TEST(Convolve, Basics)
{
    const Grid g(0, 0, 32);
    const Signal y = test::random_signal(9, g);
    const Signal impulse = make_signal_from_fn(g, [](double k) { return k == 1 ? 1.0 : 0.0; });
    EXPECT_EQ(max_diff(convolve(impulse, y), y), 0.0);
    const Signal c = convolve(test::constant(g, 1.0), test::constant(g, 1.0));
    for (int m = 1; m <= 32; ++m) EXPECT_EQ(c.at(m), m);
    const Signal x = test::random_signal(10, g);
    EXPECT_LT(max_diff(convolve(x, y), convolve(y, x)), 1e-13);
}

TEST(Convolution, Commutation)
{
    const Grid g(0, 0, 48);
    const Signal x = test::random_signal(3, g), y = test::random_signal(4, g);
    expect_pass(check_convolution_commutation(x, y, 0.0, 0.5));
    EXPECT_LT(check_convolution_commutation(x, y, 0.0, 0.5).max_abs_dev, 1e-14);
    expect_pass(check_convolution_commutation(x, y, -0.5, -0.3));
    // decaying weight: keep the horizon short enough that outputs stay O(1e3)
    const Grid h(0, 0, 12);
    expect_pass(check_convolution_commutation(test::random_signal(3, h), test::random_signal(4, h), 0.5, 0.5));
}

TEST(Convolution, WithInitialConditions)
{
    const Grid g(0, 3, 32);
    const Signal x = test::random_signal(5, g), y = test::random_signal(6, g);
    ASSERT_NE(x.at(0), 0.0);
    for (double lambda : {0.0, 0.25, -0.6}) {
        expect_pass(check_convolution_with_ic(x, y, RuleKind::integer, 1, lambda));
        expect_pass(check_convolution_with_ic(x, y, RuleKind::integer, 3, lambda));
        expect_pass(check_convolution_with_ic(x, y, RuleKind::rl, 0.5, lambda));
        expect_pass(check_convolution_with_ic(x, y, RuleKind::rl, 2.4, lambda));
    }
    const auto ones = check_convolution_with_ic(test::constant(g, 1.0), test::constant(g, 1.0), RuleKind::integer, 1, 0.0);
    EXPECT_EQ(ones.max_abs_dev, 0.0);
}

TEST(MittagLeffler, ZeroRateIsOne)
{
    const Signal F = ml_function({0.6, 1.0, 0.0, 0.0}, 30);
    for (int m = 0; m <= 30; ++m) EXPECT_EQ(F.at(m), 1.0);
}

TEST(MittagLeffler, UnitOrderIsNablaExponential)
{
    const double mu = -0.4;
    const Signal F = ml_function({1.0, 1.0, mu, 0.0}, 40);
    double ref = 1.0;
    for (int m = 1; m <= 40; ++m) {
        ref /= 1 - mu;
        EXPECT_NEAR(F.at(m), ref, 1e-14 * std::max(1.0, ref));
    }
}

TEST(MittagLeffler, HighPrecisionValues)
{
    // series summed at 60 digits
    EXPECT_NEAR(ml_function({0.9, 1.0, -0.5, 0.0}, 50).at(50), 0.0070795428504480650699, 1e-15);
    EXPECT_NEAR(ml_function({0.5, 1.0, -0.2, 0.0}, 10).at(10), 0.55981614421765732300, 1e-15);
    EXPECT_NEAR(ml_function({0.7, 0.7, 0.2, 0.0}, 20).at(20), 5.9559991987058058541, 1e-13);
}

TEST(FdeSolve, ZeroRateKeepsTemperedConstant)
{
    const Grid g(0, 0, 30);
    const Weight w = builtin_weight("case4", g);
    const Signal x = fde_solve(0.4, 0.0, w, 1.5, 30);
    for (int m = 0; m <= 30; ++m) EXPECT_EQ(x.at(m), w.at(0) * 1.5 / w.at(m));
}

TEST(FdeSolve, NearUnitOrderApproachesRecursion)
{
    const Grid g(0, 0, 20);
    const Signal x = fde_solve(0.999, -0.5, unit_weight(g), 1.0, 20);
    double ref = 1.0;
    for (int m = 1; m <= 20; ++m) {
        ref /= 1.5;
        EXPECT_NEAR(x.at(m), ref, 1e-3);
    }
}

TEST(FdeSolve, MatchesMittagLeffler)
{
    const Grid g(0, 0, 50);
    const Weight w = builtin_weight("case1", g);
    const Signal x = fde_solve(0.5, -0.2, w, 2.0, 50);
    const Signal F = ml_function({0.5, 1.0, -0.2, 0.0}, 50);
    for (int m = 0; m <= 50; ++m) EXPECT_NEAR(w.at(m) * x.at(m) / 2.0, w.at(0) * F.at(m), 1e-10);
}

TEST(FdeSolve, Errors)
{
    const Grid g(0, 0, 10);
    EXPECT_THROW(fde_solve(1.2, 0.1, unit_weight(g), 1.0, 10), ConfigError);
    EXPECT_THROW(fde_solve(0.5, 1.0, unit_weight(g), 1.0, 10), SingularStep);
    EXPECT_THROW(fde_solve(0.5, 0.1, unit_weight(g), 1.0, 11), GridMismatch);
}
