#include <gtest/gtest.h>

#include <cmath>

#include "ntfc/taylor.hpp"
#include "support.hpp"

using namespace ntfc;
using test::max_diff;

TEST(TaylorInitial, PolynomialHasNoRemainder)
{
    const Grid g(0, 4, 20);
    const auto e = taylor_initial(test::poly(g, "1,-2,0.5,0.25"), 3);
    for (int m = 0; m <= 20; ++m) EXPECT_NEAR(e.remainder.at(m), 0.0, 1e-12);
    EXPECT_LT(max_diff(e.reconstruct(), test::poly(Grid(0, 0, 20), "1,-2,0.5,0.25"), 0), 1e-12);
}

TEST(TaylorInitial, SinReconstruction)
{
    const Grid g(0, 4, 20);
    const Signal x = test::sin10(g);
    EXPECT_LT(max_diff(taylor_initial(x, 3).reconstruct(), restrict_signal(x, Grid(0, 0, 20)), 0), 1e-12);
}

TEST(TaylorInitial, DegreeZeroTelescopes)
{
    const Grid g(0, 1, 10);
    const Signal x = test::random_signal(2, g);
    const auto e = taylor_initial(x, 0);
    double run = x.at(0);
    for (int m = 1; m <= 10; ++m) {
        run += x.at(m) - x.at(m - 1);
        EXPECT_NEAR(e.partial.at(m) + e.remainder.at(m), run, 1e-14);
        EXPECT_EQ(e.partial.at(m), x.at(0));
    }
}

TEST(TaylorOperator, InitialFormsMatchDirect)
{
    const Grid g(0, 6, 16);
    const Signal x = test::sin10(g);
    const Weight w = builtin_weight("case1", g);
    for (auto spec : {OperatorSpec{OpKind::GL, 0.5, w}, OperatorSpec{OpKind::GL, -1.3, w}, OperatorSpec{OpKind::RL, 0.5, w},
                      OperatorSpec{OpKind::Caputo, 1.5, w}, OperatorSpec{OpKind::IntegerNabla, 2, w}})
        EXPECT_LT(max_diff(tempered_op_taylor_initial(x, spec, 5), apply(spec, x)), 1e-10) << to_string(spec.kind);
}

TEST(TaylorOperator, GlSeriesAloneOnPolynomial)
{
    const Grid g(0, 4, 16);
    const Signal x = test::poly(g, "3,1,-1");
    const OperatorSpec spec{OpKind::GL, 0.6, unit_weight(g)};
    EXPECT_LT(max_diff(tempered_op_taylor_initial(x, spec, 3, false), apply(spec, x)), 1e-12);
}

TEST(TaylorOperator, CaputoSeriesVanishesWithZeroHistoryDifferences)
{
    // x vanishes up to a, so every initial difference is zero and only the remainder contributes
    const Grid g(0, 4, 12);
    const Signal x = make_signal_from_fn(g, [](double k) { return k <= 0 ? 0.0 : std::sin(10 * k); });
    const OperatorSpec spec{OpKind::Caputo, 0.5, unit_weight(g)};
    const Signal series = tempered_op_taylor_initial(x, spec, 3, false);
    for (int m = 1; m <= 12; ++m) EXPECT_EQ(series.at(m), 0.0);
}

TEST(TaylorSeries, ReconstructsSignalAtOrderZero)
{
    const Grid g(0, 14, 10);
    const auto rep = taylor_series_initial(test::poly(g, "1,1,1"), {OpKind::GL, 0.0, unit_weight(g)}, 6);
    EXPECT_LT(rep.deviations.back(), 1e-12);
}

TEST(TaylorSeries, GeometricSignalConverges)
{
    const Grid g(0, 14, 10);
    const auto rep = taylor_series_initial(builtin_signal("geom:2", g), {OpKind::GL, 0.5, unit_weight(g)}, 12);
    EXPECT_TRUE(rep.monotone_tail);
    for (std::size_t i = 1; i < rep.deviations.size(); ++i) EXPECT_LE(rep.deviations[i], rep.deviations[i - 1]);
}

TEST(TaylorCurrent, MatchesDirect)
{
    const Grid g(0, 3, 24);
    const Signal x = test::random_signal(44, g);
    const Weight w = builtin_weight("case3", g);
    for (double alpha : {0.2, 0.7}) {
        const OperatorSpec spec{OpKind::GL, alpha, w};
        EXPECT_LT(max_diff(tempered_op_taylor_current(x, spec), apply(spec, x)), 1e-11);
    }
    const OperatorSpec c{OpKind::Caputo, 1.3, w};
    EXPECT_LT(max_diff(tempered_op_taylor_current(x, c), apply(c, x)), 1e-10);
    const OperatorSpec d{OpKind::IntegerNabla, 2, w};
    EXPECT_LT(max_diff(tempered_op_taylor_current(x, d), apply(d, x)), 1e-11);
}

TEST(TaylorCurrent, FirstPointIsScaledSample)
{
    const Grid g(0, 1, 4);
    const Signal x = test::sin10(g);
    const Signal y = tempered_op_taylor_current(x, {OpKind::GL, 0.5, unit_weight(g)});
    EXPECT_NEAR(y.at(1), x.at(1), 1e-15);
}

TEST(TaylorCurrent, RoundTripAllPairs)
{
    const Grid g(0, 16, 16);
    const Signal y = test::random_signal(16, g);
    double worst = 0.0;
    for (int k = -16; k <= 16; ++k)
        for (int j = -16; j <= k; ++j) worst = std::max(worst, std::abs(taylor_current_value(y, j, k) - y.at(j)));
    EXPECT_LT(worst, 1e-10);
}

TEST(TaylorFuture, MatchesDirect)
{
    const Grid g(0, 6, 12);
    const Signal x = test::sin10(g);
    const OperatorSpec gl{OpKind::GL, 0.5, unit_weight(g)};
    EXPECT_LT(max_diff(tempered_op_taylor_future(x, gl, 4), apply(gl, x)), 1e-10);
    const Grid h(0, 3, 8);
    const Signal sq = test::poly(h, "0,0,1");
    const OperatorSpec cap{OpKind::Caputo, 0.5, unit_weight(h)};
    EXPECT_LT(max_diff(tempered_op_taylor_future(sq, cap, 1), apply(cap, sq)), 1e-12);
    const OperatorSpec rl{OpKind::RL, 1.5, builtin_weight("case4", g)};
    EXPECT_LT(max_diff(tempered_op_taylor_future(x, rl, 3), apply(rl, x)), 1e-10);
}

TEST(Taylor, DegreeErrors)
{
    const Grid g(0, 4, 8);
    const Signal x = test::sin10(g);
    EXPECT_THROW(tempered_op_taylor_initial(x, {OpKind::Caputo, 1.5, unit_weight(g)}, 2), DegreeTooLow);
    EXPECT_THROW(tempered_op_taylor_initial(x, {OpKind::GL, 0.5, unit_weight(g)}, 6), InsufficientHistory);
}
