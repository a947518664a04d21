#include <gtest/gtest.h>

#include <cmath>

#include "ntfc/identities.hpp"
#include "support.hpp"

using namespace ntfc;

namespace {

void expect_pass(const IdentityReport& r)
{
    EXPECT_TRUE(r.pass) << r.id << " max_abs_dev=" << r.max_abs_dev << " tol=" << r.tolerance << " " << r.note;
}

}  // namespace

TEST(Equivalence, GlRlOnRandomInstances)
{
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        suite::Rng rng(seed);
        const Grid g(rng.uniform(-3, 3), 3, rng.integer(8, 64));
        const Signal x = suite::random_signal(rng, g);
        const Weight w = suite::random_weight(rng, g);
        const double alpha = suite::random_order(rng, 0.0, 2.0);
        expect_pass(check_gl_rl_equivalence(x, alpha, w));
        expect_pass(check_rl_caputo_correction(x, alpha, w));
        expect_pass(check_sum_composition(x, alpha, w));
    }
}

TEST(Equivalence, FlagsPerturbedRl)
{
    suite::Options opt;
    opt.only = "gl_rl_equivalence";
    opt.instances = 5;
    opt.perturb = 1e-6;
    const auto res = suite::run_suite(opt);
    ASSERT_NE(res.find("gl_rl_equivalence"), nullptr);
    EXPECT_FALSE(res.find("gl_rl_equivalence")->report.pass);
    EXPECT_FALSE(res.all_pass());
}

TEST(DifferenceOfSum, Examples)
{
    const Grid g(0, 3, 32);
    expect_pass(check_difference_of_sum(test::random_signal(4, g), 0.5, builtin_weight("case4", g)));
    EXPECT_EQ(check_difference_of_sum(test::constant(g, 0.0), 0.5, builtin_weight("case4", g)).max_abs_dev, 0.0);
}

TEST(DifferenceOfSum, DecayingExponentialWeightShortHorizon)
{
    // w = 0.5^(k-a) makes outputs grow like 2^k, so the absolute tolerance
    // is only meaningful on a short horizon
    const Grid g(0, 3, 16);
    const auto r = check_difference_of_sum(test::sin10(g), 1.5, make_exponential_weight(g, 0.5), 1e-10);
    expect_pass(r);
}

TEST(SumOfDifference, Examples)
{
    const Grid g(0, 3, 24);
    const auto c = check_sum_of_difference(test::constant(g, 1.0), 0.5, unit_weight(g), FracKind::Caputo);
    EXPECT_LT(c.max_abs_dev, 1e-15);
    expect_pass(check_sum_of_difference(test::random_signal(8, g), 0.5, builtin_weight("case2", g), FracKind::RL));
    expect_pass(check_sum_of_difference(test::poly(Grid(0, 3, 8), "0,1"), 1.5, unit_weight(Grid(0, 3, 8)),
                                        FracKind::Caputo));
}

TEST(MixedComposition, AllFormsOnTheirWindows)
{
    const Grid g(0.5, 3, 30);
    const Signal x = test::random_signal(12, g);
    const Weight w = builtin_weight("case1", g);
    for (int n : {1, 2})
        for (double beta : {0.3, 0.8})
            for (auto f : {MixedForm::rl_of_caputo, MixedForm::rl_of_caputo_swapped, MixedForm::caputo_of_rl,
                           MixedForm::caputo_of_rl_swapped})
                expect_pass(check_mixed_composition(x, n, beta, w, f));
}

TEST(MixedComposition, WindowStarts)
{
    EXPECT_EQ(mixed_window_start(MixedForm::rl_of_caputo, 2, 1), 2);
    EXPECT_EQ(mixed_window_start(MixedForm::rl_of_caputo_swapped, 2, 2), 2);
    EXPECT_EQ(mixed_window_start(MixedForm::caputo_of_rl, 2, 1), 1);
    EXPECT_EQ(mixed_window_start(MixedForm::caputo_of_rl_swapped, 2, 2), 1);
}

TEST(MixedComposition, EarlyPointsCarryBoundaryTerms)
{
    // RL^{n-beta} C^{beta} misses nabla^{n,w} x at k = a+1 when n - m >= 1
    const Grid g(0, 3, 10);
    const Signal x = test::random_signal(6, g);
    const Weight w = unit_weight(g);
    const Signal lhs = rl_tempered(zero_extend(caputo_tempered(x, 0.4, w), 3), 1.6, w);
    const Signal rhs = nabla_n_tempered(x, 2, w);
    EXPECT_GT(std::abs(lhs.at(1) - rhs.at(1)), 1e-6);
    EXPECT_LT(std::abs(lhs.at(2) - rhs.at(2)), 1e-12);
}

TEST(TaylorRemainder, Examples)
{
    const Grid g(0, 3, 20);
    expect_pass(check_taylor_remainder_forms(test::sin10(g), 0.5, builtin_weight("case1", g)));
    expect_pass(check_taylor_remainder_forms(test::poly(g, "0,0,1"), 1.7, unit_weight(g), 1));
    const auto lin = check_taylor_remainder_forms(test::poly(g, "2,-1"), 1.7, unit_weight(g), 0);
    EXPECT_LT(lin.max_abs_dev, 1e-12);
}

TEST(Defect, CheckerPasses)
{
    const Grid g(0, 3, 20);
    for (int n = 1; n <= 3; ++n) expect_pass(check_gl_integer_defect(test::random_signal(n, g), n, builtin_weight("case3", g)));
}

TEST(OrderLimits, SumTendsToSignal)
{
    const Grid g(0, 3, 50);
    const auto r = check_order_limit_sum(test::sin10(g), builtin_weight("case1", g));
    expect_pass(r);
    EXPECT_LE(r.series.back().second, 1e-6);
    const auto z = check_order_limit_sum(test::constant(g, 0.0), builtin_weight("case1", g));
    EXPECT_EQ(z.max_abs_dev, 0.0);
    const auto neg = check_order_limit_sum(test::sin10(g), scale_weight(builtin_weight("case1", g), -1.0));
    ASSERT_EQ(neg.series.size(), r.series.size());
    for (std::size_t i = 0; i < r.series.size(); ++i) EXPECT_NEAR(neg.series[i].second, r.series[i].second, 1e-15);
}

TEST(OrderLimits, DifferencesAtBothEnds)
{
    const Grid g(0, 3, 30);
    const Signal x = test::random_signal(31, g);
    const Weight w = builtin_weight("case4", g);
    for (int n : {1, 2})
        for (auto k : {FracKind::RL, FracKind::Caputo})
            for (auto side : {LimitSide::at_n, LimitSide::at_n_minus_1}) expect_pass(check_order_limit_diff(x, w, n, side, k));
    expect_pass(check_order_limit_diff(test::poly(g, "0,1"), unit_weight(g), 1, LimitSide::at_n, FracKind::Caputo));
    expect_pass(check_order_limit_diff(test::constant(g, 2.0), unit_weight(g), 1, LimitSide::at_n_minus_1, FracKind::Caputo));
}

TEST(UniformConvergence, BoundHolds)
{
    const Grid g(0, 0, 40);
    const Signal x = test::sin10(g);
    for (const char* wn : {"case1", "case2"}) {
        std::vector<Signal> xs;
        for (int i = 1; i <= 20; ++i)
            xs.push_back(make_signal_from_fn(g, [i](double k) { return std::sin(10 * k) + 1.0 / i; }));
        expect_pass(check_uniform_convergence_exchange(xs, x, 0.5, builtin_weight(wn, g)));
    }
    const auto same = check_uniform_convergence_exchange({x, x}, x, 0.5, builtin_weight("case1", g));
    EXPECT_EQ(same.max_abs_dev, 0.0);
}

TEST(Leibniz, Examples)
{
    const Grid g(0, 3, 24);
    const Signal f = test::poly(g, "0,1"), h = test::sin10(g);
    const Weight w = make_exponential_weight(g, 0.25);
    expect_pass(check_leibniz(f, h, {OpKind::GL, 0.5, w}));
    expect_pass(check_leibniz(f, h, {OpKind::RL, 0.5, w}));
    expect_pass(check_leibniz(f, h, {OpKind::Caputo, 0.5, w}));
    expect_pass(check_leibniz(test::constant(g, 1.0), h, {OpKind::IntegerNabla, 1.0, w}));
    expect_pass(check_leibniz(test::random_signal(3, g), h, {OpKind::Caputo, 1.4, builtin_weight("case2", g)}));
}

TEST(Asymptotics, LargeK)
{
    const Grid g(0, 2, 400);
    const auto r = check_rl_caputo_asymptotics(test::sin10(g), 0.5, unit_weight(g), AsymptoticMode::large_k);
    expect_pass(r);
}

TEST(Asymptotics, ZeroInitialDataGivesZeroDifference)
{
    const Grid g(0, 2, 60);
    const Signal x = make_signal_from_fn(g, [](double k) { return k <= 0 ? 0.0 : std::sin(10 * k); });
    const Signal d = rl_caputo_correction(x, 0.5, builtin_weight("case1", g));
    for (int m = 1; m <= 60; ++m) EXPECT_EQ(d.at(m), 0.0);
}

TEST(Asymptotics, EarlyBase)
{
    // base 0.5 so that x(a) = sin(5) is nonzero
    const Grid g(0.5, 102, 20);
    expect_pass(check_rl_caputo_asymptotics(test::sin10(g), 0.5, unit_weight(g), AsymptoticMode::early_a));
}
