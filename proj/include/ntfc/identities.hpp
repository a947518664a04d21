#pragma once
/**
 * Executable checks of the composition laws, order limits, Leibniz rules
 * and RL/Caputo asymptotics of the tempered operators.
 *
 * Each checker returns an IdentityReport; pass is max_abs_dev <= tolerance.
 */

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "operators.hpp"

namespace ntfc {

struct IdentityReport {
    std::string id;
    double max_abs_dev = 0.0;
    double argmax_k = std::numeric_limits<double>::quiet_NaN();
    double tolerance = 0.0;
    bool pass = true;
    std::uint64_t seed = 0;
    std::vector<std::pair<std::string, double>> params;
    /// (parameter, deviation) pairs for sweeps: epsilon for limits, degree for series.
    std::vector<std::pair<double, double>> series;
    std::string note;
    /// Extra pass condition beyond the tolerance (monotone sweep, converged series).
    bool condition_ok = true;

    void add(double k, double dev)
    {
        if (!(dev <= max_abs_dev)) {  // NaN also lands here
            max_abs_dev = dev;
            argmax_k = k;
        }
    }
    IdentityReport& finish()
    {
        pass = condition_ok && max_abs_dev <= tolerance;
        return *this;
    }
};

namespace detail {

inline IdentityReport make_report(std::string id, double tol, std::vector<std::pair<std::string, double>> params = {})
{
    IdentityReport r;
    r.id = std::move(id);
    r.tolerance = tol;
    r.params = std::move(params);
    return r;
}

}  // namespace detail

/// sum_{i<n} H(k-a, i-alpha) w(a)/w(k) [nabla^{i,w} x]_a : the RL minus Caputo term.
inline Signal rl_caputo_correction(const Signal& x, double alpha, const Weight& w)
{
    const int n = fractional_n(alpha);
    const auto init = initial_differences(x, w, n);
    Signal out(Grid(x.a(), 0, x.horizon()));
    for (int m = 1; m <= x.horizon(); ++m) {
        double s = 0.0;
        for (int i = 0; i < n; ++i) s += nabla_power(m, i - alpha) * init[i];
        out.at(m) = s * w.at(0) / w.at(m);
    }
    return out;
}

inline IdentityReport check_gl_rl_equivalence(const Signal& x, double alpha, const Weight& w, double tol = 1e-12)
{
    auto r = detail::make_report("gl_rl_equivalence", tol, {{"alpha", alpha}});
    const Signal g = gl_tempered(x, alpha, w), q = rl_tempered(x, alpha, w);
    for (int m = 1; m <= x.horizon(); ++m) r.add(x.grid.lattice(m), std::abs(g.at(m) - q.at(m)));
    return r.finish();
}

inline IdentityReport check_rl_caputo_correction(const Signal& x, double alpha, const Weight& w, double tol = 1e-11)
{
    auto r = detail::make_report("rl_caputo_correction", tol, {{"alpha", alpha}});
    const Signal rl = rl_tempered(x, alpha, w), c = caputo_tempered(x, alpha, w);
    const Signal corr = rl_caputo_correction(x, alpha, w);
    for (int m = 1; m <= x.horizon(); ++m)
        r.add(x.grid.lattice(m), std::abs(rl.at(m) - (c.at(m) + corr.at(m))));
    return r.finish();
}

/**
 * Sum of order alpha as the n-th difference of the sum of order alpha+n.
 * The inner sum grows like k^{alpha+n} before the difference cancels it, so
 * the composed side is accumulated in wide_real.
 */
inline IdentityReport check_sum_composition(const Signal& x, double alpha, const Weight& w, double tol = 1e-11)
{
    const int n = std::max(1, static_cast<int>(std::ceil(alpha)));
    auto r = detail::make_report("sum_composition", tol, {{"alpha", alpha}, {"n", n}});
    detail::require_weight(x, w, 0);
    using R = wide_real;
    const int N = x.horizon();
    const Signal lhs = gl_tempered(x, -alpha, w);
    std::vector<R> c(N + 1), inner(N + 1, 0);  // inner(m) = w(m) GL^{-alpha-n} x(m), zero for m <= 0
    c[0] = 1;
    for (int i = 1; i <= N; ++i) c[i] = c[i - 1] * (R(i - 1) + R(alpha) + R(n)) / R(i);
    for (int m = 1; m <= N; ++m)
        for (int i = 0; i < m; ++i) inner[m] += c[i] * R(w.at(m - i)) * R(x.at(m - i));
    for (int m = 1; m <= N; ++m) {
        R d = 0;
        for (int j = 0; j <= n && j < m; ++j) {
            R t = R(detail::int_binomial(n, j)) * inner[m - j];
            d += (j % 2 == 0) ? t : -t;
        }
        r.add(x.grid.lattice(m), std::abs(lhs.at(m) - static_cast<double>(d / R(w.at(m)))));
    }
    return r.finish();
}

/// RL and Caputo of order alpha undo the sum of order alpha.
inline IdentityReport check_difference_of_sum(const Signal& x, double alpha, const Weight& w, double tol = 1e-11)
{
    const int n = fractional_n(alpha);
    auto r = detail::make_report("difference_of_sum", tol, {{"alpha", alpha}});
    const Signal y = zero_extend(gl_tempered(x, -alpha, w), n);
    const Signal a1 = rl_tempered(y, alpha, w), a2 = caputo_tempered(y, alpha, w);
    for (int m = 1; m <= x.horizon(); ++m) {
        double k = x.grid.lattice(m);
        r.add(k, std::abs(a1.at(m) - x.at(m)));
        r.add(k, std::abs(a2.at(m) - x.at(m)));
    }
    return r.finish();
}

enum class FracKind { RL, Caputo };

/// The sum of order alpha applied to RL or Caputo, against x minus the initial-value series.
inline IdentityReport check_sum_of_difference(const Signal& x, double alpha, const Weight& w, FracKind kind,
                                              double tol = 1e-11)
{
    const int n = fractional_n(alpha);
    detail::require_history(x, n, "check_sum_of_difference");
    auto r = detail::make_report(kind == FracKind::RL ? "sum_of_difference_rl" : "sum_of_difference_caputo", tol,
                                 {{"alpha", alpha}});
    const Signal d = kind == FracKind::RL ? rl_tempered(x, alpha, w) : caputo_tempered(x, alpha, w);
    const Signal lhs = gl_tempered(d, -alpha, w);
    std::vector<double> init(n);
    for (int i = 0; i < n; ++i) {
        if (kind == FracKind::RL)
            init[i] = rl_or_sum(x, alpha - i - 1, w).at(0);  // empty sum at k = a
        else
            init[i] = tempered_difference_at(x, w, i, 0);
    }
    for (int m = 1; m <= x.horizon(); ++m) {
        double corr = 0.0;
        for (int i = 0; i < n; ++i) {
            double ker = kind == FracKind::RL ? nabla_power(m, alpha - i - 1) : nabla_power(m, i);
            corr += ker * init[i];
        }
        double rhs = x.at(m) - corr * w.at(0) / w.at(m);
        r.add(x.grid.lattice(m), std::abs(lhs.at(m) - rhs));
    }
    return r.finish();
}

/**
 * Mixed compositions with beta in (m-1, m), m <= n:
 *   rl_of_caputo         RL^{n-beta} C^{beta}   = nabla^{n,w}
 *   rl_of_caputo_swapped RL^{beta}   C^{n-beta} = nabla^{n,w}
 *   caputo_of_rl         C^{n-beta}  RL^{beta}  = GL^{n,w}
 *   caputo_of_rl_swapped C^{beta}    RL^{n-beta}= GL^{n,w}
 * The first two only hold from k = a+n-m+1 and k = a+m on; earlier points
 * pick up boundary terms, so the window starts there.
 */
enum class MixedForm { rl_of_caputo, rl_of_caputo_swapped, caputo_of_rl, caputo_of_rl_swapped };

inline const char* to_string(MixedForm f)
{
    switch (f) {
        case MixedForm::rl_of_caputo: return "mixed_rl_of_caputo";
        case MixedForm::rl_of_caputo_swapped: return "mixed_rl_of_caputo_swapped";
        case MixedForm::caputo_of_rl: return "mixed_caputo_of_rl";
        case MixedForm::caputo_of_rl_swapped: return "mixed_caputo_of_rl_swapped";
    }
    return "?";
}

inline int mixed_window_start(MixedForm f, int n, int m)
{
    switch (f) {
        case MixedForm::rl_of_caputo: return n - m + 1;
        case MixedForm::rl_of_caputo_swapped: return m;
        default: return 1;
    }
}

inline IdentityReport check_mixed_composition(const Signal& x, int n, double beta, const Weight& w, MixedForm form,
                                              double tol = 1e-11)
{
    const int m = fractional_n(beta);
    if (m > n) throw ConfigError("mixed composition needs ceil(beta) <= n");
    detail::require_history(x, n, "check_mixed_composition");
    auto r = detail::make_report(to_string(form), tol, {{"beta", beta}, {"n", n}});
    Signal lhs, rhs;
    const int h = n + 1;
    switch (form) {
        case MixedForm::rl_of_caputo:
            lhs = rl_tempered(zero_extend(caputo_tempered(x, beta, w), h), n - beta, w);
            rhs = nabla_n_tempered(x, n, w);
            break;
        case MixedForm::rl_of_caputo_swapped:
            lhs = rl_tempered(zero_extend(caputo_tempered(x, n - beta, w), h), beta, w);
            rhs = nabla_n_tempered(x, n, w);
            break;
        case MixedForm::caputo_of_rl:
            lhs = caputo_tempered(zero_extend(rl_tempered(x, beta, w), h), n - beta, w);
            rhs = gl_tempered(x, n, w);
            break;
        case MixedForm::caputo_of_rl_swapped:
            lhs = caputo_tempered(zero_extend(rl_tempered(x, n - beta, w), h), beta, w);
            rhs = gl_tempered(x, n, w);
            break;
    }
    for (int k = mixed_window_start(form, n, m); k <= x.horizon(); ++k)
        r.add(x.grid.lattice(k), std::abs(lhs.at(k) - rhs.at(k)));
    return r.finish();
}

/**
 * Reconstruction of nabla^{m,w} x (x itself for m = 0) from the initial data
 * and a weighted sum of the Caputo difference. For m = 0 the integer-order
 * remainder form is checked as well.
 */
inline IdentityReport check_taylor_remainder_forms(const Signal& x, double alpha, const Weight& w, int mdeg = 0,
                                                   double tol = 1e-11)
{
    const int n = fractional_n(alpha);
    if (mdeg < 0 || mdeg >= alpha) throw ConfigError("taylor remainder: need 0 <= m < alpha");
    detail::require_history(x, n, "check_taylor_remainder_forms");
    auto r = detail::make_report("taylor_remainder_forms", tol, {{"alpha", alpha}, {"m", mdeg}});
    const auto init = initial_differences(x, w, n);
    const Signal c = caputo_tempered(x, alpha, w);
    const Signal dn = nabla_n_tempered(x, n, w);
    const Signal target = nabla_n_tempered(x, mdeg, w);
    for (int k = 1; k <= x.horizon(); ++k) {
        double head = 0.0;
        for (int i = mdeg; i < n; ++i) head += nabla_power(k, i - mdeg) * init[i];
        head *= w.at(0) / w.at(k);
        double frac = 0.0, integ = 0.0;
        for (int j = 1; j <= k; ++j) {
            double ratio = w.at(j) / w.at(k);
            frac += nabla_power(k - j + 1, alpha - mdeg - 1) * ratio * c.at(j);
            integ += nabla_power(k - j + 1, n - mdeg - 1) * ratio * dn.at(j);
        }
        double kk = x.grid.lattice(k);
        r.add(kk, std::abs(head + frac - target.at(k)));
        r.add(kk, std::abs(head + integ - target.at(k)));
    }
    return r.finish();
}

/// GL of integer order against the n-th difference, through the boundary terms.
inline IdentityReport check_gl_integer_defect(const Signal& x, int n, const Weight& w, double tol = 1e-11)
{
    auto r = detail::make_report("gl_integer_defect", tol, {{"n", n}});
    const Signal d = gl_integer_vs_nabla_defect(x, n, w);
    const Signal b = gl_integer_boundary_terms(x, n, w);
    for (int m = 1; m <= x.horizon(); ++m) {
        double dev = std::abs(d.at(m) - b.at(m));
        if (m > n && d.at(m) != 0.0) dev = std::max(dev, std::abs(d.at(m)));
        r.add(x.grid.lattice(m), dev);
    }
    return r.finish();
}

/// op(x, lambda w) against op(x, w) for the four operator kinds.
inline IdentityReport check_scale_invariance(const Signal& x, double alpha, const Weight& w, double scale,
                                             double tol = 1e-12)
{
    const int n = fractional_n(alpha);
    auto r = detail::make_report("scale_invariance", tol, {{"alpha", alpha}, {"scale", scale}});
    const Weight v = scale_weight(w, scale);
    auto cmp = [&](const Signal& p, const Signal& q) {
        for (int m = 1; m <= x.horizon(); ++m) {
            double d = std::abs(p.at(m) - q.at(m)) / std::max(1.0, std::abs(p.at(m)));
            r.add(x.grid.lattice(m), d);
        }
    };
    cmp(gl_tempered(x, alpha, w), gl_tempered(x, alpha, v));
    cmp(rl_tempered(x, alpha, w), rl_tempered(x, alpha, v));
    cmp(caputo_tempered(x, alpha, w), caputo_tempered(x, alpha, v));
    cmp(nabla_n_tempered(x, n, w), nabla_n_tempered(x, n, v));
    return r.finish();
}

inline std::vector<double> default_sum_eps() { return {1e-1, 1e-2, 1e-3, 1e-4, 1e-5, 1e-6, 1e-7, 1e-8}; }
inline std::vector<double> default_diff_eps() { return {1e-2, 1e-3, 1e-4, 1e-5, 1e-6, 1e-7}; }

/// The sum of order eps tends to x as eps -> 0.
inline IdentityReport check_order_limit_sum(const Signal& x, const Weight& w,
                                            const std::vector<double>& eps = default_sum_eps())
{
    auto r = detail::make_report("order_limit_sum", 1e-6);
    bool monotone = true;
    double prev = std::numeric_limits<double>::infinity();
    double last = 0.0;
    for (double e : eps) {
        const Signal y = gl_tempered(x, -e, w);
        double d = 0.0, km = 0.0;
        for (int m = 1; m <= x.horizon(); ++m) {
            double v = std::abs(y.at(m) - x.at(m));
            if (v > d) d = v, km = x.grid.lattice(m);
        }
        r.series.emplace_back(e, d);
        if (e <= 1e-3 && d > prev) monotone = false;
        prev = d;
        last = d;
        if (e == eps.back()) r.argmax_k = km;
    }
    r.max_abs_dev = last;
    if (!monotone) {
        r.condition_ok = false;
        r.note = "deviation not monotone for eps <= 1e-3";
    }
    return r.finish();
}

enum class LimitSide { at_n, at_n_minus_1 };

/**
 * Order limits of RL and Caputo at the ends of (n-1, n), on the windows
 * where they hold: Caputo on N_{a+1} (with the initial-value term at n-1),
 * RL on N_{a+n+1} at n and N_{a+n} at n-1.
 */
inline IdentityReport check_order_limit_diff(const Signal& x, const Weight& w, int n, LimitSide side, FracKind kind,
                                             const std::vector<double>& eps = default_diff_eps(), double tol = 1e-5)
{
    if (n < 1) throw ConfigError("order limit needs n >= 1");
    detail::require_history(x, n, "check_order_limit_diff");
    std::string id = std::string("order_limit_") + (kind == FracKind::RL ? "rl" : "caputo") +
                     (side == LimitSide::at_n ? "_at_n" : "_at_n_minus_1");
    auto r = detail::make_report(id, tol, {{"n", n}});
    const int target_order = side == LimitSide::at_n ? n : n - 1;
    const Signal target = nabla_n_tempered(x, target_order, w);
    int start = 1;
    if (kind == FracKind::RL) start = side == LimitSide::at_n ? n + 1 : n;
    const double init = tempered_difference_at(x, w, n - 1, 0);
    bool monotone = true;
    double prev = std::numeric_limits<double>::infinity();
    for (double e : eps) {
        const double alpha = side == LimitSide::at_n ? n - e : n - 1 + e;
        const Signal y = kind == FracKind::RL ? rl_tempered(x, alpha, w) : caputo_tempered(x, alpha, w);
        double d = 0.0, km = 0.0;
        for (int m = start; m <= x.horizon(); ++m) {
            double v = y.at(m);
            if (kind == FracKind::Caputo && side == LimitSide::at_n_minus_1) v += w.at(0) / w.at(m) * init;
            double dv = std::abs(v - target.at(m));
            if (dv > d) d = dv, km = x.grid.lattice(m);
        }
        r.series.emplace_back(e, d);
        if (!(d < prev) && !(d == 0.0 && prev == 0.0)) monotone = false;
        prev = d;
        r.max_abs_dev = d;
        r.argmax_k = km;
    }
    if (!monotone) {
        r.condition_ok = false;
        r.note = "deviation not strictly decreasing in eps";
    }
    return r.finish();
}

/// Sum of order alpha of |w|-weighted ones: the Lipschitz constant of the sum in sup norm.
inline double sum_sup_bound(const Grid& g, double alpha, const Weight& w)
{
    const Signal ones = make_signal_from_fn(Grid(g.a, 0, g.horizon), [](double) { return 1.0; });
    const Signal s = gl_tempered(ones, -alpha, abs_weight(w));
    double k = 0.0;
    for (int m = 1; m <= g.horizon; ++m) k = std::max(k, s.at(m));
    return k;
}

/**
 * For every x_i: max_k |S x_i - S x| <= kappa sup_k |x_i - x| with S the sum
 * of order alpha. The reported deviation is the worst excess over the bound.
 */
inline IdentityReport check_uniform_convergence_exchange(const std::vector<Signal>& xs, const Signal& x, double alpha,
                                                         const Weight& w, double tol = 1e-12)
{
    if (alpha <= 0) throw ConfigError("uniform convergence check needs alpha > 0");
    auto r = detail::make_report("uniform_convergence_exchange", tol, {{"alpha", alpha}});
    const double kappa = sum_sup_bound(x.grid, alpha, w);
    r.params.emplace_back("kappa", kappa);
    const Signal sx = gl_tempered(x, -alpha, w);
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (!(xs[i].grid == x.grid)) throw GridMismatch("uniform convergence: signals on different grids");
        const Signal si = gl_tempered(xs[i], -alpha, w);
        double lhs = 0.0, sup = 0.0;
        for (int m = 1; m <= x.horizon(); ++m) {
            lhs = std::max(lhs, std::abs(si.at(m) - sx.at(m)));
            sup = std::max(sup, std::abs(xs[i].at(m) - x.at(m)));
        }
        double excess = std::max(0.0, lhs - kappa * sup);
        r.series.emplace_back(static_cast<double>(i + 1), lhs / std::max(kappa * sup, 1e-300));
        r.add(static_cast<double>(i + 1), excess);
    }
    r.note = "argmax_k holds the sequence index";
    return r.finish();
}

namespace detail {

// Untempered GL of order beta at offset m, base a, accumulated in Real.
template <class Real>
Real gl_point_as(const Signal& g, Real beta, int m)
{
    Real s = 0, c = 1;
    for (int i = 0; i < m; ++i) {
        s += c * Real(g.at(m - i));
        c = c * (Real(i) - beta) / Real(i + 1);
    }
    return s;
}

}  // namespace detail

/**
 * Leibniz rules. The integer form expands nabla^{n,w}(fg) in
 * nabla^{i,w} f(k) nabla^{n-i} g(k-i); the fractional forms expand in
 * C(alpha,i) nabla^{i,w} f(k) times the untempered GL of order alpha-i of g
 * at k-i; the Caputo form subtracts the initial-value remainder.
 */
inline IdentityReport check_leibniz(const Signal& f, const Signal& g, const OperatorSpec& spec, double tol = 1e-10)
{
    if (!(f.grid == g.grid)) throw GridMismatch("leibniz: f and g on different grids");
    const Weight& w = spec.weight;
    const double alpha = spec.order;
    int n = 0;
    if (spec.kind == OpKind::IntegerNabla) {
        n = static_cast<int>(std::lround(alpha));
    } else if (spec.kind != OpKind::GL) {
        n = fractional_n(alpha);
    }
    if (f.grid.history < n) throw InsufficientLags("leibniz: f and g need history n");
    auto r = detail::make_report(std::string("leibniz_") + to_string(spec.kind), tol, {{"order", alpha}});
    Signal fg(f.grid);
    for (std::size_t i = 0; i < fg.values.size(); ++i) fg.values[i] = f.values[i] * g.values[i];
    const Signal lhs = apply(spec, fg);
    const Weight one = unit_weight(g.grid);
    using R = wide_real;

    for (int k = 1; k <= f.horizon(); ++k) {
        R rhs = 0;
        if (spec.kind == OpKind::IntegerNabla) {
            for (int i = 0; i <= n; ++i)
                rhs += R(detail::int_binomial(n, i)) * tempered_difference_as<R>(f, w, i, k) *
                       tempered_difference_as<R>(g, one, n - i, k - i);
        } else {
            for (int i = 0; i <= k - 1; ++i)
                rhs += binomial<R>(alpha, i) * tempered_difference_as<R>(f, w, i, k) *
                       detail::gl_point_as<R>(g, R(alpha) - R(i), k - i);
            if (spec.kind == OpKind::Caputo) {
                R rem = 0;
                for (int j = 0; j < n; ++j)
                    for (int i = j; i < n; ++i)
                        rem += R(detail::int_binomial(i, j)) * nabla_power_as<R>(k, R(i) - R(alpha)) *
                               tempered_difference_as<R>(f, w, j, 0) * tempered_difference_as<R>(g, one, i - j, -j);
                rhs -= rem * R(w.at(0)) / R(w.at(k));
            }
        }
        r.add(f.grid.lattice(k), std::abs(static_cast<double>(rhs) - lhs.at(k)));
    }
    return r.finish();
}

enum class AsymptoticMode { large_k, early_a };

/**
 * RL minus Caputo decays. large_k: the difference at a+N is below the one at
 * a+N/2 and below 10 C N^{n-1-alpha}, C the initial-data bound. early_a:
 * re-basing at a' = a - d for d in {0,25,50,75,100} (x needs that much extra
 * history) gives differences at a fixed k0 = a+N within the same envelope.
 * Re-basing also changes the initial data, so the decrease is judged on the
 * difference divided by C max|w(a')/w(j)|: the a-100 value must be below
 * the a one.
 */
inline IdentityReport check_rl_caputo_asymptotics(const Signal& x, double alpha, const Weight& w, AsymptoticMode mode)
{
    const int n = fractional_n(alpha);
    auto r = detail::make_report(mode == AsymptoticMode::large_k ? "rl_caputo_asymptotics" : "rl_caputo_early_base",
                                 0.0, {{"alpha", alpha}});
    r.note = "envelope 10*C*N^(n-1-alpha) is an artifact-side bound";
    auto scale = [&](const Signal& xs, const Weight& ws, int m) {
        const auto init = initial_differences(xs, ws, n);
        double c = 0.0;
        for (int i = 0; i < n; ++i) c += std::abs(init[i]) * std::abs(detail::rgamma(i - alpha + 1));
        double wr = 0.0;
        for (int j = 1; j <= m; ++j) wr = std::max(wr, std::abs(ws.at(0) / ws.at(j)));
        return c * wr;
    };
    auto envelope = [&](const Signal& xs, const Weight& ws, int m) {
        return 10.0 * scale(xs, ws, m) * std::pow(static_cast<double>(m), n - 1 - alpha);
    };
    auto diff_at = [&](const Signal& xs, const Weight& ws, int m) {
        return std::abs(rl_caputo_correction(xs, alpha, ws).at(m));
    };

    if (mode == AsymptoticMode::large_k) {
        if (x.horizon() < 200) throw ConfigError("asymptotics need N >= 200");
        const int N = x.horizon(), h = N / 2;
        const double dN = diff_at(x, w, N), dh = diff_at(x, w, h);
        const double env = envelope(x, w, N);
        r.series = {{static_cast<double>(h), dh}, {static_cast<double>(N), dN}};
        r.params.emplace_back("envelope", env);
        r.max_abs_dev = dN;
        r.argmax_k = x.grid.lattice(N);
        r.tolerance = env;
        r.condition_ok = dN < dh || (dN == 0.0 && dh == 0.0);
        return r.finish();
    }
    if (x.grid.history < 100 + n) throw InsufficientHistory("early_a mode needs history >= 100 + n");
    const int N = x.horizon();
    bool within = true;
    double d0 = 0.0, d100 = 0.0, q0 = 0.0, q100 = 0.0;
    for (int d : {0, 25, 50, 75, 100}) {
        const Signal xs = rebase(x, d);
        const Weight ws = rebase(w, d);
        const double v = diff_at(xs, ws, N + d);
        const double env = envelope(xs, ws, N + d);
        const double sc = scale(xs, ws, N + d);
        const double q = sc > 0.0 ? v / sc : 0.0;
        r.series.emplace_back(x.grid.a - d, v);
        if (v > env) within = false;
        if (d == 0) d0 = v, q0 = q;
        if (d == 100) d100 = v, q100 = q;
    }
    r.params.emplace_back("difference_at_a", d0);
    r.params.emplace_back("difference_at_a_minus_100", d100);
    // deviation and tolerance carry the normalized values at a-100 and a
    r.max_abs_dev = q100;
    r.argmax_k = x.grid.lattice(N);
    r.tolerance = q0;
    r.condition_ok = within && (q100 < q0 || (q0 == 0.0 && q100 == 0.0));
    return r.finish();
}

}  // namespace ntfc
