#pragma once
/**
 * Nabla Laplace transform, transform rules for exponential tempering,
 * nabla convolution, the discrete Mittag-Leffler function and the
 * time-stepping solver of C nabla^{alpha,w} x = mu x.
 */

#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include "identities.hpp"

namespace ntfc {

using cplx = std::complex<double>;

struct LaplaceEval {
    cplx s;
    cplx value;
    int terms_used = 0;
    double last_term_mag = 0.0;
    bool converged = false;
};

/**
 * bounded: x is assumed bounded by the largest sample seen; running out of
 *          samples before the tail is below tolerance raises HorizonExhausted.
 * finite_support: x vanishes past the horizon, so the full sum is exact.
 * truncate: sum what is available and report the convergence flag only.
 */
enum class TailPolicy { bounded, finite_support, truncate };

inline LaplaceEval nlt(const Signal& x, cplx s, int max_terms, TailPolicy policy = TailPolicy::bounded)
{
    if (max_terms < 1) throw ConfigError("nlt: max_terms must be positive");
    LaplaceEval e;
    e.s = s;
    const cplx r = 1.0 - s;
    const double rr = std::abs(r);
    const int J = std::min(max_terms, x.horizon());
    cplx p = 1.0, sum = 0.0;
    double sup = 0.0;
    for (int j = 1; j <= J; ++j) {
        const cplx term = p * x.at(j);
        sum += term;
        sup = std::max(sup, std::abs(x.at(j)));
        p *= r;
        e.terms_used = j;
        e.last_term_mag = std::abs(term);
        const double scale = 1e-14 * std::max(std::abs(sum), 1e-300);
        if (rr < 1.0 && policy != TailPolicy::finite_support) {
            const double tail = std::abs(p) * sup / (1.0 - rr);
            if (e.last_term_mag <= scale && tail <= scale) {
                e.converged = true;
                break;
            }
        }
    }
    e.value = sum;
    if (!e.converged) {
        if (policy == TailPolicy::finite_support && J == x.horizon()) {
            e.converged = true;
        } else if (policy == TailPolicy::bounded && rr < 1.0 && J < max_terms) {
            throw HorizonExhausted("nlt: grid ends before the series converged");
        }
    }
    return e;
}

namespace detail {

inline void check_region(cplx s, double lambda, double radius)
{
    if (lambda == 1.0) throw BadRate("transform rule: lambda must differ from 1");
    const double lim = std::min(radius, std::abs(1.0 - lambda));
    if (!(std::abs(s - 1.0) < lim)) throw RegionOfConvergence("s lies outside |s-1| < min(r, |1-lambda|)");
}

// Terms needed before (|1-s| max(1, 1/|1-lambda|))^J drops far below rounding.
inline int transform_horizon(cplx s, double lambda, int cap)
{
    const double rho = std::abs(1.0 - s) * std::max(1.0, 1.0 / std::abs(1.0 - lambda));
    if (rho <= 0.0) return std::min(cap, 8);
    const double need = std::ceil(-40.0 / std::log(rho)) + 40.0;
    return static_cast<int>(std::min<double>(cap, need));
}

inline LaplaceEval nlt_all(const Signal& x, cplx s) { return nlt(x, s, x.horizon(), TailPolicy::truncate); }

}  // namespace detail

/// N{GL^{alpha,lambda} x}(s) = ((s-lambda)/(1-lambda))^alpha N{x}(s).
inline IdentityReport check_transform_rule_gl(const Signal& x, double alpha, double lambda, cplx s,
                                              double radius = 1.0, double tol = 1e-7)
{
    detail::check_region(s, lambda, radius);
    auto r = detail::make_report("transform_rule_gl", tol,
                                 {{"alpha", alpha}, {"lambda", lambda}, {"s_re", s.real()}, {"s_im", s.imag()}});
    const int J = detail::transform_horizon(s, lambda, x.horizon());
    const Signal xs = restrict_signal(x, Grid(x.a(), 0, J));
    const Weight w = make_exponential_weight(xs.grid, lambda);
    const cplx S = (s - lambda) / (1.0 - lambda);
    const LaplaceEval lhs = detail::nlt_all(gl_tempered(xs, alpha, w), s);
    const LaplaceEval X = detail::nlt_all(xs, s);
    const cplx rhs = std::pow(S, alpha) * X.value;
    r.params.emplace_back("terms", J);
    r.add(s.real(), std::abs(lhs.value - rhs));
    if (!lhs.converged || !X.converged) {
        r.condition_ok = false;
        r.note = "truncated transform did not converge";
    }
    return r.finish();
}

enum class RuleKind { integer, rl, caputo };

/**
 * Transform rules with initial values, S = (s-lambda)/(1-lambda):
 *   integer: S^n X - 1/(1-lambda) sum_i S^i [nabla^{n-i-1,lambda} x]_a, and
 *            the reordered sum with S^{n-i-1} [nabla^{i,lambda} x]_a
 *   rl:      S^alpha X - 1/(1-lambda) sum_i S^i [RL^{alpha-i-1,lambda} x]_a
 *   caputo:  S^alpha X - 1/(1-lambda) sum_i S^{alpha-i-1} [nabla^{i,lambda} x]_a
 */
inline IdentityReport check_transform_rule_diff(const Signal& x, RuleKind kind, double order, double lambda, cplx s,
                                                double radius = 1.0, double tol = 1e-7)
{
    detail::check_region(s, lambda, radius);
    const char* id = kind == RuleKind::integer ? "transform_rule_integer"
                     : kind == RuleKind::rl    ? "transform_rule_rl"
                                               : "transform_rule_caputo";
    auto r = detail::make_report(id, tol, {{"order", order}, {"lambda", lambda}, {"s_re", s.real()}, {"s_im", s.imag()}});
    const int n = kind == RuleKind::integer ? static_cast<int>(std::lround(order)) : fractional_n(order);
    if (kind == RuleKind::integer && (n < 1 || !detail::is_integer(order)))
        throw ConfigError("integer rule needs a positive integer order");
    detail::require_history(x, n, id);
    const int J = detail::transform_horizon(s, lambda, x.horizon());
    const Signal xs = restrict_signal(x, Grid(x.a(), x.grid.history, J));
    const Weight w = make_exponential_weight(xs.grid, lambda);
    const cplx S = (s - lambda) / (1.0 - lambda);
    const LaplaceEval X = detail::nlt_all(xs, s);
    const double c = 1.0 / (1.0 - lambda);
    bool conv = X.converged;

    auto record = [&](const LaplaceEval& lhs, cplx rhs) {
        conv = conv && lhs.converged;
        r.add(s.real(), std::abs(lhs.value - rhs));
    };
    if (kind == RuleKind::integer) {
        const LaplaceEval lhs = detail::nlt_all(nabla_n_tempered(xs, n, w), s);
        cplx r1 = std::pow(S, n) * X.value, r2 = r1;
        for (int i = 0; i < n; ++i) {
            r1 -= c * std::pow(S, i) * tempered_difference_at(xs, w, n - i - 1, 0);
            r2 -= c * std::pow(S, n - i - 1) * tempered_difference_at(xs, w, i, 0);
        }
        record(lhs, r1);
        record(lhs, r2);
    } else if (kind == RuleKind::rl) {
        const LaplaceEval lhs = detail::nlt_all(rl_tempered(xs, order, w), s);
        cplx rhs = std::pow(S, order) * X.value;
        for (int i = 0; i < n; ++i) rhs -= c * std::pow(S, i) * rl_or_sum(xs, order - i - 1, w).at(0);
        record(lhs, rhs);
    } else {
        const LaplaceEval lhs = detail::nlt_all(caputo_tempered(xs, order, w), s);
        cplx rhs = std::pow(S, order) * X.value;
        for (int i = 0; i < n; ++i) rhs -= c * std::pow(S, order - i - 1) * tempered_difference_at(xs, w, i, 0);
        record(lhs, rhs);
    }
    r.params.emplace_back("terms", J);
    if (!conv) {
        r.condition_ok = false;
        r.note = "truncated transform did not converge";
    }
    return r.finish();
}

/// (x * y)(k) = sum_{j=a+1}^{k} x(k+a+1-j) y(j), on offsets 1..N (0 at a).
inline Signal convolve(const Signal& x, const Signal& y)
{
    if (x.a() != y.a() || x.horizon() != y.horizon()) throw GridMismatch("convolve: signals on different grids");
    const int N = x.horizon();
    Signal out(Grid(x.a(), 0, N));
    for (int m = 1; m <= N; ++m) {
        double s = 0.0;
        for (int j = 1; j <= m; ++j) s += x.at(m + 1 - j) * y.at(j);
        out.at(m) = s;
    }
    return out;
}

inline IdentityReport check_convolution_commutation(const Signal& x, const Signal& y, double alpha, double lambda,
                                                    double tol = 1e-11)
{
    if (x.a() != y.a() || x.horizon() != y.horizon()) throw GridMismatch("convolution: signals on different grids");
    auto r = detail::make_report("convolution_commutation", tol, {{"alpha", alpha}, {"lambda", lambda}});
    const Weight w = make_exponential_weight(Grid(x.a(), 0, x.horizon()), lambda);
    const Signal x0 = restrict_signal(x, w.grid), y0 = restrict_signal(y, w.grid);
    const Signal lhs = convolve(x0, gl_tempered(y0, alpha, w));
    const Signal rhs = convolve(gl_tempered(x0, alpha, w), y0);
    for (int m = 1; m <= x.horizon(); ++m) r.add(x.grid.lattice(m), std::abs(lhs.at(m) - rhs.at(m)));
    return r.finish();
}

/**
 * Convolution exchange with boundary brackets [F(j)]_{j=a}^{j=k} = F(k) - F(a):
 *   integer: x * nabla^n y = nabla^n x * y + c sum_i [nabla^i x(k+a-j) nabla^{n-i-1} y(j)]
 *   rl:      x * RL^alpha y = C^alpha x * y + c sum_i [nabla^i x(k+a-j) RL^{alpha-i-1} y(j)]
 * all operators tempered by (1-lambda)^{k-a}, c = 1/(1-lambda). The bracket
 * carries the same c as the transform rules; without it the exchange fails
 * whenever lambda != 0.
 */
inline IdentityReport check_convolution_with_ic(const Signal& x, const Signal& y, RuleKind kind, double order,
                                                double lambda, double tol = 1e-10)
{
    if (x.a() != y.a() || x.horizon() != y.horizon()) throw GridMismatch("convolution: signals on different grids");
    if (kind == RuleKind::caputo) throw ConfigError("convolution exchange takes the integer or RL form");
    const int n = kind == RuleKind::integer ? static_cast<int>(std::lround(order)) : fractional_n(order);
    if (n < 1) throw ConfigError("convolution exchange needs order >= 1 or a fractional order");
    detail::require_history(x, n, "check_convolution_with_ic");
    detail::require_history(y, n, "check_convolution_with_ic");
    auto r = detail::make_report(kind == RuleKind::integer ? "convolution_ic_integer" : "convolution_ic_rl", tol,
                                 {{"order", order}, {"lambda", lambda}});
    const int h = std::min(x.grid.history, y.grid.history);
    const Grid g(x.a(), h, x.horizon());
    const Signal xg = restrict_signal(x, g), yg = restrict_signal(y, g);
    const Weight w = make_exponential_weight(g, lambda);

    Signal lhs, rhs;
    std::vector<Signal> yparts;
    if (kind == RuleKind::integer) {
        lhs = convolve(xg, nabla_n_tempered(yg, n, w));
        rhs = convolve(nabla_n_tempered(xg, n, w), yg);
        for (int i = 0; i < n; ++i) yparts.push_back(nabla_n_tempered(yg, n - i - 1, w));
    } else {
        lhs = convolve(xg, rl_tempered(yg, order, w));
        rhs = convolve(caputo_tempered(xg, order, w), yg);
        for (int i = 0; i < n; ++i) yparts.push_back(rl_or_sum(yg, order - i - 1, w));
    }
    const double c = 1.0 / (1.0 - lambda);
    for (int m = 1; m <= x.horizon(); ++m) {
        double b = 0.0;
        for (int i = 0; i < n; ++i)
            b += tempered_difference_at(xg, w, i, 0) * yparts[i].at(m) - tempered_difference_at(xg, w, i, m) * yparts[i].at(0);
        b *= c;
        r.add(x.grid.lattice(m), std::abs(lhs.at(m) - (rhs.at(m) + b)));
    }
    return r.finish();
}

struct MLParams {
    double alpha = 0.5;
    double beta = 1.0;
    double mu = 0.0;
    double a = 0.0;
};

/**
 * F_{alpha,beta}(mu,k,a) = sum_i mu^i H(k-a, i alpha + beta - 1) on offsets 0..N.
 * For mu < 0 the series alternates with terms far above the sum, so both the
 * orders i alpha + beta - 1 and the sum are carried in wide_real.
 */
inline Signal ml_function(const MLParams& p, int N)
{
    if (!std::isfinite(p.alpha) || !std::isfinite(p.beta) || !std::isfinite(p.mu))
        throw DomainError("ml_function: non-finite parameter");
    if (p.alpha <= 0) throw ConfigError("ml_function: alpha must be positive");
    using R = wide_real;
    Signal out(Grid(p.a, 0, N));
    constexpr int max_terms = 100000;
    for (int m = 0; m <= N; ++m) {
        R sum = 0, mp = 1;
        int small = 0;
        int i = 0;
        for (; i < max_terms; ++i) {
            const R q = R(i) * R(p.alpha) + R(p.beta) - R(1);
            const R term = mp * nabla_power_as<R>(m, q);
            sum += term;
            const double ts = std::abs(static_cast<double>(term)), ss = std::abs(static_cast<double>(sum));
            if (!std::isfinite(ss) || ts > 1e30 * std::max(ss, 1.0))
                throw SeriesDiverged("ml_function: terms grow without bound");
            if (ts <= 1e-20 * ss || (ts == 0.0 && ss == 0.0)) {
                if (++small >= 3) break;
            } else {
                small = 0;
            }
            mp *= R(p.mu);
            if (mp == R(0) && i > 0) break;
        }
        if (i == max_terms) throw SeriesDiverged("ml_function: series did not settle");
        out.at(m) = static_cast<double>(sum);
    }
    return out;
}

/**
 * Solves C nabla^{alpha,w} x = mu x, alpha in (0,1), from x(a) = x_a.
 * With z = w x and u = nabla z, the Caputo sum reads
 * sum_{i<k-a} d_i u(k-i) = mu z(k), d the GL coefficients of order alpha-1,
 * so z(k) (1 - mu) = z(k-1) - sum_{i>=1} d_i u(k-i).
 */
inline Signal fde_solve(double alpha, double mu, const Weight& w, double x_a, int N)
{
    if (!(alpha > 0.0 && alpha < 1.0)) throw ConfigError("fde_solve: alpha must lie in (0,1)");
    if (!std::isfinite(mu) || !std::isfinite(x_a)) throw DomainError("fde_solve: non-finite input");
    if (w.grid.horizon < N || w.grid.history < 0) throw GridMismatch("fde_solve: weight does not cover the horizon");
    const double lead = 1.0 - mu;
    if (std::abs(lead) < 1e-15) throw SingularStep("fde_solve: step coefficient 1 - mu vanishes");
    const auto d = gl_coefficients(alpha - 1.0, static_cast<std::size_t>(N + 1));
    std::vector<double> z(N + 1), u(N + 1, 0.0);
    z[0] = w.at(0) * x_a;
    Signal out(Grid(w.grid.a, 0, N));
    out.at(0) = x_a;
    for (int m = 1; m <= N; ++m) {
        double hist = 0.0;
        for (int i = 1; i <= m - 1; ++i) hist += d[i] * u[m - i];
        z[m] = (z[m - 1] - hist) / lead;
        u[m] = z[m] - z[m - 1];
        out.at(m) = z[m] / w.at(m);
        if (!std::isfinite(out.at(m))) throw NonFiniteSample("fde_solve: trajectory overflowed");
    }
    return out;
}

}  // namespace ntfc
