#pragma once
/**
 * Integer nabla differences and the GL / RL / Caputo tempered operators.
 *
 * Every operator returns a signal on (a, history 0, N). The entry at k = a
 * is the empty-sum value 0 for the fractional kinds; for the integer
 * difference it is the true value [nabla^n x]_{k=a}.
 */

#include <cmath>
#include <string>
#include <vector>

#include "errors.hpp"
#include "signals.hpp"
#include "special.hpp"

namespace ntfc {

enum class OpKind { IntegerNabla, GL, RL, Caputo };

struct OperatorSpec {
    OpKind kind = OpKind::GL;
    double order = 0.0;
    Weight weight;
};

inline const char* to_string(OpKind k)
{
    switch (k) {
        case OpKind::IntegerNabla: return "nabla";
        case OpKind::GL: return "gl";
        case OpKind::RL: return "rl";
        case OpKind::Caputo: return "caputo";
    }
    return "?";
}

/// n = ceil(alpha) for non-integer alpha > 0; throws IntegerOrder otherwise.
inline int fractional_n(double alpha)
{
    if (!std::isfinite(alpha)) throw DomainError("order must be finite");
    if (detail::is_integer(alpha)) throw IntegerOrder("RL/Caputo need a non-integer order; use the integer difference");
    if (alpha <= 0) throw ConfigError("RL/Caputo need a positive order");
    return static_cast<int>(std::ceil(alpha));
}

namespace detail {

inline void require_history(const Signal& x, int n, const char* what)
{
    if (x.grid.history < n)
        throw InsufficientHistory(std::string(what) + ": needs history " + std::to_string(n) + ", have " +
                                  std::to_string(x.grid.history));
}

inline void require_weight(const Signal& x, const Weight& w, int history_needed)
{
    if (w.grid.a != x.grid.a || w.grid.horizon < x.grid.horizon || w.grid.history < history_needed)
        throw GridMismatch("weight does not cover the signal grid");
}

inline double int_binomial(int n, int i)
{
    double r = 1.0;
    for (int j = 1; j <= i; ++j) r = r * (n - j + 1) / j;
    return r;
}

// w^{-1}(k) sum_{i=0}^{m-1} c_i w(k-i) y(k-i) for m = 1..N, with z = w y on offsets 1..N.
inline Signal gl_core(const std::vector<double>& z, const Weight& w, double a, int N, double alpha)
{
    const auto c = gl_coefficients(alpha, static_cast<std::size_t>(N));
    Signal out(Grid(a, 0, N));
    for (int m = 1; m <= N; ++m) {
        double s = 0.0;
        for (int i = 0; i < m; ++i) s += c[i] * z[m - i];
        out.at(m) = s / w.at(m);
    }
    return out;
}

}  // namespace detail

inline Signal nabla_n(const Signal& x, int n)
{
    if (n < 0) throw ConfigError("difference order must be nonnegative");
    detail::require_history(x, n, "nabla_n");
    Signal out(Grid(x.a(), 0, x.horizon()));
    for (int m = 0; m <= x.horizon(); ++m) {
        double s = 0.0;
        for (int i = 0; i <= n; ++i) {
            double t = detail::int_binomial(n, i) * x.at(m - i);
            s += (i % 2 == 0) ? t : -t;
        }
        out.at(m) = s;
    }
    return out;
}

/// [nabla^{i,w} x] at offset m, for a single point.
inline double tempered_difference_at(const Signal& x, const Weight& w, int i, int m)
{
    if (!x.grid.contains(m - i)) throw InsufficientHistory("tempered difference: lag outside the grid");
    double s = 0.0;
    for (int j = 0; j <= i; ++j) {
        double t = detail::int_binomial(i, j) * w.at(m - j) * x.at(m - j);
        s += (j % 2 == 0) ? t : -t;
    }
    return s / w.at(m);
}

/// Same as tempered_difference_at, accumulated in Real.
template <class Real>
Real tempered_difference_as(const Signal& x, const Weight& w, int i, int m)
{
    if (!x.grid.contains(m - i)) throw InsufficientHistory("tempered difference: lag outside the grid");
    Real s = 0, b = 1;
    for (int j = 0; j <= i; ++j) {
        Real t = b * Real(w.at(m - j)) * Real(x.at(m - j));
        s += (j % 2 == 0) ? t : -t;
        b = b * Real(i - j) / Real(j + 1);
    }
    return s / Real(w.at(m));
}

inline Signal nabla_n_tempered(const Signal& x, int n, const Weight& w)
{
    if (n < 0) throw ConfigError("difference order must be nonnegative");
    detail::require_history(x, n, "nabla_n_tempered");
    detail::require_weight(x, w, n);
    Signal out(Grid(x.a(), 0, x.horizon()));
    for (int m = 0; m <= x.horizon(); ++m) out.at(m) = tempered_difference_at(x, w, n, m);
    return out;
}

/// Initial data [nabla^{i,w} x]_{k=a} for i = 0..count-1.
inline std::vector<double> initial_differences(const Signal& x, const Weight& w, int count)
{
    detail::require_history(x, count - 1, "initial_differences");
    detail::require_weight(x, w, count - 1);
    std::vector<double> r(static_cast<std::size_t>(std::max(count, 0)));
    for (int i = 0; i < count; ++i) r[i] = tempered_difference_at(x, w, i, 0);
    return r;
}

inline Signal gl_tempered(const Signal& x, double alpha, const Weight& w)
{
    if (!std::isfinite(alpha)) throw DomainError("order must be finite");
    detail::require_weight(x, w, 0);
    const int N = x.horizon();
    if (alpha == 0.0) {
        // order 0 is the identity; skip the w round trip so it is exact
        Signal out(Grid(x.a(), 0, N));
        for (int m = 1; m <= N; ++m) out.at(m) = x.at(m);
        return out;
    }
    std::vector<double> z(N + 1, 0.0);
    for (int m = 1; m <= N; ++m) z[m] = w.at(m) * x.at(m);
    return detail::gl_core(z, w, x.a(), N, alpha);
}

inline Signal rl_tempered(const Signal& x, double alpha, const Weight& w)
{
    const int n = fractional_n(alpha);
    detail::require_history(x, n, "rl_tempered");
    detail::require_weight(x, w, 0);
    const Signal s = gl_tempered(x, alpha - n, w);
    const int N = x.horizon();
    Signal out(Grid(x.a(), 0, N));
    for (int m = 1; m <= N; ++m) {
        // the sum vanishes at k <= a, so lags below a+1 drop out
        double acc = 0.0;
        for (int i = 0; i <= n && m - i >= 1; ++i) {
            double t = detail::int_binomial(n, i) * w.at(m - i) * s.at(m - i);
            acc += (i % 2 == 0) ? t : -t;
        }
        out.at(m) = acc / w.at(m);
    }
    return out;
}

inline Signal caputo_tempered(const Signal& x, double alpha, const Weight& w)
{
    const int n = fractional_n(alpha);
    detail::require_history(x, n, "caputo_tempered");
    detail::require_weight(x, w, n);
    const int N = x.horizon();
    std::vector<double> z(N + 1, 0.0);
    for (int m = 1; m <= N; ++m) z[m] = w.at(m) * tempered_difference_at(x, w, n, m);
    return detail::gl_core(z, w, x.a(), N, alpha - n);
}

/// GL for negative orders, x itself at order 0, RL otherwise.
inline Signal rl_or_sum(const Signal& x, double order, const Weight& w)
{
    if (order <= 0 || detail::is_integer(order)) {
        if (order > 0) return nabla_n_tempered(x, static_cast<int>(std::lround(order)), w);
        return gl_tempered(x, order, w);
    }
    return rl_tempered(x, order, w);
}

inline Signal apply(const OperatorSpec& spec, const Signal& x)
{
    switch (spec.kind) {
        case OpKind::IntegerNabla: {
            if (!detail::is_integer(spec.order) || spec.order < 0)
                throw ConfigError("integer difference needs a nonnegative integer order");
            return nabla_n_tempered(x, static_cast<int>(std::lround(spec.order)), spec.weight);
        }
        case OpKind::GL: return gl_tempered(x, spec.order, spec.weight);
        case OpKind::RL: return rl_tempered(x, spec.order, spec.weight);
        case OpKind::Caputo: return caputo_tempered(x, spec.order, spec.weight);
    }
    throw ConfigError("unknown operator kind");
}

/// GL of integer order n minus the n-th tempered difference, on offsets 1..N.
inline Signal gl_integer_vs_nabla_defect(const Signal& x, int n, const Weight& w)
{
    if (n < 1) throw ConfigError("defect needs n >= 1");
    const Signal g = gl_tempered(x, n, w);
    const Signal d = nabla_n_tempered(x, n, w);
    Signal out(Grid(x.a(), 0, x.horizon()));
    for (int m = 1; m <= x.horizon(); ++m) out.at(m) = g.at(m) - d.at(m);
    return out;
}

/**
 * Closed form of the defect: the GL sum stops at lag k-a-1, so the terms
 * with lag i in [k-a, n] are missing and the defect is minus their sum.
 * Zero once k > a+n.
 */
inline Signal gl_integer_boundary_terms(const Signal& x, int n, const Weight& w)
{
    detail::require_history(x, n, "gl_integer_boundary_terms");
    detail::require_weight(x, w, n);
    Signal out(Grid(x.a(), 0, x.horizon()));
    for (int m = 1; m <= x.horizon(); ++m) {
        double s = 0.0;
        for (int i = m; i <= n; ++i) {
            double t = detail::int_binomial(n, i) * w.at(m - i) * x.at(m - i);
            s += (i % 2 == 0) ? t : -t;
        }
        out.at(m) = -s / w.at(m);
    }
    return out;
}

}  // namespace ntfc
