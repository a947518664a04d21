#pragma once
/**
 * Nabla Taylor representations: expansions at the initial instant a, at the
 * current instant k, and at k with a truncated degree plus residual.
 *
 * The representation sums multiply binomial-sized kernels by high-order
 * differences and cancel heavily, so they are accumulated in wide_real and
 * rounded once at the end.
 */

#include <cmath>
#include <vector>

#include "operators.hpp"

namespace ntfc {

enum class TaylorBase { initial_a, future_b, current_k };
enum class RemainderKind { none, integer_sum, fractional_sum };

struct TaylorExpansion {
    TaylorBase base = TaylorBase::initial_a;
    int degree = 0;
    std::vector<double> coefficients;  // [nabla^i x]_a / i!
    RemainderKind remainder_kind = RemainderKind::integer_sum;
    Signal partial;    // T_K on offsets 0..N
    Signal remainder;  // R_K on offsets 0..N

    Signal reconstruct() const
    {
        Signal r(partial.grid);
        for (std::size_t i = 0; i < r.values.size(); ++i) r.values[i] = partial.values[i] + remainder.values[i];
        return r;
    }
};

/// x(k) = sum_{i<=K} H(k-a, i) [nabla^i x]_a + sum_j H(k-j+1, K) nabla^{K+1} x(j).
inline TaylorExpansion taylor_initial(const Signal& x, int K)
{
    if (K < 0) throw ConfigError("taylor: degree must be nonnegative");
    detail::require_history(x, K + 1, "taylor_initial");
    using R = wide_real;
    const Weight one = unit_weight(x.grid);
    const int N = x.horizon();
    TaylorExpansion e;
    e.degree = K;
    std::vector<R> init(K + 1);
    double fact = 1.0;
    for (int i = 0; i <= K; ++i) {
        if (i > 0) fact *= i;
        init[i] = tempered_difference_as<R>(x, one, i, 0);
        e.coefficients.push_back(static_cast<double>(init[i]) / fact);
    }
    std::vector<R> top(N + 1, 0);
    for (int j = 1; j <= N; ++j) top[j] = tempered_difference_as<R>(x, one, K + 1, j);
    e.partial = Signal(Grid(x.a(), 0, N));
    e.remainder = Signal(Grid(x.a(), 0, N));
    for (int m = 0; m <= N; ++m) {
        R p = 0, q = 0;
        for (int i = 0; i <= K; ++i) p += nabla_power_as<R>(m, i) * init[i];
        for (int j = 1; j <= m; ++j) q += nabla_power_as<R>(m - j + 1, K) * top[j];
        e.partial.at(m) = static_cast<double>(p);
        e.remainder.at(m) = static_cast<double>(q);
    }
    return e;
}

namespace detail {

struct TaylorShape {
    int start;     // first initial-value index
    double order;  // alpha, or n for the integer difference
};

inline TaylorShape taylor_shape(const OperatorSpec& spec, int K)
{
    switch (spec.kind) {
        case OpKind::IntegerNabla: {
            int n = static_cast<int>(std::lround(spec.order));
            if (K <= n) throw DegreeTooLow("integer-difference expansion needs K > n");
            return {n, static_cast<double>(n)};
        }
        case OpKind::GL: return {0, spec.order};
        case OpKind::RL: fractional_n(spec.order); return {0, spec.order};
        case OpKind::Caputo: {
            int n = fractional_n(spec.order);
            if (K <= n) throw DegreeTooLow("Caputo expansion needs K > n");
            return {n, spec.order};
        }
    }
    throw ConfigError("unknown operator kind");
}

}  // namespace detail

/**
 * Operator through the Taylor formula at a: initial-value series
 * sum_i H(k-a, i-alpha) w(a)/w(k) [nabla^{i,w} x]_a plus the weighted
 * remainder sum_j H(k-j+1, K-alpha) w(j)/w(k) nabla^{K+1,w} x(j).
 * The series starts at i = n for the integer difference and Caputo.
 */
inline Signal tempered_op_taylor_initial(const Signal& x, const OperatorSpec& spec, int K, bool with_remainder = true)
{
    const auto shape = detail::taylor_shape(spec, K);
    detail::require_history(x, K + 1, "tempered_op_taylor_initial");
    const Weight& w = spec.weight;
    detail::require_weight(x, w, K + 1);
    using R = wide_real;
    const int N = x.horizon();
    std::vector<R> init(K + 1), top(N + 1, 0);
    for (int i = 0; i <= K; ++i) init[i] = tempered_difference_as<R>(x, w, i, 0);
    for (int j = 1; j <= N; ++j) top[j] = R(w.at(j)) * tempered_difference_as<R>(x, w, K + 1, j);
    Signal out(Grid(x.a(), 0, N));
    for (int m = 1; m <= N; ++m) {
        R s = 0, q = 0;
        for (int i = shape.start; i <= K; ++i) s += nabla_power_as<R>(m, R(i) - R(shape.order)) * init[i];
        s *= R(w.at(0));
        if (with_remainder)
            for (int j = 1; j <= m; ++j) q += nabla_power_as<R>(m - j + 1, R(K) - R(shape.order)) * top[j];
        out.at(m) = static_cast<double>((s + q) / R(w.at(m)));
    }
    return out;
}

struct SeriesConvergence {
    std::vector<int> degrees;
    std::vector<double> deviations;
    bool monotone_tail = true;  // nonincreasing from degree start+2 on
};

/**
 * Truncated Taylor series at a (no remainder) against the direct operator,
 * for K from the first admissible degree to K_max. Order 0 with the GL kind
 * reconstructs x itself from the weighted initial data.
 */
inline SeriesConvergence taylor_series_initial(const Signal& x, const OperatorSpec& spec, int K_max)
{
    int first = 0;
    if (spec.kind == OpKind::IntegerNabla || spec.kind == OpKind::Caputo) {
        int n = spec.kind == OpKind::Caputo ? fractional_n(spec.order) : static_cast<int>(std::lround(spec.order));
        first = n + 1;
    }
    if (K_max < first) throw DegreeTooLow("series sweep needs K_max above the first admissible degree");
    const Signal direct = spec.kind == OpKind::GL && spec.order == 0.0 ? x : apply(spec, x);
    SeriesConvergence rep;
    for (int K = first; K <= K_max; ++K) {
        const Signal t = tempered_op_taylor_initial(restrict_signal(x, Grid(x.a(), K + 1, x.horizon())), spec, K,
                                                    false);
        double d = 0.0;
        for (int m = 1; m <= x.horizon(); ++m) d = std::max(d, std::abs(t.at(m) - direct.at(m)));
        rep.degrees.push_back(K);
        rep.deviations.push_back(d);
    }
    for (std::size_t i = 1; i < rep.degrees.size(); ++i)
        if (rep.degrees[i] >= first + 3 && rep.deviations[i] > rep.deviations[i - 1]) rep.monotone_tail = false;
    return rep;
}

/// Lemma-style expansion at the current instant: sum_{i<=k-j} H(j-k, i) nabla^i x(k), which equals x(j).
inline double taylor_current_value(const Signal& x, int j, int k)
{
    if (j > k) throw ConfigError("current-instant expansion needs j <= k");
    using R = wide_real;
    const Weight one = unit_weight(x.grid);
    R s = 0;
    for (int i = 0; i <= k - j; ++i) s += nabla_power_as<R>(j - k, i) * tempered_difference_as<R>(x, one, i, k);
    return static_cast<double>(s);
}

/**
 * Exact finite expansion at the current instant:
 *   GL/RL:  sum_{i=0}^{k-a-1} C(alpha,i) H(k-a-i, i-alpha) nabla^{i,w} x(k)
 *   Caputo: sum_{i=n}^{k-a-1+n} C(alpha-n,i-n) H(k-a-i+n, i-alpha) nabla^{i,w} x(k)
 *   integer difference: w^{-1} sum_j (-1)^j C(n,j) sum_{i<=j} H(-j, i) nabla^i z(k)
 */
inline Signal tempered_op_taylor_current(const Signal& x, const OperatorSpec& spec)
{
    using R = wide_real;
    const Weight& w = spec.weight;
    const int N = x.horizon();
    Signal out(Grid(x.a(), 0, N));
    switch (spec.kind) {
        case OpKind::GL:
        case OpKind::RL: {
            if (spec.kind == OpKind::RL) fractional_n(spec.order);
            detail::require_weight(x, w, 0);
            const double al = spec.order;
            for (int m = 1; m <= N; ++m) {
                R s = 0;
                for (int i = 0; i <= m - 1; ++i)
                    s += binomial<R>(al, i) * nabla_power_as<R>(m - i, R(i) - R(al)) * tempered_difference_as<R>(x, w, i, m);
                out.at(m) = static_cast<double>(s);
            }
            return out;
        }
        case OpKind::Caputo: {
            const int n = fractional_n(spec.order);
            if (x.grid.history < n) throw InsufficientLags("current-instant Caputo expansion needs history n");
            detail::require_weight(x, w, n);
            const double al = spec.order;
            for (int m = 1; m <= N; ++m) {
                R s = 0;
                for (int i = n; i <= m - 1 + n; ++i)
                    s += binomial<R>(R(al) - R(n), i - n) * nabla_power_as<R>(m - i + n, R(i) - R(al)) *
                         tempered_difference_as<R>(x, w, i, m);
                out.at(m) = static_cast<double>(s);
            }
            return out;
        }
        case OpKind::IntegerNabla: {
            const int n = static_cast<int>(std::lround(spec.order));
            if (x.grid.history < n) throw InsufficientLags("current-instant expansion needs history n");
            detail::require_weight(x, w, n);
            for (int m = 1; m <= N; ++m) {
                R s = 0;
                for (int j = 0; j <= n; ++j) {
                    R inner = 0;
                    for (int i = 0; i <= j; ++i)
                        inner += nabla_power_as<R>(-j, i) * tempered_difference_as<R>(x, w, i, m);
                    R t = R(detail::int_binomial(n, j)) * inner;
                    s += (j % 2 == 0) ? t : -t;
                }
                out.at(m) = static_cast<double>(s);
            }
            return out;
        }
    }
    throw ConfigError("unknown operator kind");
}

/**
 * Truncated current-instant expansion of degree K plus the residual double
 * sum over i = a+2..k, j = a+2..i with kernel H(k-j+2, -alpha-1) H(j-i, K)
 * (Caputo: H(k-j+2, n-alpha-1) H(j-i, K-n), series from i = n).
 * The inner j-sums are formed once per (k, i) from cached kernel rows.
 */
inline Signal tempered_op_taylor_future(const Signal& x, const OperatorSpec& spec, int K)
{
    if (K < 0) throw ConfigError("taylor: degree must be nonnegative");
    int n = 0;
    double al = spec.order;
    if (spec.kind == OpKind::Caputo) {
        n = fractional_n(al);
        if (K < n) throw DegreeTooLow("Caputo future expansion needs K >= n");
    } else if (spec.kind == OpKind::RL) {
        fractional_n(al);
    } else if (spec.kind == OpKind::IntegerNabla) {
        throw ConfigError("future expansion is defined for GL, RL and Caputo");
    }
    detail::require_history(x, K + 1, "tempered_op_taylor_future");
    const Weight& w = spec.weight;
    detail::require_weight(x, w, K + 1);
    using R = wide_real;
    const int N = x.horizon();
    const R frac = spec.kind == OpKind::Caputo ? R(n) - R(al) - R(1) : -R(al) - R(1);
    const int deg = spec.kind == OpKind::Caputo ? K - n : K;

    std::vector<R> top(N + 1, 0);
    for (int i = 1; i <= N; ++i) top[i] = R(w.at(i)) * tempered_difference_as<R>(x, w, K + 1, i);
    // kernel rows: ker[d] = H(d, frac) for d = 2..N+1, pol[d] = H(-d, deg) for d = 0..N
    std::vector<R> ker(N + 2, 0), pol(N + 1, 0);
    for (int d = 2; d <= N + 1; ++d) ker[d] = nabla_power_as<R>(d, frac);
    for (int d = 0; d <= N; ++d) pol[d] = nabla_power_as<R>(-d, deg);

    Signal out(Grid(x.a(), 0, N));
    for (int m = 1; m <= N; ++m) {
        R s = 0;
        for (int i = n; i <= K; ++i) {
            R c = spec.kind == OpKind::Caputo ? binomial<R>(R(al) - R(n), i - n) * nabla_power_as<R>(m - i + n, R(i) - R(al))
                                              : binomial<R>(al, i) * nabla_power_as<R>(m - i, R(i) - R(al));
            if (c != R(0)) s += c * tempered_difference_as<R>(x, w, i, m);
        }
        R res = 0;
        for (int i = 2; i <= m; ++i) {
            R inner = 0;
            for (int j = 2; j <= i; ++j) inner += ker[m - j + 2] * pol[i - j];
            res += top[i] * inner;
        }
        out.at(m) = static_cast<double>(s - res / R(w.at(m)));
    }
    return out;
}

}  // namespace ntfc
