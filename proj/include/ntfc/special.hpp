#pragma once
/**
 * Rising factorials, Gamma ratios with pole cancellation, and the
 * Grünwald-Letnikov coefficient sequence.
 *
 * Pole handling follows one rule: when an argument of Gamma sits on a
 * nonpositive integer it is treated as the limit of a shared perturbation,
 * so Gamma(-m)/Gamma(-l) -> (-1)^(m-l) l!/m!.
 */

#include <boost/math/special_functions/gamma.hpp>
#include <boost/math/special_functions/sin_pi.hpp>
#include <boost/math/constants/constants.hpp>

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "errors.hpp"

namespace ntfc {

namespace detail {

inline bool is_integer(double x)
{
    return std::isfinite(x) && std::abs(x - std::nearbyint(x)) <= 1e-14 * std::max(1.0, std::abs(x));
}

inline bool is_pole(double x)
{
    return x <= 0.5 && is_integer(x);
}

inline long as_int(double x) { return static_cast<long>(std::nearbyint(x)); }

// log|Gamma(x)| and sign, x not a pole.
inline double lgamma_signed(double x, int& sign)
{
    if (x > 0) {
        sign = 1;
        return boost::math::lgamma(x);
    }
    // reflection: Gamma(x) = pi / (sin(pi x) Gamma(1-x))
    double s = boost::math::sin_pi(x);
    sign = s < 0 ? -1 : 1;
    return std::log(boost::math::constants::pi<double>()) - std::log(std::abs(s)) - boost::math::lgamma(1.0 - x);
}

// 1/Gamma(x); entire, zero on poles.
inline double rgamma(double x)
{
    if (is_pole(x)) return 0.0;
    if (x > 0 && x < 170.0) return 1.0 / boost::math::tgamma(x);
    int s = 1;
    double l = lgamma_signed(x, s);
    return s * std::exp(-l);
}

inline double factorial(long n)
{
    double r = 1.0;
    for (long j = 2; j <= n; ++j) r *= static_cast<double>(j);
    return r;
}

}  // namespace detail

/// p^(rising q) = Gamma(p+q)/Gamma(p) for p > 0.
inline double rising(double p, double q)
{
    if (!std::isfinite(p) || !std::isfinite(q)) throw DomainError("rising: non-finite argument");
    if (p <= 0) throw DomainError("rising: base must be positive");
    if (detail::is_pole(p + q)) throw PoleError("rising: p+q is a nonpositive integer");
    if (detail::is_integer(q) && std::abs(q) <= 64) {
        long n = detail::as_int(q);
        double r = 1.0;
        if (n >= 0) {
            for (long j = 0; j < n; ++j) r *= p + j;
        } else {
            for (long j = 1; j <= -n; ++j) r /= p - j;
        }
        return r;
    }
    if (p + q > 0) return 1.0 / boost::math::tgamma_delta_ratio(p, q);
    int s = 1;
    double l = detail::lgamma_signed(p + q, s) - boost::math::lgamma(p);
    return s * std::exp(l);
}

/**
 * Gamma(p+q) / (Gamma(p) Gamma(denom)).
 *
 * p may be any integer (including 0 and negatives). Matched poles cancel;
 * a pole in the numerator with none below raises DomainError.
 */
inline double rising_over_gamma(double p, double q, double denom)
{
    if (!std::isfinite(p) || !std::isfinite(q) || !std::isfinite(denom))
        throw DomainError("rising_over_gamma: non-finite argument");
    const double t = p + q;
    const bool pt = detail::is_pole(t), pp = detail::is_pole(p), pd = detail::is_pole(denom);
    const int den_poles = int(pp) + int(pd);

    if (!pt) {
        if (den_poles > 0) return 0.0;
        if (p > 0 && t > 0) {
            double r = 1.0 / boost::math::tgamma_delta_ratio(p, q);
            return r * detail::rgamma(denom);
        }
        int s1 = 1, s2 = 1, s3 = 1;
        double l = detail::lgamma_signed(t, s1) - detail::lgamma_signed(p, s2) - detail::lgamma_signed(denom, s3);
        return s1 * s2 * s3 * std::exp(l);
    }
    if (den_poles == 0) throw DomainError("rising_over_gamma: unresolved pole in numerator");
    if (den_poles == 2) return 0.0;
    // one pole each side: Gamma(-m)/Gamma(-l) = (-1)^(m-l) l!/m!
    const double other = pp ? denom : p;
    const long m = -detail::as_int(t);
    const long l = -detail::as_int(pp ? p : denom);
    double ratio = detail::factorial(l) / detail::factorial(m);
    if ((m - l) % 2 != 0) ratio = -ratio;
    return ratio * detail::rgamma(other);
}

/**
 * Nabla power kernel m^(rising q) / Gamma(q+1) for integer m.
 *
 * For m >= 1 this is the polynomial (q+1)...(q+m-1)/(m-1)! in q, so it is
 * continuous across integer q. For m <= 0 it vanishes unless q is a
 * nonnegative integer, in which case it is the ordinary Pochhammer product.
 */
inline double nabla_power(long m, double q)
{
    if (!std::isfinite(q)) throw DomainError("nabla_power: non-finite order");
    if (detail::is_integer(q) && q >= 0) {
        long n = detail::as_int(q);
        double r = 1.0;
        for (long j = 0; j < n; ++j) r *= static_cast<double>(m + j) / static_cast<double>(j + 1);
        return r;
    }
    if (m <= 0) return 0.0;
    if (m <= 256 || detail::is_integer(q)) {
        double r = 1.0;
        for (long j = 1; j < m; ++j) r *= (q + j) / static_cast<double>(j);
        return r;
    }
    return rising_over_gamma(static_cast<double>(m), q, q + 1.0);
}

/// Generalized binomial coefficient C(alpha, i) by the product recurrence.
template <class Real = double>
Real binomial(Real alpha, long i)
{
    if (i < 0) return Real(0);
    Real r = 1;
    for (long j = 1; j <= i; ++j) r *= (alpha - Real(j) + Real(1)) / Real(j);
    return r;
}

/// Wider accumulator used by expansions whose terms cancel heavily.
#if defined(__SIZEOF_FLOAT128__)
using wide_real = __float128;
#else
using wide_real = long double;
#endif

/**
 * nabla_power carried out in Real, order included: callers form orders such
 * as i - alpha in Real, because the kernels multiply terms that cancel far
 * below their size and a rounded order is amplified with them.
 */
template <class Real>
Real nabla_power_as(long m, Real q)
{
    const double qd = static_cast<double>(q);
    if (!std::isfinite(qd)) throw DomainError("nabla_power: non-finite order");
    if (m <= 0) {
        // only here does integrality matter; the m >= 1 polynomial needs no snapping
        if (!(detail::is_integer(qd) && qd >= 0)) return Real(0);
        long n = detail::as_int(qd);
        Real r = 1;
        for (long j = 0; j < n; ++j) r *= Real(m + j) / Real(j + 1);
        return r;
    }
    Real r = 1;
    for (long j = 1; j < m; ++j) r *= (q + Real(j)) / Real(j);
    return r;
}

/// c_0..c_{length-1} with c_0 = 1, c_i = c_{i-1} (i-1-order)/i.
inline std::vector<double> gl_coefficients(double order, std::size_t length)
{
    if (!std::isfinite(order)) throw DomainError("gl_coefficients: non-finite order");
    std::vector<double> c(length);
    if (length == 0) return c;
    c[0] = 1.0;
    for (std::size_t i = 1; i < length; ++i)
        c[i] = c[i - 1] * ((static_cast<double>(i) - 1.0 - order) / static_cast<double>(i));
    return c;
}

}  // namespace ntfc
