#pragma once
/**
 * Named built-in signals and weights.
 *
 * Signals: sin10k, poly:c0,c1,... (sum c_i k^i), geom:r (r^(k-a)).
 * Weights: case1 (sqrt2^(k-a)), case2 (-pi^(k-a)), case3 ((-1)^(k-a)),
 * case4 (sin(k pi/2 - a pi/2 + pi/4)), halfgeom (0.5^(k-a)),
 * halfgeom+eps (0.5^(k-a) + 0.01), exp:lambda, one.
 */

#include <charconv>
#include <cmath>
#include <numbers>
#include <string>
#include <string_view>
#include <vector>

#include "signals.hpp"

namespace ntfc {

inline double parse_real(std::string_view s)
{
    double v = 0.0;
    while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
    while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size()) throw ParseError("not a number: '" + std::string(s) + "'");
    return v;
}

inline bool is_builtin_signal(const std::string& name)
{
    return name == "sin10k" || name.rfind("poly:", 0) == 0 || name.rfind("geom:", 0) == 0;
}

inline Signal builtin_signal(const std::string& name, const Grid& g)
{
    if (name == "sin10k") return make_signal_from_fn(g, [](double k) { return std::sin(10.0 * k); });
    if (name.rfind("poly:", 0) == 0) {
        std::vector<double> c;
        std::string_view rest(name);
        rest.remove_prefix(5);
        while (true) {
            auto pos = rest.find(',');
            c.push_back(parse_real(rest.substr(0, pos)));
            if (pos == std::string_view::npos) break;
            rest.remove_prefix(pos + 1);
        }
        return make_signal_from_fn(g, [c](double k) {
            double v = 0.0;
            for (std::size_t i = c.size(); i-- > 0;) v = v * k + c[i];
            return v;
        });
    }
    if (name.rfind("geom:", 0) == 0) {
        const double r = parse_real(std::string_view(name).substr(5));
        const double a = g.a;
        return make_signal_from_fn(g, [r, a](double k) { return std::pow(r, k - a); });
    }
    throw ConfigError("unknown signal '" + name + "'");
}

inline bool is_builtin_weight(const std::string& name)
{
    return name == "case1" || name == "case2" || name == "case3" || name == "case4" || name == "halfgeom" ||
           name == "halfgeom+eps" || name == "one" || name.rfind("exp:", 0) == 0;
}

namespace detail {
// integer power by repeated multiplication, exact for the lattice exponents used here
inline double ipow(double b, int e)
{
    double r = 1.0;
    const bool neg = e < 0;
    for (int i = 0; i < std::abs(e); ++i) r *= b;
    return neg ? 1.0 / r : r;
}
}  // namespace detail

/// "case1".."case4" for i = 0..3.
inline const char* weight_case_name(int i)
{
    static const char* const names[] = {"case1", "case2", "case3", "case4"};
    if (i < 0 || i > 3) throw ConfigError("weight case index out of range");
    return names[i];
}

inline Weight builtin_weight(const std::string& name, const Grid& g)
{
    using std::numbers::pi;
    auto per_offset = [&](auto f) {
        std::vector<double> v(g.size());
        for (int m = g.first(); m <= g.last(); ++m) v[g.slot(m)] = f(m);
        return make_weight(g, std::move(v));
    };
    if (name == "one") return unit_weight(g);
    if (name.rfind("exp:", 0) == 0) return make_exponential_weight(g, parse_real(std::string_view(name).substr(4)));
    if (name == "case1") return per_offset([](int m) { return std::pow(std::sqrt(2.0), m); });
    if (name == "case2") return per_offset([](int m) { return -std::pow(pi, m); });
    if (name == "case3") return per_offset([](int m) { return m % 2 == 0 ? 1.0 : -1.0; });
    if (name == "case4") return per_offset([](int m) { return std::sin(m * pi / 2 + pi / 4); });
    if (name == "halfgeom") return per_offset([](int m) { return detail::ipow(0.5, m); });
    if (name == "halfgeom+eps") return per_offset([](int m) { return detail::ipow(0.5, m) + 0.01; });
    throw ConfigError("unknown weight '" + name + "'");
}

}  // namespace ntfc
