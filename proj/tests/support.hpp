#pragma once

#include <cmath>
#include <string>

#include "ntfc/cases.hpp"
#include "ntfc/operators.hpp"
#include "ntfc/suite.hpp"

namespace ntfc::test {

inline Signal sin10(const Grid& g) { return builtin_signal("sin10k", g); }

inline Signal poly(const Grid& g, const std::string& coeffs) { return builtin_signal("poly:" + coeffs, g); }

inline Signal constant(const Grid& g, double c)
{
    return make_signal_from_fn(g, [c](double) { return c; });
}

/// max over offsets from..N of |p - q|
inline double max_diff(const Signal& p, const Signal& q, int from = 1)
{
    double d = 0.0;
    for (int m = from; m <= p.horizon(); ++m) d = std::max(d, std::abs(p.at(m) - q.at(m)));
    return d;
}

inline Signal random_signal(std::uint64_t seed, const Grid& g)
{
    suite::Rng r(seed);
    return suite::random_signal(r, g);
}

}  // namespace ntfc::test
