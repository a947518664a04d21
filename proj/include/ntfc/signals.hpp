#pragma once
/**
 * Lattice grids, sampled signals and tempering weights.
 *
 * A grid with base a, history h and horizon N holds the lattice points
 * k = a + m for integer offsets m in [-h, N]. All indexing is done on m so
 * that a real base never introduces floating drift.
 */

#include <cmath>
#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <type_traits>
#include <vector>

#include "errors.hpp"

namespace ntfc {

inline constexpr double kMinWeight = 1e-300;

struct Grid {
    double a = 0.0;
    int history = 0;
    int horizon = 1;

    Grid() = default;
    Grid(double a_, int history_, int horizon_) : a(a_), history(history_), horizon(horizon_)
    {
        if (!std::isfinite(a)) throw ConfigError("grid: base point must be finite");
        if (history < 0) throw ConfigError("grid: history must be nonnegative");
        if (horizon < 1) throw ConfigError("grid: horizon must be at least 1");
    }

    std::size_t size() const { return static_cast<std::size_t>(history + horizon + 1); }
    int first() const { return -history; }
    int last() const { return horizon; }
    bool contains(int m) const { return m >= -history && m <= horizon; }
    std::size_t slot(int m) const { return static_cast<std::size_t>(m + history); }
    int offset_of_slot(std::size_t s) const { return static_cast<int>(s) - history; }
    double lattice(int m) const { return a + m; }

    /// Offset of lattice point k; throws if k is not on the grid.
    int offset_of(double k) const
    {
        double d = k - a;
        double r = std::nearbyint(d);
        if (std::abs(d - r) > 1e-9 * std::max(1.0, std::abs(d)))
            throw ConfigError("grid: point is not on the lattice");
        int m = static_cast<int>(r);
        if (!contains(m)) throw ConfigError("grid: point outside the grid");
        return m;
    }

    bool operator==(const Grid& o) const { return a == o.a && history == o.history && horizon == o.horizon; }
};

struct Signal {
    Grid grid;
    std::vector<double> values;

    Signal() = default;
    Signal(Grid g, std::vector<double> v) : grid(g), values(std::move(v))
    {
        if (values.size() != grid.size()) throw ConfigError("signal: value count does not match grid");
        for (double x : values)
            if (!std::isfinite(x)) throw NonFiniteSample("signal: non-finite sample");
    }
    explicit Signal(Grid g) : grid(g), values(g.size(), 0.0) {}

    double at(int m) const { return values[grid.slot(m)]; }
    double& at(int m) { return values[grid.slot(m)]; }
    double a() const { return grid.a; }
    int horizon() const { return grid.horizon; }
    int history() const { return grid.history; }
};

enum class WeightKind { general, exponential };

struct Weight {
    Grid grid;
    std::vector<double> values;
    WeightKind kind = WeightKind::general;
    double rate = 0.0;  // lambda when exponential

    double at(int m) const { return values[grid.slot(m)]; }
    bool covers(const Grid& g, int extra_history = 0) const
    {
        return grid.a == g.a && grid.history >= g.history + extra_history && grid.horizon >= g.horizon;
    }
};

template <class F>
Signal make_signal_from_fn(const Grid& grid, F&& f)
{
    std::vector<double> v(grid.size());
    for (int m = grid.first(); m <= grid.last(); ++m) {
        double y = f(grid.lattice(m));
        if (!std::isfinite(y)) throw NonFiniteSample("signal: generator returned a non-finite sample");
        v[grid.slot(m)] = y;
    }
    return Signal(grid, std::move(v));
}

namespace detail {
inline void validate_weight(const Weight& w)
{
    for (double v : w.values) {
        if (!std::isfinite(v)) throw NonFiniteSample("weight: non-finite sample");
        if (std::abs(v) < kMinWeight) throw ZeroWeight("weight: sample is zero or underflows");
    }
}
}  // namespace detail

/// General weight from explicit samples on the grid.
inline Weight make_weight(const Grid& grid, std::vector<double> values)
{
    if (values.size() != grid.size()) throw ConfigError("weight: value count does not match grid");
    Weight w{grid, std::move(values), WeightKind::general, 0.0};
    detail::validate_weight(w);
    return w;
}

template <class F>
    requires std::is_invocable_r_v<double, F, double>
Weight make_weight(const Grid& grid, F&& f)
{
    std::vector<double> v(grid.size());
    for (int m = grid.first(); m <= grid.last(); ++m) v[grid.slot(m)] = f(grid.lattice(m));
    return make_weight(grid, std::move(v));
}

/// w(k) = (1-lambda)^(k-a), built by repeated multiplication outward from w(a) = 1.
inline Weight make_exponential_weight(const Grid& grid, double lambda)
{
    if (!std::isfinite(lambda)) throw BadRate("weight: rate must be finite");
    if (lambda == 1.0) throw BadRate("weight: rate 1 gives a vanishing weight");
    const double b = 1.0 - lambda;
    std::vector<double> v(grid.size());
    v[grid.slot(0)] = 1.0;
    for (int m = 1; m <= grid.last(); ++m) v[grid.slot(m)] = v[grid.slot(m - 1)] * b;
    for (int m = -1; m >= grid.first(); --m) v[grid.slot(m)] = v[grid.slot(m + 1)] / b;
    Weight w{grid, std::move(v), WeightKind::exponential, lambda};
    detail::validate_weight(w);
    return w;
}

inline Weight unit_weight(const Grid& grid) { return make_exponential_weight(grid, 0.0); }

inline Weight scale_weight(const Weight& w, double scale)
{
    if (!std::isfinite(scale) || scale == 0.0) throw ZeroScale("weight: scale must be finite and nonzero");
    Weight r = w;
    for (double& v : r.values) v *= scale;
    if (scale != 1.0) r.kind = WeightKind::general;
    detail::validate_weight(r);
    return r;
}

/// Pointwise |w|.
inline Weight abs_weight(const Weight& w)
{
    Weight r = w;
    for (double& v : r.values) v = std::abs(v);
    if (r.kind == WeightKind::exponential && w.rate > 1.0) r.kind = WeightKind::general;
    return r;
}

/// Restrict a weight to a smaller grid with the same base.
inline Weight restrict_weight(const Weight& w, const Grid& g)
{
    if (!w.covers(g)) throw GridMismatch("weight: does not cover the requested grid");
    Weight r{g, std::vector<double>(g.size()), w.kind, w.rate};
    for (int m = g.first(); m <= g.last(); ++m) r.values[g.slot(m)] = w.at(m);
    return r;
}

/// Same samples on a grid with fewer history points or a shorter horizon.
inline Signal restrict_signal(const Signal& x, const Grid& g)
{
    if (g.a != x.grid.a || g.history > x.grid.history || g.horizon > x.grid.horizon)
        throw GridMismatch("signal: target grid is not contained in the source grid");
    Signal r(g);
    for (int m = g.first(); m <= g.last(); ++m) r.at(m) = x.at(m);
    return r;
}

/// Extend a signal living on N_{a+1} with zeros at a, a-1, ..., a-history.
inline Signal zero_extend(const Signal& y, int history)
{
    Grid g(y.grid.a, history, y.grid.horizon);
    Signal r(g);
    for (int m = 1; m <= g.last(); ++m) r.at(m) = y.at(m);
    return r;
}

/// Re-base a signal at a' = a - shift, keeping every stored sample.
inline Signal rebase(const Signal& x, int shift)
{
    if (shift < 0 || shift > x.grid.history) throw InsufficientHistory("rebase: not enough history");
    Grid g(x.grid.a - shift, x.grid.history - shift, x.grid.horizon + shift);
    return Signal(g, x.values);
}

inline Weight rebase(const Weight& w, int shift)
{
    if (shift < 0 || shift > w.grid.history) throw InsufficientHistory("rebase: not enough history");
    Grid g(w.grid.a - shift, w.grid.history - shift, w.grid.horizon + shift);
    Weight r{g, w.values, WeightKind::general, 0.0};
    return r;
}

inline Signal pointwise(const Signal& x, const Signal& y, const std::function<double(double, double)>& op)
{
    if (!(x.grid == y.grid)) throw GridMismatch("signals live on different grids");
    Signal r(x.grid);
    for (std::size_t i = 0; i < r.values.size(); ++i) r.values[i] = op(x.values[i], y.values[i]);
    return r;
}

}  // namespace ntfc
