#pragma once
/**
 * Data behind the sin(10k) experiments: the decaying-weight divergence, the
 * four weight cases under GL, their errors against case 1, GL/RL/Caputo per
 * case, and the GL minus RL error table. a = 0, k = 1..100.
 */

#include <map>
#include <string>

#include "cases.hpp"
#include "csv.hpp"
#include "operators.hpp"

namespace ntfc::repro {

inline constexpr int kHorizon = 100;
inline const char* const kCases[] = {"case1", "case2", "case3", "case4"};

inline Grid grid() { return Grid(0.0, 1, kHorizon); }
inline Signal signal() { return builtin_signal("sin10k", grid()); }

inline CsvTable gl_columns(const char* const* weights, std::size_t count, double alpha)
{
    const Signal x = signal();
    CsvTable t{{"k"}, {}};
    std::vector<Signal> cols;
    for (std::size_t c = 0; c < count; ++c) {
        t.header.push_back(weights[c]);
        cols.push_back(gl_tempered(x, alpha, builtin_weight(weights[c], x.grid)));
    }
    for (int m = 1; m <= kHorizon; ++m) {
        std::vector<double> row{x.grid.lattice(m)};
        for (const auto& s : cols) row.push_back(s.at(m));
        t.rows.push_back(std::move(row));
    }
    return t;
}

/// One file per weight, columns for alpha = 0.5 and -0.5.
inline std::map<std::string, CsvTable> fig1()
{
    std::map<std::string, CsvTable> out;
    const Signal x = signal();
    for (const char* name : {"halfgeom", "halfgeom+eps"}) {
        const Weight w = builtin_weight(name, x.grid);
        const Signal p = gl_tempered(x, 0.5, w), q = gl_tempered(x, -0.5, w);
        CsvTable t{{"k", "alpha_0.5", "alpha_-0.5"}, {}};
        for (int m = 1; m <= kHorizon; ++m) t.rows.push_back({x.grid.lattice(m), p.at(m), q.at(m)});
        out[std::string("fig1_") + (std::string(name) == "halfgeom" ? "halfgeom" : "halfgeom_eps") + ".csv"] = t;
    }
    return out;
}

inline std::map<std::string, CsvTable> fig2()
{
    return {{"fig2_alpha_0.5.csv", gl_columns(kCases, 4, 0.5)}, {"fig2_alpha_-0.5.csv", gl_columns(kCases, 4, -0.5)}};
}

/// Case i minus case 1 of the GL output.
inline std::map<std::string, CsvTable> fig3()
{
    std::map<std::string, CsvTable> out;
    for (double alpha : {0.5, -0.5}) {
        CsvTable t = gl_columns(kCases, 4, alpha);
        for (auto& row : t.rows) {
            const double base = row[1];
            for (std::size_t c = 1; c < row.size(); ++c) row[c] -= base;
        }
        for (std::size_t c = 1; c < t.header.size(); ++c) t.header[c] += "_minus_case1";
        out[alpha > 0 ? "fig3_alpha_0.5.csv" : "fig3_alpha_-0.5.csv"] = t;
    }
    return out;
}

/// GL, RL and Caputo of order 0.5 for each case.
inline std::map<std::string, CsvTable> fig4()
{
    std::map<std::string, CsvTable> out;
    const Signal x = signal();
    for (const char* name : kCases) {
        const Weight w = builtin_weight(name, x.grid);
        const Signal g = gl_tempered(x, 0.5, w), r = rl_tempered(x, 0.5, w), c = caputo_tempered(x, 0.5, w);
        CsvTable t{{"k", "gl", "rl", "caputo"}, {}};
        for (int m = 1; m <= kHorizon; ++m) t.rows.push_back({x.grid.lattice(m), g.at(m), r.at(m), c.at(m)});
        out[std::string("fig4_") + name + ".csv"] = t;
    }
    return out;
}

/// Rows (case, min, max) of GL - RL at alpha = 0.5.
inline CsvTable error_table()
{
    const Signal x = signal();
    CsvTable t{{"case", "min", "max"}, {}};
    for (int c = 0; c < 4; ++c) {
        const Weight w = builtin_weight(kCases[c], x.grid);
        const Signal g = gl_tempered(x, 0.5, w), r = rl_tempered(x, 0.5, w);
        double lo = 0.0, hi = 0.0;
        for (int m = 1; m <= kHorizon; ++m) {
            const double d = g.at(m) - r.at(m);
            if (m == 1 || d < lo) lo = d;
            if (m == 1 || d > hi) hi = d;
        }
        t.rows.push_back({static_cast<double>(c + 1), lo, hi});
    }
    return t;
}

inline std::map<std::string, CsvTable> target(const std::string& name)
{
    if (name == "fig1") return fig1();
    if (name == "fig2") return fig2();
    if (name == "fig3") return fig3();
    if (name == "fig4") return fig4();
    if (name == "error-table") return {{"error_table.csv", error_table()}};
    throw ConfigError("unknown repro target '" + name + "'");
}

}  // namespace ntfc::repro
