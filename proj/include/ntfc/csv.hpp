#pragma once
/**
 * `k,value` CSV files: k ascending with unit step, numbers printed as the
 * shortest decimal that round-trips.
 */

#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "cases.hpp"
#include "signals.hpp"

namespace ntfc {

inline std::string format_real(double v)
{
    char buf[64];
    auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
    if (ec != std::errc()) throw ConfigError("cannot format number");
    return std::string(buf, p);
}

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;

    std::string str() const
    {
        std::string out;
        for (std::size_t i = 0; i < header.size(); ++i) out += (i ? "," : "") + header[i];
        out += '\n';
        for (const auto& r : rows) {
            for (std::size_t i = 0; i < r.size(); ++i) out += (i ? "," : "") + format_real(r[i]);
            out += '\n';
        }
        return out;
    }
};

/// Write to a sibling temporary and rename, so a failed run leaves no partial file.
inline void write_atomic(const std::filesystem::path& path, const std::string& content)
{
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f) throw ConfigError("cannot open '" + tmp.string() + "' for writing");
        f << content;
        f.flush();
        if (!f) throw ConfigError("write to '" + tmp.string() + "' failed");
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp, ec);
        throw ConfigError("cannot rename onto '" + path.string() + "'");
    }
}

/// Rows k = a+from .. a+N of a signal.
inline CsvTable signal_table(const Signal& x, int from = 1)
{
    CsvTable t{{"k", "value"}, {}};
    for (int m = from; m <= x.horizon(); ++m) t.rows.push_back({x.grid.lattice(m), x.at(m)});
    return t;
}

struct CsvSeries {
    std::vector<double> k;
    std::vector<double> value;
};

inline CsvSeries parse_csv_series(const std::string& text)
{
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line)) throw ParseError("csv: empty input");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != "k,value") throw ParseError("csv: header must be 'k,value'");
    CsvSeries s;
    int lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        auto c = line.find(',');
        if (c == std::string::npos || line.find(',', c + 1) != std::string::npos)
            throw ParseError("csv: line " + std::to_string(lineno) + " needs exactly two fields");
        double k = parse_real(std::string_view(line).substr(0, c));
        double v = parse_real(std::string_view(line).substr(c + 1));
        if (!s.k.empty()) {
            double step = k - s.k.back();
            if (std::abs(step - 1.0) > 1e-9)
                throw ParseError("csv: line " + std::to_string(lineno) + " breaks the unit step");
        }
        s.k.push_back(k);
        s.value.push_back(v);
    }
    if (s.k.empty()) throw ParseError("csv: no data rows");
    return s;
}

inline std::string read_file(const std::filesystem::path& p)
{
    std::ifstream f(p, std::ios::binary);
    if (!f) throw ConfigError("cannot read '" + p.string() + "'");
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

/// Place CSV samples on the grid with base a; the file fixes history and horizon.
inline Grid grid_from_series(const CsvSeries& s, double a)
{
    const double h = a - s.k.front(), N = s.k.back() - a;
    if (std::abs(h - std::nearbyint(h)) > 1e-9) throw ParseError("csv: k values are not on the lattice of a");
    if (h < 0) throw ParseError("csv: first k lies after the base point");
    if (N < 1) throw ParseError("csv: data must extend past the base point");
    return Grid(a, static_cast<int>(std::nearbyint(h)), static_cast<int>(std::nearbyint(N)));
}

inline Signal signal_from_series(const CsvSeries& s, const Grid& g)
{
    Signal x(g);
    const int off = static_cast<int>(std::nearbyint(s.k.front() - g.a));
    for (int m = g.first(); m <= g.last(); ++m) {
        int idx = m - off;
        if (idx < 0 || idx >= static_cast<int>(s.value.size())) throw ParseError("csv: file does not cover the grid");
        x.at(m) = s.value[idx];
    }
    return Signal(g, x.values);
}

inline Weight weight_from_series(const CsvSeries& s, const Grid& g)
{
    Signal x = signal_from_series(s, g);
    return make_weight(g, x.values);
}

}  // namespace ntfc
