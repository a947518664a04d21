// nt: command-line front end for the tempered nabla operators.
//
// Exit status: 0 ok, 1 a verification failed, 2 bad configuration or input,
// 3 numerical failure.

#include <cmath>
#include <filesystem>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "ntfc/cases.hpp"
#include "ntfc/csv.hpp"
#include "ntfc/laplace.hpp"
#include "ntfc/operators.hpp"
#include "ntfc/repro.hpp"
#include "ntfc/suite.hpp"
#include "ntfc/taylor.hpp"

namespace {

using namespace ntfc;

enum Exit { kOk = 0, kVerifyFail = 1, kConfig = 2, kNumeric = 3 };

struct GridArgs {
    double a = 0.0;
    int N = 100;
    int history = -1;  // -1: just enough for the requested operator
};

struct SourceArgs {
    std::string signal = "sin10k";
    std::string weight = "one";
    GridArgs grid;
};

void add_source_options(CLI::App* cmd, SourceArgs& s)
{
    cmd->add_option("--signal", s.signal, "built-in signal name or k,value CSV path");
    cmd->add_option("--weight", s.weight, "built-in weight name or k,value CSV path");
    cmd->add_option("--a", s.grid.a, "base point");
    cmd->add_option("--N", s.grid.N, "horizon (number of points after a)")->check(CLI::PositiveNumber);
    cmd->add_option("--history", s.grid.history, "points kept at and before a")->check(CLI::NonNegativeNumber);
}

/// A CSV signal fixes its own grid; built-ins use a, N and history.
std::pair<Signal, Weight> load_source(const SourceArgs& s, int min_history)
{
    Grid g(s.grid.a, std::max(s.grid.history, min_history), s.grid.N);
    Signal x(g);
    if (is_builtin_signal(s.signal)) {
        x = builtin_signal(s.signal, g);
    } else {
        const CsvSeries series = parse_csv_series(read_file(s.signal));
        g = grid_from_series(series, s.grid.a);
        if (g.history < min_history) throw InsufficientHistory("signal file has too few samples at and before a");
        x = signal_from_series(series, g);
    }
    Weight w = is_builtin_weight(s.weight) ? builtin_weight(s.weight, g)
                                           : weight_from_series(parse_csv_series(read_file(s.weight)), g);
    return {x, w};
}

OpKind parse_kind(const std::string& k)
{
    if (k == "gl") return OpKind::GL;
    if (k == "rl") return OpKind::RL;
    if (k == "caputo") return OpKind::Caputo;
    if (k == "nabla") return OpKind::IntegerNabla;
    throw ConfigError("unknown operator kind '" + k + "'");
}

void emit(const std::string& out, const std::string& text)
{
    if (out.empty() || out == "-")
        std::cout << text;
    else
        write_atomic(out, text);
}

int order_history(double order) { return std::max(0, static_cast<int>(std::ceil(order))); }

struct EvalArgs {
    std::string kind = "gl";
    double order = 0.5;
    SourceArgs src;
    std::string out;
};

int cmd_eval(const EvalArgs& e)
{
    auto [x, w] = load_source(e.src, order_history(e.order));
    const Signal y = apply(OperatorSpec{parse_kind(e.kind), e.order, w}, x);
    emit(e.out, signal_table(y).str());
    return kOk;
}

struct TaylorArgs {
    std::string base = "initial";
    std::string kind = "gl";
    double order = 0.5;
    int K = 4;
    SourceArgs src;
    std::string out;
};

/// Columns k, direct operator, Taylor representation, their difference.
int cmd_taylor(const TaylorArgs& t)
{
    auto [x, w] = load_source(t.src, std::max(order_history(t.order), t.K + 1));
    const OperatorSpec spec{parse_kind(t.kind), t.order, w};
    const Signal direct = apply(spec, x);
    Signal rep(direct.grid);
    if (t.base == "initial")
        rep = tempered_op_taylor_initial(x, spec, t.K);
    else if (t.base == "current")
        rep = tempered_op_taylor_current(x, spec);
    else if (t.base == "future")
        rep = tempered_op_taylor_future(x, spec, t.K);
    else
        throw ConfigError("unknown expansion base '" + t.base + "'");
    CsvTable tab{{"k", "direct", "taylor", "difference"}, {}};
    for (int m = 1; m <= direct.horizon(); ++m)
        tab.rows.push_back({direct.grid.lattice(m), direct.at(m), rep.at(m), rep.at(m) - direct.at(m)});
    emit(t.out, tab.str());
    return kOk;
}

struct LaplaceArgs {
    SourceArgs src;
    double s_re = 0.9, s_im = 0.0;
    std::string rule;
    double lambda = 0.0;
    double order = 0.5;
    std::string out;
};

/// Without --rule prints the transform; with it, checks the tempered rule.
int cmd_laplace(const LaplaceArgs& l)
{
    auto [x, w] = load_source(l.src, order_history(l.order));
    const cplx s(l.s_re, l.s_im);
    nlohmann::json j;
    int status = kOk;
    if (l.rule.empty()) {
        const LaplaceEval e = nlt(x, s, x.horizon());
        j = {{"s_re", s.real()}, {"s_im", s.imag()}, {"re", e.value.real()}, {"im", e.value.imag()},
             {"terms_used", e.terms_used}, {"converged", e.converged}};
    } else {
        IdentityReport r;
        if (l.rule == "gl")
            r = check_transform_rule_gl(x, l.order, l.lambda, s);
        else if (l.rule == "int")
            r = check_transform_rule_diff(x, RuleKind::integer, l.order, l.lambda, s);
        else if (l.rule == "rl")
            r = check_transform_rule_diff(x, RuleKind::rl, l.order, l.lambda, s);
        else if (l.rule == "caputo")
            r = check_transform_rule_diff(x, RuleKind::caputo, l.order, l.lambda, s);
        else
            throw ConfigError("unknown transform rule '" + l.rule + "'");
        j = suite::to_json(suite::Entry{"laplace", true, 1, 0, r});
        if (!r.pass) status = kVerifyFail;
    }
    emit(l.out, j.dump(2) + "\n");
    return status;
}

struct SolveArgs {
    double alpha = 0.5, mu = -0.2, x0 = 1.0, a = 0.0;
    int N = 50;
    std::string weight = "one";
    std::string out;
};

int cmd_solve(const SolveArgs& s)
{
    const Grid g(s.a, 0, s.N);
    const Weight w = is_builtin_weight(s.weight) ? builtin_weight(s.weight, g)
                                                 : weight_from_series(parse_csv_series(read_file(s.weight)), g);
    const Signal x = fde_solve(s.alpha, s.mu, w, s.x0, s.N);
    emit(s.out, signal_table(x, 0).str());
    return kOk;
}

struct VerifyArgs {
    suite::Options opt;
    std::string out;
};

int cmd_verify(VerifyArgs v)
{
    v.opt.tol_scale = suite::tolerance_scale_from_env();
    const suite::Result res = suite::run_suite(v.opt);
    emit(v.out, suite::to_json(res).dump(2) + "\n");
    for (const auto& e : res.entries)
        if (!e.report.pass)
            std::cerr << (e.gating ? "FAIL " : "note ") << e.report.id << " max_abs_dev=" << e.report.max_abs_dev
                      << " tolerance=" << e.report.tolerance << "\n";
    return res.all_pass() ? kOk : kVerifyFail;
}

int cmd_repro(const std::string& target, const std::string& outdir)
{
    const auto files = repro::target(target);
    std::error_code ec;
    std::filesystem::create_directories(outdir, ec);
    if (ec) throw ConfigError("cannot create '" + outdir + "'");
    for (const auto& [name, table] : files) write_atomic(std::filesystem::path(outdir) / name, table.str());
    return kOk;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"tempered nabla fractional operators"};
    app.require_subcommand(1);

    EvalArgs ev;
    auto* eval = app.add_subcommand("eval", "apply an operator and write k,value CSV");
    eval->add_option("--kind", ev.kind, "gl|rl|caputo|nabla");
    eval->add_option("--order", ev.order, "operator order");
    add_source_options(eval, ev.src);
    eval->add_option("--out", ev.out, "output path (stdout if omitted)");

    VerifyArgs vf;
    auto* verify = app.add_subcommand("verify", "run the seeded identity suite");
    verify->add_option("--seed", vf.opt.seed);
    verify->add_option("--only", vf.opt.only, "identity id or group name");
    verify->add_option("--perturb", vf.opt.perturb, "offset injected into the RL output of gl_rl_equivalence");
    verify->add_option("--out", vf.out, "JSON report path (stdout if omitted)");

    TaylorArgs ty;
    auto* taylor = app.add_subcommand("taylor", "compare an operator with a Taylor representation");
    taylor->add_option("--base", ty.base, "initial|current|future");
    taylor->add_option("--kind", ty.kind, "gl|rl|caputo|nabla");
    taylor->add_option("--order", ty.order);
    taylor->add_option("--K", ty.K, "expansion degree")->check(CLI::NonNegativeNumber);
    add_source_options(taylor, ty.src);
    taylor->add_option("--out", ty.out);

    LaplaceArgs lp;
    lp.src.grid.N = 3000;  // long horizon so the truncated transform converges
    auto* laplace = app.add_subcommand("laplace", "nabla Laplace transform and tempered transform rules");
    add_source_options(laplace, lp.src);
    laplace->add_option("--s-re", lp.s_re);
    laplace->add_option("--s-im", lp.s_im);
    laplace->add_option("--rule", lp.rule, "gl|rl|caputo|int");
    laplace->add_option("--lambda", lp.lambda);
    laplace->add_option("--order", lp.order);
    laplace->add_option("--out", lp.out);

    SolveArgs sv;
    auto* solve = app.add_subcommand("solve", "solve the tempered Caputo equation D x = mu x");
    solve->add_option("--alpha", sv.alpha);
    solve->add_option("--mu", sv.mu);
    solve->add_option("--weight", sv.weight);
    solve->add_option("--x0", sv.x0);
    solve->add_option("--a", sv.a);
    solve->add_option("--N", sv.N)->check(CLI::PositiveNumber);
    solve->add_option("--out", sv.out);

    std::string target, outdir = ".";
    auto* repro = app.add_subcommand("repro", "write the sin(10k) experiment data as CSV");
    repro->add_option("target", target, "fig1|fig2|fig3|fig4|error-table")->required();
    repro->add_option("--outdir", outdir);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kConfig;
    }

    try {
        if (*eval) return cmd_eval(ev);
        if (*verify) return cmd_verify(vf);
        if (*taylor) return cmd_taylor(ty);
        if (*laplace) return cmd_laplace(lp);
        if (*solve) return cmd_solve(sv);
        if (*repro) return cmd_repro(target, outdir);
    } catch (const ConfigError& e) {
        std::cerr << "nt: " << e.what() << "\n";
        return kConfig;
    } catch (const NumericError& e) {
        std::cerr << "nt: " << e.what() << "\n";
        return kNumeric;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "nt: " << e.what() << "\n";
        return kNumeric;
    } catch (const std::exception& e) {
        std::cerr << "nt: " << e.what() << "\n";
        return kNumeric;
    }
    return kConfig;
}
