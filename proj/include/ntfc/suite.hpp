#pragma once
/**
 * Seeded verification suite: random instances for every checker, merged per
 * identity id in a fixed order, serialized to JSON.
 *
 * Random numbers come from mt19937_64 with a hand-written mapping to reals,
 * so a seed gives the same instances on every platform (the standard
 * distributions are implementation-defined).
 */

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <map>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "cases.hpp"
#include "identities.hpp"
#include "laplace.hpp"
#include "taylor.hpp"

namespace ntfc::suite {

class Rng {
public:
    explicit Rng(std::uint64_t seed) : g_(seed) {}
    std::uint64_t next() { return g_(); }
    /// Uniform on [lo, hi) from the top 53 bits.
    double uniform(double lo, double hi) { return lo + (hi - lo) * (static_cast<double>(g_() >> 11) * 0x1.0p-53); }
    int integer(int lo, int hi) { return lo + static_cast<int>(g_() % static_cast<std::uint64_t>(hi - lo + 1)); }
    bool coin() { return (g_() >> 63) != 0; }
    double sign() { return coin() ? 1.0 : -1.0; }

private:
    std::mt19937_64 g_;
};

struct Options {
    std::uint64_t seed = 20240607;
    std::string only;        // identity id or group name; empty runs everything
    double perturb = 0.0;    // added to the RL output inside gl_rl_equivalence
    double tol_scale = 1.0;  // multiplies every tolerance
    int instances = 100;     // random instances for the exact-identity group
};

/// NT_TOLERANCE_SCALE, default 1.
inline double tolerance_scale_from_env()
{
    const char* s = std::getenv("NT_TOLERANCE_SCALE");
    if (!s || !*s) return 1.0;
    const double v = parse_real(s);
    if (!(v > 0.0) || !std::isfinite(v)) throw ConfigError("NT_TOLERANCE_SCALE must be a positive number");
    return v;
}

struct Entry {
    std::string group;
    bool gating = true;
    int instances = 0;
    int worst_instance = 0;
    IdentityReport report;
};

struct GroupTiming {
    std::string name;
    double seconds = 0.0;
};

struct Result {
    Options options;
    std::vector<Entry> entries;
    std::vector<GroupTiming> timings;

    bool all_pass() const
    {
        for (const auto& e : entries)
            if (e.gating && !e.report.pass) return false;
        return true;
    }
    bool group_pass(const std::string& g) const
    {
        bool any = false;
        for (const auto& e : entries)
            if (e.group == g && e.gating) {
                any = true;
                if (!e.report.pass) return false;
            }
        return any;
    }
    const Entry* find(const std::string& id) const
    {
        for (const auto& e : entries)
            if (e.report.id == id) return &e;
        return nullptr;
    }
};

inline const std::vector<std::string>& group_names()
{
    static const std::vector<std::string> g{"identities", "limits", "taylor", "leibniz",
                                            "laplace",    "solver", "asymptotics", "diagnostics"};
    return g;
}

// ---- random instances -------------------------------------------------------

inline Signal random_signal(Rng& rng, const Grid& g)
{
    std::vector<double> v(g.size());
    for (auto& x : v) x = rng.uniform(-1.0, 1.0);
    return Signal(g, std::move(v));
}

/// Order in (lo, hi) away from integers by at least 1e-3.
inline double random_order(Rng& rng, double lo, double hi)
{
    while (true) {
        double a = rng.uniform(lo, hi);
        if (std::abs(a - std::nearbyint(a)) > 1e-3) return a;
    }
}

enum class WeightDraw {
    standard,  // the four cases times a scalar, narrow i.i.d., exponential
    wide_iid,  // i.i.d. magnitudes log-uniform over six decades
};

inline Weight random_weight(Rng& rng, const Grid& g, WeightDraw draw = WeightDraw::standard)
{
    if (draw == WeightDraw::wide_iid) {
        std::vector<double> v(g.size());
        for (auto& x : v) x = rng.sign() * std::pow(10.0, rng.uniform(-3.0, 3.0));
        return make_weight(g, std::move(v));
    }
    const int family = rng.integer(0, 5);
    const double scale = rng.sign() * std::pow(10.0, rng.uniform(-3.0, 3.0));
    if (family < 4) return scale_weight(builtin_weight(weight_case_name(family), g), scale);
    if (family == 4) {
        std::vector<double> v(g.size());
        for (auto& x : v) x = rng.sign() * std::pow(10.0, rng.uniform(-0.3, 0.3));
        return make_weight(g, std::move(v));
    }
    return scale_weight(make_exponential_weight(g, rng.uniform(-1.0, 0.0)), scale);
}

// ---- runner -----------------------------------------------------------------

class Runner {
public:
    explicit Runner(Options o) : opt_(std::move(o)) { result_.options = opt_; }

    bool wanted(const std::string& group, const std::string& id) const
    {
        return opt_.only.empty() || opt_.only == id || opt_.only == group;
    }
    double tol(double t) const { return t * opt_.tol_scale; }
    const Options& options() const { return opt_; }

    /// Run fn if the id is selected and merge its report into the entry of that id.
    void run(const std::string& group, const std::string& id, int instance, const std::function<IdentityReport()>& fn,
             bool gating = true)
    {
        if (!wanted(group, id)) return;
        IdentityReport r = fn();
        r.id = id;
        r.seed = opt_.seed;
        merge(group, std::move(r), instance, gating);
    }

    void time_group(const std::string& name, const std::function<void()>& body)
    {
        const auto t0 = std::chrono::steady_clock::now();
        body();
        const auto t1 = std::chrono::steady_clock::now();
        result_.timings.push_back({name, std::chrono::duration<double>(t1 - t0).count()});
    }

    Result take() { return std::move(result_); }

private:
    void merge(const std::string& group, IdentityReport r, int instance, bool gating)
    {
        auto it = index_.find(r.id);
        if (it == index_.end()) {
            index_[r.id] = result_.entries.size();
            result_.entries.push_back({group, gating, 1, instance, std::move(r)});
            return;
        }
        Entry& e = result_.entries[it->second];
        ++e.instances;
        const bool worse = !(r.max_abs_dev <= e.report.max_abs_dev) || (!r.pass && e.report.pass);
        const bool pass = e.report.pass && r.pass;
        if (worse) {
            e.report = std::move(r);
            e.worst_instance = instance;
        }
        e.report.pass = pass;
    }

    Options opt_;
    Result result_;
    std::map<std::string, std::size_t> index_;
};

/// Max |p - q| over offsets 1..N as a report.
inline IdentityReport compare(const Signal& p, const Signal& q, double tol, int from = 1)
{
    IdentityReport r;
    r.tolerance = tol;
    for (int m = from; m <= p.horizon(); ++m) r.add(p.grid.lattice(m), std::abs(p.at(m) - q.at(m)));
    return r.finish();
}

inline const char* kind_tag(OpKind k)
{
    switch (k) {
        case OpKind::IntegerNabla: return "nabla";
        case OpKind::GL: return "gl";
        case OpKind::RL: return "rl";
        case OpKind::Caputo: return "caputo";
    }
    return "?";
}

// ---- groups -----------------------------------------------------------------

inline void exact_identities(Runner& run, Rng& master, int count, WeightDraw draw, const std::string& group,
                             const std::string& suffix)
{
    const bool gating = group != "diagnostics";
    for (int inst = 0; inst < count; ++inst) {
        Rng rng(master.next());
        const Grid g(rng.uniform(-3.0, 3.0), 3, rng.integer(8, 64));
        const Signal x = random_signal(rng, g);
        const Weight w = random_weight(rng, g, draw);
        const double alpha = random_order(rng, 0.0, 2.0);
        const int n = fractional_n(alpha);
        const int mixed_n = n + rng.integer(0, 1);
        const int mdeg = rng.integer(0, n - 1);
        const int defect_n = rng.integer(1, 3);
        const double scale = rng.sign() * std::pow(10.0, rng.uniform(-3.0, 3.0));
        const double perturb = run.options().perturb;

        run.run(group, "gl_rl_equivalence" + suffix, inst, [&] {
            auto r = detail::make_report("gl_rl_equivalence", run.tol(1e-12), {{"alpha", alpha}, {"N", g.horizon}});
            const Signal p = gl_tempered(x, alpha, w), q = rl_tempered(x, alpha, w);
            for (int m = 1; m <= g.horizon; ++m) r.add(g.lattice(m), std::abs(p.at(m) - (q.at(m) + perturb)));
            if (perturb != 0.0) r.note = "rl output perturbed";
            return r.finish();
        }, gating);
        if (!suffix.empty()) {
            run.run(group, "difference_of_sum" + suffix, inst,
                    [&] { return check_difference_of_sum(x, alpha, w, run.tol(1e-11)); }, gating);
            continue;
        }
        run.run(group, "rl_caputo_correction", inst, [&] { return check_rl_caputo_correction(x, alpha, w, run.tol(1e-11)); });
        run.run(group, "sum_composition", inst, [&] { return check_sum_composition(x, alpha, w, run.tol(1e-11)); });
        run.run(group, "difference_of_sum", inst, [&] { return check_difference_of_sum(x, alpha, w, run.tol(1e-11)); });
        run.run(group, "sum_of_difference_rl", inst,
                [&] { return check_sum_of_difference(x, alpha, w, FracKind::RL, run.tol(1e-11)); });
        run.run(group, "sum_of_difference_caputo", inst,
                [&] { return check_sum_of_difference(x, alpha, w, FracKind::Caputo, run.tol(1e-11)); });
        for (auto f : {MixedForm::rl_of_caputo, MixedForm::rl_of_caputo_swapped, MixedForm::caputo_of_rl,
                       MixedForm::caputo_of_rl_swapped})
            run.run(group, to_string(f), inst,
                    [&] { return check_mixed_composition(x, mixed_n, alpha, w, f, run.tol(1e-11)); });
        run.run(group, "taylor_remainder_forms", inst,
                [&] { return check_taylor_remainder_forms(x, alpha, w, mdeg, run.tol(1e-11)); });
        run.run(group, "gl_integer_defect", inst, [&] { return check_gl_integer_defect(x, defect_n, w, run.tol(1e-11)); });
        run.run(group, "scale_invariance", inst,
                [&] { return check_scale_invariance(x, alpha, w, scale, run.tol(1e-12)); });
        run.run(group, "uniform_convergence_exchange", inst, [&] {
            std::vector<Signal> xs;
            const Signal noise = random_signal(rng, g);
            for (int i = 1; i <= 6; ++i) {
                Signal xi = x;
                for (std::size_t s = 0; s < xi.values.size(); ++s) xi.values[s] += std::ldexp(noise.values[s], -i);
                xs.push_back(std::move(xi));
            }
            return check_uniform_convergence_exchange(xs, x, alpha, w, run.tol(1e-12));
        });
    }
}

inline void limits(Runner& run, Rng& master, int count)
{
    const std::string group = "limits";
    for (int inst = 0; inst < count; ++inst) {
        Rng rng(master.next());
        const Grid g(rng.uniform(-3.0, 3.0), 3, rng.integer(16, 40));
        const Signal x = random_signal(rng, g);
        const Weight w = random_weight(rng, g);
        const int n = rng.integer(1, 2);
        run.run(group, "order_limit_sum", inst, [&] {
            auto r = check_order_limit_sum(x, w);
            r.tolerance = run.tol(r.tolerance);
            return r.finish();
        });
        for (auto k : {FracKind::RL, FracKind::Caputo})
            for (auto side : {LimitSide::at_n, LimitSide::at_n_minus_1}) {
                std::string id = std::string("order_limit_") + (k == FracKind::RL ? "rl" : "caputo") +
                                 (side == LimitSide::at_n ? "_at_n" : "_at_n_minus_1");
                run.run(group, id, inst,
                        [&] { return check_order_limit_diff(x, w, n, side, k, default_diff_eps(), run.tol(1e-5)); });
            }
    }
}

inline OperatorSpec random_spec(Rng& rng, OpKind kind, const Weight& w)
{
    switch (kind) {
        case OpKind::IntegerNabla: return {kind, static_cast<double>(rng.integer(1, 2)), w};
        case OpKind::GL: return {kind, random_order(rng, -2.0, 2.0), w};
        default: return {kind, random_order(rng, 0.0, 2.0), w};
    }
}

inline void taylor_group(Runner& run, Rng& master, int count)
{
    const std::string group = "taylor";
    const double tol = run.tol(1e-10);
    for (int inst = 0; inst < count; ++inst) {
        Rng rng(master.next());
        const Grid g(rng.uniform(-3.0, 3.0), 8, rng.integer(8, 24));
        const Signal x = random_signal(rng, g);
        const Weight w = random_weight(rng, g);
        const int K0 = rng.integer(0, 4);
        run.run(group, "taylor_initial_x", inst, [&] {
            return compare(taylor_initial(x, K0).reconstruct(), restrict_signal(x, Grid(g.a, 0, g.horizon)), tol);
        });
        for (OpKind kind : {OpKind::IntegerNabla, OpKind::GL, OpKind::RL, OpKind::Caputo}) {
            const OperatorSpec spec = random_spec(rng, kind, w);
            const int n = kind == OpKind::GL ? 0 : static_cast<int>(std::ceil(spec.order));
            const Signal direct = apply(spec, x);
            const int K = rng.integer(n + 1, 6);
            const std::string tag = kind_tag(kind);
            run.run(group, "taylor_initial_" + tag, inst,
                    [&] { return compare(tempered_op_taylor_initial(x, spec, K), direct, tol); });
            run.run(group, "taylor_current_" + tag, inst,
                    [&] { return compare(tempered_op_taylor_current(x, spec), direct, tol); });
            if (kind != OpKind::IntegerNabla)
                run.run(group, "taylor_future_" + tag, inst,
                        [&] { return compare(tempered_op_taylor_future(x, spec, K), direct, tol); });
        }
        run.run(group, "taylor_current_round_trip", inst, [&] {
            const Grid h(g.a, 16, 16);
            const Signal y = random_signal(rng, h);
            IdentityReport r;
            r.tolerance = tol;
            for (int k = -16; k <= 16; ++k)
                for (int j = -16; j <= k; ++j) r.add(h.lattice(k), std::abs(taylor_current_value(y, j, k) - y.at(j)));
            return r.finish();
        });
    }
}

inline void leibniz_group(Runner& run, Rng& master, int count)
{
    const std::string group = "leibniz";
    for (int inst = 0; inst < count; ++inst) {
        Rng rng(master.next());
        const Grid g(rng.uniform(-3.0, 3.0), 3, rng.integer(8, 32));
        const Signal f = random_signal(rng, g), h = random_signal(rng, g);
        const Weight w = random_weight(rng, g);
        for (OpKind kind : {OpKind::IntegerNabla, OpKind::GL, OpKind::RL, OpKind::Caputo}) {
            const OperatorSpec spec = random_spec(rng, kind, w);
            run.run(group, std::string("leibniz_") + kind_tag(kind), inst,
                    [&] { return check_leibniz(f, h, spec, run.tol(1e-10)); });
        }
    }
}

inline cplx sample_s(Rng& rng, double lambda)
{
    const double rho = rng.uniform(0.05, 0.5) * std::min(1.0, std::abs(1.0 - lambda));
    const double th = rng.uniform(0.0, 2.0 * std::numbers::pi);
    return 1.0 + std::polar(rho, th);
}

inline void laplace_group(Runner& run, Rng& master, int count)
{
    const std::string group = "laplace";
    for (int inst = 0; inst < count; ++inst) {
        Rng rng(master.next());
        const Grid g(rng.uniform(-3.0, 3.0), 3, 3000);
        const Signal x = random_signal(rng, g);
        double lambda = rng.uniform(-0.9, 0.9);
        const cplx s = sample_s(rng, lambda);
        const double tol = run.tol(1e-7);
        const double agl = random_order(rng, -2.0, 2.0), afr = random_order(rng, 0.0, 3.0);
        const int nint = rng.integer(1, 3);
        run.run(group, "transform_rule_gl", inst, [&] { return check_transform_rule_gl(x, agl, lambda, s, 1.0, tol); });
        run.run(group, "transform_rule_integer", inst,
                [&] { return check_transform_rule_diff(x, RuleKind::integer, nint, lambda, s, 1.0, tol); });
        run.run(group, "transform_rule_rl", inst,
                [&] { return check_transform_rule_diff(x, RuleKind::rl, afr, lambda, s, 1.0, tol); });
        run.run(group, "transform_rule_caputo", inst,
                [&] { return check_transform_rule_diff(x, RuleKind::caputo, afr, lambda, s, 1.0, tol); });

        const Grid gc(g.a, 3, rng.integer(8, 40));
        const Signal p = random_signal(rng, gc), q = random_signal(rng, gc);
        const double lc = rng.uniform(-1.0, 0.1);
        const double ctol = run.tol(1e-10);
        run.run(group, "convolution_commutation", inst,
                [&] { return check_convolution_commutation(p, q, agl, lc, ctol); });
        run.run(group, "convolution_ic_integer", inst,
                [&] { return check_convolution_with_ic(p, q, RuleKind::integer, nint, lc, ctol); });
        run.run(group, "convolution_ic_rl", inst,
                [&] { return check_convolution_with_ic(p, q, RuleKind::rl, afr, lc, ctol); });
    }
}

/**
 * Solver against the Mittag-Leffler solution w(a)/w(k) F(k) x(a) over the
 * (alpha, mu) grid. Deviations are |x - ref| / max(1, |ref|): growing
 * trajectories reach 1e13 at N = 50, where 1e-10 is below one ulp.
 */
inline void solver_group(Runner& run, Rng& master)
{
    const std::string group = "solver";
    const int N = 50;
    int inst = 0;
    for (const char* wn : {"one", "case1", "case3"}) {
        Rng rng(master.next());
        const Grid g(0.0, 0, N);
        const Weight w = builtin_weight(wn, g);
        const double xa = rng.uniform(0.5, 2.0) * rng.sign();
        for (double alpha : {0.3, 0.5, 0.7, 0.9})
            for (double mu : {-0.5, -0.2, 0.2, 0.5}) {
                run.run(group, "fde_vs_mittag_leffler", inst++, [&] {
                    auto r = detail::make_report("fde_vs_mittag_leffler", run.tol(1e-10),
                                                 {{"alpha", alpha}, {"mu", mu}, {"x_a", xa}});
                    r.note = std::string("weight ") + wn + "; deviation relative to max(1, |reference|)";
                    const Signal x = fde_solve(alpha, mu, w, xa, N);
                    const Signal F = ml_function({alpha, 1.0, mu, 0.0}, N);
                    for (int m = 0; m <= N; ++m) {
                        const double ref = w.at(0) / w.at(m) * F.at(m) * xa;
                        r.add(g.lattice(m), std::abs(x.at(m) - ref) / std::max(1.0, std::abs(ref)));
                    }
                    return r.finish();
                });
            }
        for (double alpha : {0.3, 0.5, 0.7, 0.9})
            run.run(group, "fde_zero_rate", inst++, [&] {
                auto r = detail::make_report("fde_zero_rate", 0.0, {{"alpha", alpha}, {"x_a", xa}});
                r.note = std::string("weight ") + wn + "; exact equality required";
                const Signal x = fde_solve(alpha, 0.0, w, xa, N);
                for (int m = 0; m <= N; ++m) r.add(g.lattice(m), std::abs(x.at(m) - w.at(0) * xa / w.at(m)));
                return r.finish();
            });
    }
}

inline void asymptotics_group(Runner& run, Rng& master, int count)
{
    const std::string group = "asymptotics";
    for (int inst = 0; inst < count; ++inst) {
        Rng rng(master.next());
        const Grid g(rng.uniform(-3.0, 3.0), 2, 400);
        const Signal x = random_signal(rng, g);
        const Weight w = random_weight(rng, g);
        const double alpha = random_order(rng, 0.0, 2.0);
        run.run(group, "rl_caputo_asymptotics", inst,
                [&] { return check_rl_caputo_asymptotics(x, alpha, w, AsymptoticMode::large_k); });
        if (inst < 5) {
            const Grid ge(g.a, 102, 20);
            const Signal xe = random_signal(rng, ge);
            const Weight we = random_weight(rng, ge);
            run.run(group, "rl_caputo_early_base", inst,
                    [&] { return check_rl_caputo_asymptotics(xe, alpha, we, AsymptoticMode::early_a); });
        }
    }
}

inline Result run_suite(const Options& opt)
{
    Runner run(opt);
    Rng master(opt.seed);
    // each group draws from its own stream so --only does not shift other groups
    std::vector<std::uint64_t> seeds;
    for (std::size_t i = 0; i < group_names().size(); ++i) seeds.push_back(master.next());
    auto stream = [&](int i) { return Rng(seeds[i]); };

    run.time_group("identities", [&] {
        Rng r = stream(0);
        exact_identities(run, r, opt.instances, WeightDraw::standard, "identities", "");
    });
    run.time_group("limits", [&] { Rng r = stream(1); limits(run, r, 20); });
    run.time_group("taylor", [&] { Rng r = stream(2); taylor_group(run, r, 20); });
    run.time_group("leibniz", [&] { Rng r = stream(3); leibniz_group(run, r, 20); });
    run.time_group("laplace", [&] { Rng r = stream(4); laplace_group(run, r, 20); });
    run.time_group("solver", [&] { Rng r = stream(5); solver_group(run, r); });
    run.time_group("asymptotics", [&] { Rng r = stream(6); asymptotics_group(run, r, 20); });
    run.time_group("diagnostics", [&] {
        Rng r = stream(7);
        exact_identities(run, r, opt.instances, WeightDraw::wide_iid, "diagnostics", "_iid_wide");
    });
    Result res = run.take();
    if (!opt.only.empty() && res.entries.empty()) throw ConfigError("unknown identity id '" + opt.only + "'");
    return res;
}

// ---- JSON -------------------------------------------------------------------

inline nlohmann::json to_json(const Entry& e)
{
    const auto& r = e.report;
    nlohmann::json params = nlohmann::json::object();
    for (const auto& [k, v] : r.params) params[k] = v;
    nlohmann::json j{{"identity_id", r.id},
                     {"group", e.group},
                     {"gating", e.gating},
                     {"instances", e.instances},
                     {"worst_instance", e.worst_instance},
                     {"params", params},
                     {"max_abs_dev", r.max_abs_dev},
                     {"tolerance", r.tolerance},
                     {"pass", r.pass},
                     {"seed", r.seed}};
    j["argmax_k"] = std::isfinite(r.argmax_k) ? nlohmann::json(r.argmax_k) : nlohmann::json(nullptr);
    if (!r.note.empty()) j["note"] = r.note;
    if (!r.series.empty()) {
        nlohmann::json s = nlohmann::json::array();
        for (const auto& [p, d] : r.series) s.push_back({p, d});
        j["series"] = s;
    }
    return j;
}

/// Timings stay out of the report so identical seeds give identical bytes.
inline nlohmann::json to_json(const Result& res)
{
    nlohmann::json reports = nlohmann::json::array();
    for (const auto& e : res.entries) reports.push_back(to_json(e));
    return {{"seed", res.options.seed},
            {"tolerance_scale", res.options.tol_scale},
            {"perturb", res.options.perturb},
            {"only", res.options.only},
            {"all_pass", res.all_pass()},
            {"reports", reports}};
}

}  // namespace ntfc::suite
