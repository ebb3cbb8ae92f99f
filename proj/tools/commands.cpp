#include "commands.hpp"

#include <cmath>
#include <functional>
#include <map>

#include "wqed/merging.hpp"
#include "wqed/oracle.hpp"
#include "wqed/parallel.hpp"
#include "wqed/rng.hpp"
#include "wqed/zeno.hpp"

#ifndef WQED_GIT_HASH
#define WQED_GIT_HASH "unknown"
#endif

namespace wqed::cli {

namespace {

using Point = std::vector<std::pair<std::string, double>>;
using Handler = std::function<std::vector<Row>(const RunConfig&, std::size_t)>;

std::vector<Point> expand(const std::vector<Axis>& axes) {
    std::vector<Point> pts{{}};
    for (const auto& a : axes) {
        std::vector<Point> next;
        for (const auto& p : pts)
            for (double v : a.grid) {
                auto q = p;
                q.emplace_back(a.name, v);
                next.push_back(std::move(q));
            }
        pts = std::move(next);
    }
    return pts;
}

Row fields_row(const StepReport& r) {
    Row row;
    for (const auto& [k, v] : r.fields()) row.add(k, v);
    return row;
}

std::uint64_t require_seed(const RunConfig& c) {
    if (!c.seed) throw ConfigError("seed", "required for stochastic runs");
    return *c.seed;
}

ZenoParams zeno_params(const RunConfig& c) {
    return ZenoParams::optimal(c.k, c.params.N_d, c.params.P1d, c.params.gamma_star);
}

std::vector<Row> one(Row r) { return {std::move(r)}; }

std::vector<Row> protocol1(const RunConfig& c, std::size_t) {
    if (c.accumulate > 0) {
        const auto a = protocol1_accumulate(c.params, c.accumulate, c.same_level);
        Row r;
        r.add("R_m", a.R_m);
        r.add("I_m", a.I_m);
        return one(r);
    }
    return one(fields_row(c.numeric ? protocol1_numeric(c.params) : protocol1_step(c.params)));
}

std::vector<Row> protocol2(const RunConfig& c, std::size_t) {
    auto r = fields_row(protocol2_step(c.params));
    if (c.accumulate > 0) {
        const auto a = protocol2_accumulate(c.params, c.accumulate);
        r.add("R_m", a.R_m);
        r.add("I_m", a.I_m);
    }
    return one(r);
}

std::vector<Row> protocol3(const RunConfig& c, std::size_t) {
    auto r = fields_row(c.numeric ? protocol3_numeric(c.params, c.repeat_b) : protocol3_step(c.params, c.repeat_b));
    r.add("window", c.params.window_value());
    return one(r);
}

std::vector<Row> protocol4(const RunConfig& c, std::size_t) {
    Protocol4Drive d;
    d.ratio = c.ratio;
    auto r = fields_row(c.numeric ? protocol4_numeric(c.params, d) : protocol4_step(c.params, c.reference_s));
    r.add("p_4x4", protocol4_success(c.params, d));
    return one(r);
}

std::vector<Row> zeno_step(const RunConfig& c, std::size_t) {
    const auto zp = zeno_params(c);
    const auto j = zeno_jump_probabilities(zp);
    Row r;
    r.add("omega", zp.omega);
    r.add("T", zp.T);
    r.add("p_closed", zeno_success_probability(c.k, c.params.N_d, c.params.P1d));
    r.add("p_numeric", zeno_numeric_success(zp));
    r.add("p_a1", j.a1);
    r.add("p_a2", j.a2);
    r.add("p_b1", j.b1);
    r.add("p_b2", j.b2);
    r.add("p_collective", j.collective);
    r.add("bound_a1", j.bound_a1);
    r.add("bound_b1", j.bound_b1);
    r.add("closure", j.closure);
    return one(r);
}

std::vector<Row> pulse_shape(const RunConfig& c, std::size_t) {
    const auto res = optimize_pulse_shape(zeno_params(c), c.segments);
    Row r;
    r.add("p_pulse", res.p_pulse);
    r.add("p_constant", res.p_constant);
    r.add("omega_constant", res.omega_constant);
    r.add("ratio", res.ratio);
    r.add("converged", res.converged ? 1.0 : 0.0);
    r.add("evaluations", res.evaluations);
    for (std::size_t i = 0; i < res.shape.omega.size(); ++i)
        r.add("omega_" + std::to_string(i), res.shape.omega[i] / res.omega_constant);
    return one(r);
}

std::vector<Row> merge_plan(const RunConfig& c, std::size_t) {
    const auto kind = merge_kind_from_string(c.strategy);
    const long m = c.merge_m;
    const double p = c.merge_p;
    Row r;
    double lr = 0.0;
    long levels = 0;
    switch (kind) {
        case MergeKind::one_by_one:
            lr = one_by_one_log_Rm(m, p);
            levels = m - 1;
            break;
        case MergeKind::doubling:
            lr = doubling_log_Rm(m, p);
            levels = scheduler_simulate({kind, m, true}, p, 1, 0).levels;
            break;
        case MergeKind::number_resolved: {
            const auto plan = number_resolved_expected(m, p);
            lr = plan.log_R_final;
            levels = plan.levels;
            break;
        }
    }
    r.add("log_R_m", lr);
    r.add("R_m", std::exp(lr));
    r.add("levels", static_cast<double>(levels));
    return one(r);
}

std::vector<Row> merge_sim(const RunConfig& c, std::size_t idx) {
    const auto seed = splitmix64(require_seed(c) ^ splitmix64(idx));
    const long trials = c.trials > 0 ? c.trials : 10000;
    const auto s = scheduler_simulate({merge_kind_from_string(c.strategy), c.merge_m, c.worst_case}, c.merge_p, trials, seed);
    Row r;
    r.add("mean", s.mean);
    r.add("stddev", s.stddev);
    r.add("sem", s.sem);
    r.add("analytic", s.analytic);
    r.add("levels", static_cast<double>(s.levels));
    r.add("n_trials", static_cast<double>(s.n_trials));
    r.add("mean_final_count", s.mean_final_count);
    return one(r);
}

std::vector<Row> detect(const RunConfig& c, std::size_t) {
    const long m = c.params.m;
    if (c.pmf) {
        const auto a = counting_pmf({1.0, c.gt, m}), b = counting_pmf({1.0, c.gt, m + 1});
        std::vector<Row> rows;
        for (std::size_t n = 0; n < std::max(a.size(), b.size()); ++n) {
            Row r;
            r.add("n", static_cast<double>(n));
            r.add("P_m", n < a.size() ? a[n] : 0.0);
            r.add("P_m1", n < b.size() ? b[n] : 0.0);
            rows.push_back(r);
        }
        return rows;
    }
    Row r;
    r.add("lambda_m", static_cast<double>(m) * c.gt);
    r.add("lambda_m1", static_cast<double>(m + 1) * c.gt);
    r.add("threshold", discrimination_threshold(m, 1.0, c.gt));
    r.add("error", discrimination_error(m, 1.0, c.gt));
    return one(r);
}

std::vector<Row> fig3(const RunConfig& c, std::size_t) {
    Row r;
    for (double R : c.budgets) r.add("m_R" + format_number(R), static_cast<double>(fig3_curve(R, {c.params.P1d}).front()));
    return one(r);
}

std::vector<Row> fig4(const RunConfig& c, std::size_t) {
    const auto a = protocol3_step(c.params, c.repeat_b);
    const auto n = protocol3_numeric(c.params, c.repeat_b);
    Row r;
    r.add("N_m", static_cast<double>(c.params.N_m()));
    r.add("p_analytic", a.p);
    r.add("p_numeric", n.p);
    r.add("I_analytic", a.I_step);
    r.add("I_numeric", n.I_step);
    return one(r);
}

std::vector<Row> sm_figs(const RunConfig& c, std::size_t) {
    std::vector<Row> rows;
    const std::string& f = c.figure;
    if (f == "zeno") {
        const auto zp = zeno_params(c);
        std::vector<double> t;
        for (int i = 0; i <= 50; ++i) t.push_back(zp.T * i / 50.0);
        const auto an = zeno_analytic_populations(zp, t), nu = zeno_numeric_populations(zp, t);
        for (std::size_t i = 0; i < t.size(); ++i) {
            Row r;
            r.add("t", t[i]);
            r.add("dark_analytic", an.dark[i]);
            r.add("dark_numeric", nu.dark[i]);
            r.add("target_analytic", an.target[i]);
            r.add("target_numeric", nu.target[i]);
            r.add("superradiant_analytic", an.superradiant[i]);
            r.add("superradiant_numeric", nu.superradiant[i]);
            rows.push_back(r);
        }
    } else if (f == "protocol4-ratio") {
        for (double ratio = 1.0; ratio <= 4.0 * protocol4_default_ratio(c.params); ratio *= 1.1) {
            Row r;
            r.add("ratio", ratio);
            r.add("p", protocol4_success(c.params, {ratio, 0.0, 0.0}));
            rows.push_back(r);
        }
    } else if (f == "number-resolved") {
        for (long m = 2; m <= c.merge_m; ++m) {
            Row r;
            r.add("m", static_cast<double>(m));
            for (long s : {0L, 1L, 2L})
                if (s <= m) r.add("s_shift" + std::to_string(s), number_resolved_success(m, s));
            rows.push_back(r);
        }
    } else if (f == "one-by-one") {
        for (long n = 1; n <= c.merge_m; ++n) {
            Row r;
            r.add("n", static_cast<double>(n));
            r.add("q_n", one_by_one_q_closed(n));
            r.add("R_n", one_by_one_Rm(n, c.merge_p));
            r.add("R_n_doubling", doubling_Rm(n, c.merge_p));
            rows.push_back(r);
        }
    } else {
        throw ConfigError("figure", "unknown figure '" + f + "' (zeno, protocol4-ratio, number-resolved, one-by-one)");
    }
    return rows;
}

std::vector<Row> oracle_check(const RunConfig& c, std::size_t) {
    std::vector<Row> rows;
    auto add = [&](const OracleCheck& o, double limit, bool above) {
        Row r;
        r.add("deviation", o.deviation);
        r.add("atoms", static_cast<double>(o.atoms));
        r.add("full_dim", static_cast<double>(o.full_dim));
        r.add("pass", (above ? o.deviation > limit : o.deviation < limit) ? 1.0 : 0.0);
        r.status = "ok:" + o.name;
        rows.push_back(r);
    };
    const double P = c.params.P1d;
    add(oracle_protocol1(3, 0.05, P), 1e-8, false);
    add(oracle_protocol1(3, 0.3, P, 0.25), 1e-3, true);
    add(oracle_zeno(2, P), 1e-8, false);
    add(oracle_zeno(2, P, 0.25), 1e-3, true);
    return rows;
}

const std::map<std::string, Handler>& registry() {
    static const std::map<std::string, Handler> r{
        {"protocol1", protocol1},
        {"protocol2", protocol2},
        {"protocol3", protocol3},
        {"protocol4", protocol4},
        {"zeno-step", zeno_step},
        {"pulse-shape", pulse_shape},
        {"merge-plan", merge_plan},
        {"merge-sim", merge_sim},
        {"detect", detect},
        {"fig3", fig3},
        {"fig4", fig4},
        {"sm-figs", sm_figs},
        {"oracle-check", oracle_check}};
    return r;
}

}  // namespace

std::vector<std::string> command_names() {
    std::vector<std::string> n;
    for (const auto& [k, v] : registry()) n.push_back(k);
    return n;
}

Table run_command(const RunConfig& in) {
    const auto it = registry().find(in.command);
    if (it == registry().end()) throw ConfigError("command", "unknown command '" + in.command + "'");
    RunConfig cfg = in;
    if (cfg.sweeps.empty()) {
        if (cfg.command == "fig3") cfg.sweeps.push_back({"P1d", parse_grid("10:10000:log4")});
        if (cfg.command == "fig4") cfg.sweeps.push_back({"P1d", parse_grid("10:1000:log4")});
    }
    cfg.validate();
    if (cfg.command == "merge-sim") require_seed(cfg);

    const auto points = expand(cfg.sweeps);
    std::vector<std::vector<Row>> out(points.size());
    const Handler& h = it->second;
    parallel_for(
        points.size(),
        [&](std::size_t i) {
            RunConfig local = cfg;
            for (const auto& [k, v] : points[i]) set_value(local, k, v);
            std::vector<Row> rows;
            try {
                local.params.validate();
                rows = h(local, i);
            } catch (const ConfigError&) {
                throw;
            } catch (const std::exception& e) {
                Row r;
                r.status = std::string("error: ") + e.what();
                rows = {r};
            }
            for (auto& r : rows) {
                Row full;
                for (const auto& kv : points[i]) full.values.push_back(kv);
                for (auto& kv : r.values) full.values.push_back(kv);
                full.status = r.status;
                out[i].push_back(std::move(full));
            }
        },
        cfg.threads);

    Table t;
    t.schema = cfg.command + "/1";
    t.header = {{"git_hash", WQED_GIT_HASH},
                {"seed", cfg.seed ? std::to_string(*cfg.seed) : "none"},
                {"config_digest", config_digest(cfg)},
                {"command", cfg.command}};
    for (const auto& w : cfg.params.warnings()) t.header.emplace_back("warning", w);
    for (auto& rows : out)
        for (auto& r : rows) t.rows.push_back(std::move(r));
    return t;
}

}  // namespace wqed::cli
