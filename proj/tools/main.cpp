#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "commands.hpp"

using namespace wqed;
using namespace wqed::cli;

#ifndef WQED_GIT_HASH
#define WQED_GIT_HASH "unknown"
#endif

namespace {

struct Overrides {
    std::optional<long> N, Nd, m, k, repeat_b, accumulate, merge_m, trials;
    std::optional<int> segments;
    std::optional<double> P1d, eta, alpha, x, gamma_star, pump, window, ratio, merge_p, gt;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> strategy, output, figure, budgets, p1d_grid, n_grid;
    std::vector<std::string> sweeps;
    bool numeric = false, reference_s = false, same_level = false, realistic = false, pmf = false, json = false;
    unsigned threads = 0;
};

void add_options(CLI::App& a, Overrides& o) {
    a.add_option("--N", o.N, "target atoms");
    a.add_option("--Nd", o.Nd, "detector atoms");
    a.add_option("--m", o.m, "stored excitations");
    a.add_option("--k", o.k, "source excitations (zeno-step, pulse-shape)");
    a.add_option("--P1d", o.P1d, "Purcell factor");
    a.add_option("--eta", o.eta, "photon detection efficiency");
    a.add_option("--alpha", o.alpha, "spontaneous-emission cancellation (<0: 1/sqrt(P1d))");
    a.add_option("--x", o.x, "weak excitation amplitude");
    a.add_option("--gamma-star", o.gamma_star, "free-space rate");
    a.add_option("--pump-coefficient", o.pump, "repump error coefficient");
    a.add_option("--window", o.window, "step-b wait time (<=0: 1/gamma_1d)");
    a.add_option("--repeat-b", o.repeat_b, "step-b retries");
    a.add_option("--ratio", o.ratio, "decay ratio (protocol4)");
    a.add_option("--accumulate", o.accumulate, "accumulate up to this m");
    a.add_option("--segments", o.segments, "pulse segments");
    a.add_option("--strategy", o.strategy, "one-by-one | doubling | number-resolved");
    a.add_option("--merge-m", o.merge_m, "merge target");
    a.add_option("--merge-p", o.merge_p, "base heralding probability");
    a.add_option("--GT", o.gt, "gamma_1d T for detect");
    a.add_option("--trials", o.trials, "Monte Carlo trials");
    a.add_option("--seed", o.seed, "RNG seed");
    a.add_option("--R", o.budgets, "fig3 budgets, comma separated");
    a.add_option("--figure", o.figure, "sm-figs figure");
    a.add_option("--sweep", o.sweeps, "name=grid (a,b,c | lo:hi:n | lo:hi:logK)");
    a.add_option("--P1d-grid", o.p1d_grid, "shorthand for --sweep P1d=...");
    a.add_option("--N-grid", o.n_grid, "shorthand for --sweep N=...");
    a.add_option("--out", o.output, "output CSV path");
    a.add_option("--threads", o.threads, "worker threads");
    a.add_flag("--numeric", o.numeric, "master-equation pipeline");
    a.add_flag("--reference-s", o.reference_s, "read P1d as the s-transition Purcell factor");
    a.add_flag("--same-level", o.same_level, "protocol1 accumulation on one level");
    a.add_flag("--realistic", o.realistic, "number-resolved: keep sampled counts");
    a.add_flag("--pmf", o.pmf, "detect: emit count distributions");
    a.add_flag("--json", o.json, "also write a JSON mirror");
}

template <class T, class U>
void put(const std::optional<T>& v, U& dst) {
    if (v) dst = static_cast<U>(*v);
}

void apply(const Overrides& o, RunConfig& c) {
    auto& p = c.params;
    put(o.N, p.N);
    put(o.Nd, p.N_d);
    put(o.m, p.m);
    put(o.k, c.k);
    put(o.P1d, p.P1d);
    put(o.eta, p.eta);
    put(o.alpha, p.alpha);
    put(o.x, p.x);
    put(o.gamma_star, p.gamma_star);
    put(o.pump, p.pump_coefficient);
    put(o.window, p.window);
    put(o.repeat_b, c.repeat_b);
    put(o.ratio, c.ratio);
    put(o.accumulate, c.accumulate);
    put(o.segments, c.segments);
    put(o.merge_m, c.merge_m);
    put(o.merge_p, c.merge_p);
    put(o.gt, c.gt);
    put(o.trials, c.trials);
    put(o.strategy, c.strategy);
    put(o.output, c.output);
    put(o.figure, c.figure);
    if (o.seed) c.seed = *o.seed;
    if (o.budgets) c.budgets = parse_grid(*o.budgets);
    auto sweep = [&](const std::string& name, const std::string& grid) {
        std::erase_if(c.sweeps, [&](const Axis& a) { return a.name == name; });
        c.sweeps.push_back({name, parse_grid(grid)});
    };
    for (const auto& s : o.sweeps) {
        const auto eq = s.find('=');
        if (eq == std::string::npos) throw ConfigError("sweep", "expected name=grid");
        sweep(s.substr(0, eq), s.substr(eq + 1));
    }
    if (o.p1d_grid) sweep("P1d", *o.p1d_grid);
    if (o.n_grid) sweep("N", *o.n_grid);
    if (o.numeric) c.numeric = true;
    if (o.reference_s) c.reference_s = true;
    if (o.same_level) c.same_level = true;
    if (o.realistic) c.worst_case = false;
    if (o.pmf) c.pmf = true;
    if (o.json) c.json = true;
    if (o.threads) c.threads = o.threads;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Multiphoton-source protocol calculator"};
    app.set_version_flag("--version", std::string("wqed ") + WQED_GIT_HASH);
    std::string config_path;
    app.add_option("--config", config_path, "JSON configuration (flags override)");
    Overrides o;
    add_options(app, o);
    app.require_subcommand(1);
    for (const auto& n : command_names()) app.add_subcommand(n)->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        RunConfig cfg = config_path.empty() ? RunConfig{} : load_config_file(config_path);
        cfg.command = app.get_subcommands().front()->get_name();
        apply(o, cfg);
        for (const auto& w : cfg.params.warnings()) std::cerr << "warning: " << w << "\n";

        const Table t = run_command(cfg);
        std::string path = cfg.output;
        if (path.empty()) {
            if (const char* dir = std::getenv("WQED_OUTPUT_DIR"); dir && *dir) {
                std::filesystem::create_directories(dir);
                path = (std::filesystem::path(dir) / (cfg.command + ".csv")).string();
            }
        }
        if (path.empty()) {
            t.write_csv(std::cout);
        } else {
            std::ofstream f(path);
            if (!f) throw ConfigError("output", "cannot write " + path);
            t.write_csv(f);
            std::cerr << "wrote " << path << "\n";
        }
        if (cfg.json) {
            const std::string jp = path.empty() ? cfg.command + ".json" : path + ".json";
            std::ofstream j(jp);
            if (!j) throw ConfigError("output", "cannot write " + jp);
            t.write_json(j);
        }
        for (const auto& r : t.rows)
            if (r.status.rfind("error", 0) == 0) std::cerr << "row failed: " << r.status << "\n";
        return t.all_failed() ? 2 : 0;
    } catch (const ConfigError& e) {
        std::cerr << "config error [" << e.field() << "]: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
