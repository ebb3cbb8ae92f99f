#include "config.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace wqed::cli {

using nlohmann::json;

namespace {

double to_double(const std::string& field, const std::string& s) {
    try {
        std::size_t used = 0;
        const double v = std::stod(s, &used);
        if (used != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw ConfigError(field, "cannot parse number '" + s + "'");
    }
}

long as_long(const std::string& name, double v) {
    if (v != std::floor(v)) throw ConfigError(name, "must be an integer");
    return static_cast<long>(v);
}

}  // namespace

std::vector<double> parse_grid(const std::string& spec) {
    if (spec.empty()) throw ConfigError("grid", "empty grid");
    std::vector<double> g;
    if (spec.find(':') != std::string::npos) {
        std::vector<std::string> part;
        std::stringstream ss(spec);
        for (std::string t; std::getline(ss, t, ':');) part.push_back(t);
        if (part.size() != 3) throw ConfigError("grid", "expected lo:hi:n or lo:hi:logK");
        const double lo = to_double("grid", part[0]), hi = to_double("grid", part[1]);
        if (!(hi > lo)) throw ConfigError("grid", "need hi > lo");
        if (part[2].rfind("log", 0) == 0) {
            if (!(lo > 0.0)) throw ConfigError("grid", "log grid needs lo > 0");
            const double per = to_double("grid", part[2].substr(3));
            if (!(per >= 1.0)) throw ConfigError("grid", "points per decade must be >= 1");
            const long n = std::lround(std::log10(hi / lo) * per);
            for (long i = 0; i <= n; ++i) g.push_back(lo * std::pow(hi / lo, static_cast<double>(i) / std::max(n, 1L)));
        } else {
            const long n = as_long("grid", to_double("grid", part[2]));
            if (n < 2) throw ConfigError("grid", "linear grid needs n >= 2");
            for (long i = 0; i < n; ++i) g.push_back(lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1));
        }
    } else {
        std::stringstream ss(spec);
        for (std::string t; std::getline(ss, t, ',');) g.push_back(to_double("grid", t));
    }
    return g;
}

std::vector<std::string> sweep_names() {
    return {"N", "Nd", "P1d", "eta", "alpha", "m", "x", "gamma_star", "pump_coefficient", "window",
            "k", "repeat_b", "ratio", "merge_m", "merge_p", "GT", "segments"};
}

void set_value(RunConfig& c, const std::string& n, double v) {
    auto& p = c.params;
    if (n == "N") p.N = as_long(n, v);
    else if (n == "Nd") p.N_d = as_long(n, v);
    else if (n == "P1d") p.P1d = v;
    else if (n == "eta") p.eta = v;
    else if (n == "alpha") p.alpha = v;
    else if (n == "m") p.m = as_long(n, v);
    else if (n == "x") p.x = v;
    else if (n == "gamma_star") p.gamma_star = v;
    else if (n == "pump_coefficient") p.pump_coefficient = v;
    else if (n == "window") p.window = v;
    else if (n == "k") c.k = as_long(n, v);
    else if (n == "repeat_b") c.repeat_b = as_long(n, v);
    else if (n == "ratio") c.ratio = v;
    else if (n == "merge_m") c.merge_m = as_long(n, v);
    else if (n == "merge_p") c.merge_p = v;
    else if (n == "GT") c.gt = v;
    else if (n == "segments") c.segments = static_cast<int>(as_long(n, v));
    else throw ConfigError(n, "unknown parameter");
}

void apply_json(RunConfig& c, const json& j) {
    if (!j.is_object()) throw ConfigError("config", "top level must be an object");
    for (const auto& [key, val] : j.items()) {
        try {
            if (key == "command") c.command = val.get<std::string>();
            else if (key == "sweep") {
                if (!val.is_object()) throw ConfigError("sweep", "must map parameter names to grids");
                c.sweeps.clear();
                for (const auto& [name, g] : val.items()) {
                    Axis a{name, {}};
                    if (g.is_string()) a.grid = parse_grid(g.get<std::string>());
                    else a.grid = g.get<std::vector<double>>();
                    c.sweeps.push_back(std::move(a));
                }
            } else if (key == "strategy") c.strategy = val.get<std::string>();
            else if (key == "worst_case") c.worst_case = val.get<bool>();
            else if (key == "numeric") c.numeric = val.get<bool>();
            else if (key == "reference_s") c.reference_s = val.get<bool>();
            else if (key == "same_level") c.same_level = val.get<bool>();
            else if (key == "pmf") c.pmf = val.get<bool>();
            else if (key == "json") c.json = val.get<bool>();
            else if (key == "accumulate") c.accumulate = val.get<long>();
            else if (key == "trials") c.trials = val.get<long>();
            else if (key == "seed") c.seed = val.get<std::uint64_t>();
            else if (key == "output") c.output = val.get<std::string>();
            else if (key == "figure") c.figure = val.get<std::string>();
            else if (key == "threads") c.threads = val.get<unsigned>();
            else if (key == "R") c.budgets = val.get<std::vector<double>>();
            else if (val.is_number()) set_value(c, key, val.get<double>());
            else throw ConfigError(key, "unknown key");
        } catch (const json::exception& e) {
            throw ConfigError(key, std::string("wrong type: ") + e.what());
        }
    }
}

RunConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config", "cannot open " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw ConfigError("config", std::string("parse error: ") + e.what());
    }
    RunConfig c;
    apply_json(c, j);
    return c;
}

json RunConfig::to_json() const {
    nlohmann::json s = nlohmann::json::object();
    for (const auto& a : sweeps) s[a.name] = a.grid;
    nlohmann::json j{{"command", command},
           {"N", params.N},
           {"Nd", params.N_d},
           {"P1d", params.P1d},
           {"eta", params.eta},
           {"alpha", params.alpha},
           {"m", params.m},
           {"x", params.x},
           {"gamma_star", params.gamma_star},
           {"pump_coefficient", params.pump_coefficient},
           {"window", params.window},
           {"k", k},
           {"segments", segments},
           {"numeric", numeric},
           {"repeat_b", repeat_b},
           {"ratio", ratio},
           {"reference_s", reference_s},
           {"accumulate", accumulate},
           {"same_level", same_level},
           {"strategy", strategy},
           {"merge_m", merge_m},
           {"merge_p", merge_p},
           {"worst_case", worst_case},
           {"GT", gt},
           {"pmf", pmf},
           {"R", budgets},
           {"figure", figure},
           {"trials", trials},
           {"sweep", s}};
    if (seed) j["seed"] = *seed;
    return j;
}

void RunConfig::validate() const {
    for (const auto& a : sweeps) {
        if (a.grid.empty()) throw ConfigError(a.name, "sweep grid is empty");
        for (std::size_t i = 1; i < a.grid.size(); ++i)
            if (!(a.grid[i] > a.grid[i - 1])) throw ConfigError(a.name, "sweep grid must be strictly increasing");
        for (std::size_t i = 0; i < a.grid.size(); ++i) {
            if (!std::isfinite(a.grid[i])) throw ConfigError(a.name, "non-finite grid value");
        }
        RunConfig probe = *this;
        set_value(probe, a.name, a.grid.front());
    }
    if (repeat_b < 1) throw ConfigError("repeat_b", "must be >= 1");
    if (segments < 1) throw ConfigError("segments", "must be >= 1");
    if (k < 0) throw ConfigError("k", "must be >= 0");
    if (merge_m < 1) throw ConfigError("merge_m", "must be >= 1");
    if (!(merge_p > 0.0 && merge_p <= 1.0)) throw ConfigError("merge_p", "must lie in (0,1]");
    if (!(gt >= 0.0)) throw ConfigError("GT", "must be >= 0");
    if (budgets.empty()) throw ConfigError("R", "need at least one budget");
}

std::string config_digest(const RunConfig& cfg) {
    const std::string s = cfg.to_json().dump();
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

}  // namespace wqed::cli
