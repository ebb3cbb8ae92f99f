#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "wqed/protocols.hpp"

namespace wqed::cli {

struct Axis {
    std::string name;
    std::vector<double> grid;
};

struct RunConfig {
    std::string command;
    PhysicalParams params;
    std::vector<Axis> sweeps;

    // zeno-step / pulse-shape
    long k = 0;
    int segments = 10;
    // protocol options
    bool numeric = false;
    long repeat_b = 1;
    double ratio = 0.0;
    bool reference_s = false;
    long accumulate = 0;
    bool same_level = false;
    // merging
    std::string strategy = "one-by-one";
    long merge_m = 8;
    double merge_p = 0.5;
    bool worst_case = true;
    // detection, in units of 1/gamma_1d
    double gt = 10.0;
    bool pmf = false;
    // fig3
    std::vector<double> budgets{1e2, 1e4, 1e6};
    std::string figure = "zeno";

    long trials = 0;
    std::optional<std::uint64_t> seed;
    std::string output;
    bool json = false;
    unsigned threads = 0;

    nlohmann::json to_json() const;
    void validate() const;
};

// "a,b,c" | "lo:hi:n" (linear) | "lo:hi:logK" (K points per decade)
std::vector<double> parse_grid(const std::string& spec);
void apply_json(RunConfig& cfg, const nlohmann::json& j);
RunConfig load_config_file(const std::string& path);
// Sets one scalar by sweep name; throws ConfigError on unknown names.
void set_value(RunConfig& cfg, const std::string& name, double v);
std::vector<std::string> sweep_names();
// FNV-1a over the canonical JSON dump.
std::string config_digest(const RunConfig& cfg);

}  // namespace wqed::cli
