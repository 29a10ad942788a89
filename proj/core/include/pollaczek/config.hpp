#pragma once

#include <string>
#include <vector>

#include "pollaczek/lst.hpp"
#include "pollaczek/moments.hpp"
#include "pollaczek/simulate.hpp"

namespace pollaczek {

struct SetConfig {
    std::string label;
    DistributionSpec service;
    DistributionSpec arrival;
};

struct RegimeConfig {
    Regime kind = Regime::Classical;
    std::vector<double> alphas;       // classical
    std::vector<long> ns;             // thinned regimes
    double beta = 1.0;
    std::vector<std::string> columns;  // exact | asymp | asymp_refined | simulation
    int decimals = 3;
};

struct CdfConfig {
    double t_max = 0.0;  // 0 = 5 * largest mean on the grid
    int points = 100;
};

// One resolved run: a single regime with its parameter list.
struct RunConfig {
    std::string name;
    std::string title;
    std::vector<SetConfig> sets;
    RegimeConfig regime;
    int max_order = 5;
    QuadratureConfig quadrature;
    EulerConfig euler;
    SimConfig sim;
    CdfConfig cdf;
};

// Parse a config document. regime_override selects among the document's
// per-regime parameter blocks ("classical" | "nd_kingman" | "nd_gaussian";
// empty = the document's default). Throws Error(ConfigError).
RunConfig parse_run_config(const std::string& json_text, const std::string& regime_override = "");

std::vector<std::string> preset_names();
// Bundled config document for one of the shipped presets.
std::string preset_text(const std::string& name);
RunConfig preset_config(const std::string& name, const std::string& regime_override = "");

DistributionSpec spec_from_json_text(const std::string& json_text);
std::string spec_to_json_text(const DistributionSpec& spec);

// Canonical JSON echo of a resolved run (embedded in report sidecars).
std::string run_config_to_json_text(const RunConfig& cfg);

}  // namespace pollaczek
