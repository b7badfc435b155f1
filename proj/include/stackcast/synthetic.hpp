// Desk-scale synthetic markets: a declared fleet, sinusoidal load, fuel-price
// random walks and a known ground-truth parameter set generate a panel whose
// price series is the model's own curve evaluation plus optional iid noise.
#pragma once

#include <map>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "stackcast/catalog.hpp"
#include "stackcast/panel.hpp"
#include "stackcast/parameters.hpp"

namespace stackcast {

struct SynthPlant {
    PlantType plant;
    double cap_mean = 0.0;
    double cap_daily_amp = 0.0;   // relative daily swing in [0,1)
    double cap_annual_amp = 0.0;  // relative annual swing in [0,1)
    double phase = 0.0;           // radians, offsets the daily swing
};

struct SynthSpec {
    std::vector<SynthPlant> plants;
    HourStamp start = 0;
    std::size_t hours = 0;

    double load_mean = 0.0;
    double load_daily_amp = 0.0;
    double load_annual_amp = 0.0;
    double load_noise_sigma = 0.0;

    std::map<std::string, double> fuel_price0;  // fuel key -> initial daily close
    double fuel_walk_sigma = 0.0;
    double eua0 = 0.0;
    double eua_walk_sigma = 0.0;

    double hydro_mean = 0.0, hydro_amp = 0.0;
    double net_import_mean = 0.0, net_import_amp = 0.0;

    double price_noise_sigma = 0.0;

    std::vector<std::string> active_groups;          // ground-truth active mask
    std::map<std::string, double> theta_overrides;   // entry name -> value

    static SynthSpec from_json(const nlohmann::json& j);
    static SynthSpec from_json_file(const std::string& path);
    nlohmann::json to_json() const;
};

struct SynthResult {
    HourlyPanel panel;
    PlantCatalog catalog;
    ParameterSet theta_star;
};

// Deterministic for a fixed seed. Throws InfeasibleSpec when the fleet cannot
// cover the load in some hour even at full dispatch.
SynthResult synthesize_market(const SynthSpec& spec, std::uint64_t seed);

}  // namespace stackcast
