// Shared test fixtures: small catalogs, flat panels, random fleets and the
// synthetic-market specs used across the suites.
#pragma once

#include <cmath>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "stackcast/catalog.hpp"
#include "stackcast/curve.hpp"
#include "stackcast/panel.hpp"
#include "stackcast/rng.hpp"
#include "stackcast/synthetic.hpp"

namespace testsup {

using namespace stackcast;

inline PlantType conv(const std::string& id, const std::string& fuel, double co2,
                      bool cf = false, bool mr = false) {
    PlantType p;
    p.id = id;
    p.kind = PlantKind::Conventional;
    p.fuel = fuel;
    p.co2_intensity = co2;
    p.cf_eligible = cf;
    p.mr_eligible = mr;
    return p;
}

inline PlantType res(const std::string& id, bool cf = false, bool mr = false) {
    PlantType p;
    p.id = id;
    p.kind = PlantKind::Renewable;
    p.cf_eligible = cf;
    p.mr_eligible = mr;
    return p;
}

// Three-technology catalog without capacity corrections, so hand arithmetic
// on the examples stays direct.
inline PlantCatalog small_catalog() {
    return PlantCatalog({conv("gas", "gas", 0.20), conv("coal", "coal", 0.30),
                         res("wind_onshore")});
}

// The full 11-entry catalog (five fuels + other + five RES classes); with the
// split and virtual extensions the runtime fleet reaches 14 technologies.
inline PlantCatalog reference_catalog() {
    return PlantCatalog({
        conv("gas", "gas", 0.20, true, true),
        conv("coal", "coal", 0.30, true, true),
        conv("lignite", "lignite", 0.40, true, true),
        conv("oil", "oil", 0.30, true, true),
        conv("nuclear", "nuclear", 0.03, false, true),
        conv("other", "oil", 0.30, false, false),
        res("pv"),
        res("wind_onshore"),
        res("wind_offshore"),
        res("biomass", true, true),
        res("other_res"),
    });
}

// A constant-valued panel carrying every series the reference catalog needs.
inline HourlyPanel flat_panel(const PlantCatalog& catalog, std::size_t hours,
                              std::map<std::string, double> overrides = {}) {
    std::map<std::string, std::vector<double>> series;
    auto put = [&](const std::string& key, double v) {
        auto it = overrides.find(key);
        series[key] = std::vector<double>(hours, it == overrides.end() ? v : it->second);
    };
    for (const auto& p : catalog.plants()) {
        if (p.kind == PlantKind::Conventional) {
            put("cap." + p.id, 1000.0);
            put("fuel." + p.fuel, 20.0);
        } else if (p.kind == PlantKind::Renewable) {
            put("gen." + p.id, 500.0);
            put("res_da." + p.id, 500.0);
        }
    }
    put("eua", 50.0);
    put("load_actual", 2000.0);
    put("load_da", 2000.0);
    put("price", 80.0);
    put("net_import", 0.0);
    put("hydro_gen", 0.0);
    for (const auto& [key, v] : overrides)
        if (!series.count(key)) series[key] = std::vector<double>(hours, v);
    std::vector<HourStamp> idx(hours);
    HourStamp t0 = make_hour(2023, 1, 2, 0);  // a Monday
    for (std::size_t i = 0; i < hours; ++i) idx[i] = t0 + static_cast<HourStamp>(i);
    return HourlyPanel(std::move(idx), std::move(series));
}

// Random fleets for the property suites: caps in [0, 1000] with occasional
// zero-cap plants, bounds anywhere in the price space with occasional
// degenerate (equal-bound) stacks.
inline std::vector<PlantStack> random_fleet(std::mt19937_64& rng, std::size_t max_plants = 8) {
    std::size_t n = 1 + uniform_index(rng, max_plants);
    std::vector<PlantStack> fleet;
    fleet.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        PlantStack s;
        s.plant = "p" + std::to_string(i);
        s.cap = uniform01(rng) < 0.1 ? 0.0 : uniform(rng, 0.0, 1000.0);
        double a = uniform(rng, -500.0, 3000.0);
        if (uniform01(rng) < 0.2) {
            s.bounds = {a, a};  // vertical step
        } else {
            double b = uniform(rng, -500.0, 3000.0);
            s.bounds = {std::min(a, b), std::max(a, b)};
        }
        fleet.push_back(std::move(s));
    }
    return fleet;
}

// The synthetic five-plant market used by the recovery tests: three
// conventional plants and two renewables, with the efficiency and bid groups
// as ground-truth unknowns.
inline SynthSpec recovery_spec(std::size_t hours, double price_noise) {
    SynthSpec spec;
    auto plant = [&](PlantType p, double cap, double damp, double aamp, double phase) {
        SynthPlant sp;
        sp.plant = std::move(p);
        sp.cap_mean = cap;
        sp.cap_daily_amp = damp;
        sp.cap_annual_amp = aamp;
        sp.phase = phase;
        return sp;
    };
    spec.plants.push_back(plant(conv("gas", "gas", 0.20), 15000.0, 0.05, 0.05, 0.3));
    spec.plants.push_back(plant(conv("coal", "coal", 0.30), 12000.0, 0.05, 0.08, 1.2));
    spec.plants.push_back(plant(conv("lignite", "lignite", 0.40), 9000.0, 0.03, 0.05, 2.1));
    spec.plants.push_back(plant(res("pv"), 6000.0, 0.9, 0.2, -1.5707963267948966));
    spec.plants.push_back(plant(res("wind_onshore"), 8000.0, 0.35, 0.15, 0.8));
    spec.start = make_hour(2023, 1, 2, 0);
    spec.hours = hours;
    spec.load_mean = 24000.0;
    spec.load_daily_amp = 0.18;
    spec.load_annual_amp = 0.08;
    spec.load_noise_sigma = 400.0;
    spec.fuel_price0 = {{"gas", 35.0}, {"coal", 18.0}, {"lignite", 6.0}};
    spec.fuel_walk_sigma = 0.8;
    spec.eua0 = 70.0;
    spec.eua_walk_sigma = 0.5;
    spec.price_noise_sigma = price_noise;
    spec.active_groups = {"efficiencies", "bids"};
    spec.theta_overrides = {
        {"eta_low.gas", 0.32},    {"eta_high.gas", 0.55},
        {"eta_low.coal", 0.30},   {"eta_high.coal", 0.52},
        {"eta_low.lignite", 0.26}, {"eta_high.lignite", 0.48},
        {"bid_low.pv", -120.0},   {"bid_high.pv", 4.0},
        {"bid_low.wind_onshore", -45.0}, {"bid_high.wind_onshore", 9.0},
    };
    return spec;
}

}  // namespace testsup
