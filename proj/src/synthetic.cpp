#include "stackcast/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include <nlohmann/json.hpp>

#include "stackcast/assembly.hpp"
#include "stackcast/errors.hpp"
#include "stackcast/rng.hpp"

namespace stackcast {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;
constexpr double kHoursPerYear = 8766.0;  // 365.25 days

double seasonal(double mean, double daily_amp, double annual_amp, double phase, std::size_t i) {
    double daily = std::sin(kTwoPi * static_cast<double>(i % 24) / 24.0 + phase);
    double annual = std::sin(kTwoPi * static_cast<double>(i) / kHoursPerYear);
    return mean * (1.0 + daily_amp * daily + annual_amp * annual);
}

}  // namespace

SynthSpec SynthSpec::from_json(const nlohmann::json& j) {
    SynthSpec s;
    for (const auto& e : j.at("plants")) {
        SynthPlant sp;
        sp.plant.id = e.at("id").get<std::string>();
        sp.plant.kind = plant_kind_from_string(e.value("kind", std::string("conventional")));
        sp.plant.fuel = e.value("fuel", std::string());
        sp.plant.co2_intensity = e.value("co2_intensity", 0.0);
        sp.plant.other_cost = e.value("other_cost", 0.0);
        sp.plant.cf_eligible = e.contains("cf_eligible") ? e["cf_eligible"].get<bool>()
                                                         : default_cf_eligible(sp.plant);
        sp.plant.mr_eligible = e.contains("mr_eligible") ? e["mr_eligible"].get<bool>()
                                                         : default_mr_eligible(sp.plant);
        sp.cap_mean = e.at("cap_mean").get<double>();
        sp.cap_daily_amp = e.value("cap_daily_amp", 0.0);
        sp.cap_annual_amp = e.value("cap_annual_amp", 0.0);
        sp.phase = e.value("phase", 0.0);
        s.plants.push_back(std::move(sp));
    }
    s.start = j.contains("start") ? parse_hour(j["start"].get<std::string>()) : 0;
    s.hours = j.at("hours").get<std::size_t>();
    s.load_mean = j.at("load_mean").get<double>();
    s.load_daily_amp = j.value("load_daily_amp", 0.0);
    s.load_annual_amp = j.value("load_annual_amp", 0.0);
    s.load_noise_sigma = j.value("load_noise_sigma", 0.0);
    for (const auto& [fuel, p0] : j.value("fuel_price0", nlohmann::json::object()).items())
        s.fuel_price0[fuel] = p0.get<double>();
    s.fuel_walk_sigma = j.value("fuel_walk_sigma", 0.0);
    s.eua0 = j.value("eua0", 0.0);
    s.eua_walk_sigma = j.value("eua_walk_sigma", 0.0);
    s.hydro_mean = j.value("hydro_mean", 0.0);
    s.hydro_amp = j.value("hydro_amp", 0.0);
    s.net_import_mean = j.value("net_import_mean", 0.0);
    s.net_import_amp = j.value("net_import_amp", 0.0);
    s.price_noise_sigma = j.value("price_noise_sigma", 0.0);
    for (const auto& g : j.value("active_groups", nlohmann::json::array()))
        s.active_groups.push_back(g.get<std::string>());
    for (const auto& [name, v] : j.value("theta_overrides", nlohmann::json::object()).items())
        s.theta_overrides[name] = v.get<double>();
    return s;
}

SynthSpec SynthSpec::from_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw SchemaMismatch("cannot open synth spec: " + path);
    nlohmann::json j;
    in >> j;
    return from_json(j);
}

nlohmann::json SynthSpec::to_json() const {
    nlohmann::json plants_j = nlohmann::json::array();
    for (const auto& sp : plants) {
        nlohmann::json e;
        e["id"] = sp.plant.id;
        e["kind"] = to_string(sp.plant.kind);
        if (!sp.plant.fuel.empty()) e["fuel"] = sp.plant.fuel;
        e["co2_intensity"] = sp.plant.co2_intensity;
        e["other_cost"] = sp.plant.other_cost;
        e["cf_eligible"] = sp.plant.cf_eligible;
        e["mr_eligible"] = sp.plant.mr_eligible;
        e["cap_mean"] = sp.cap_mean;
        e["cap_daily_amp"] = sp.cap_daily_amp;
        e["cap_annual_amp"] = sp.cap_annual_amp;
        e["phase"] = sp.phase;
        plants_j.push_back(std::move(e));
    }
    nlohmann::json j;
    j["plants"] = std::move(plants_j);
    j["start"] = format_hour(start);
    j["hours"] = hours;
    j["load_mean"] = load_mean;
    j["load_daily_amp"] = load_daily_amp;
    j["load_annual_amp"] = load_annual_amp;
    j["load_noise_sigma"] = load_noise_sigma;
    j["fuel_price0"] = fuel_price0;
    j["fuel_walk_sigma"] = fuel_walk_sigma;
    j["eua0"] = eua0;
    j["eua_walk_sigma"] = eua_walk_sigma;
    j["hydro_mean"] = hydro_mean;
    j["hydro_amp"] = hydro_amp;
    j["net_import_mean"] = net_import_mean;
    j["net_import_amp"] = net_import_amp;
    j["price_noise_sigma"] = price_noise_sigma;
    j["active_groups"] = active_groups;
    j["theta_overrides"] = theta_overrides;
    return j;
}

SynthResult synthesize_market(const SynthSpec& spec, std::uint64_t seed) {
    if (spec.plants.empty()) throw InfeasibleSpec("synthetic market needs at least one plant");
    if (spec.hours == 0) throw InfeasibleSpec("synthetic market needs at least one hour");

    std::vector<PlantType> plants;
    for (const auto& sp : spec.plants) plants.push_back(sp.plant);
    PlantCatalog catalog(std::move(plants));

    ParameterSet theta = ParameterSet::classical(catalog);
    std::set<ParamGroup> groups;
    for (const auto& g : spec.active_groups) groups.insert(group_from_string(g));
    theta.set_active_groups(std::move(groups));
    for (const auto& [name, v] : spec.theta_overrides) theta.set(name, v);
    std::string why;
    if (!theta.in_box(&why)) throw InvalidTheta("synthetic theta out of box: " + why);

    const std::size_t n = spec.hours;
    std::vector<HourStamp> hours(n);
    for (std::size_t i = 0; i < n; ++i) hours[i] = spec.start + static_cast<HourStamp>(i);

    std::mt19937_64 rng(seed);
    std::map<std::string, std::vector<double>> series;

    // Fuel and EUA prices: daily random walks broadcast to hours.
    std::size_t days = (n + 23) / 24;
    auto walk = [&](double p0, double sigma) {
        std::vector<double> daily(days);
        double p = p0;
        for (std::size_t d = 0; d < days; ++d) {
            daily[d] = std::max(0.0, p);
            p += normal(rng, 0.0, sigma);
        }
        std::vector<double> hourly(n);
        for (std::size_t i = 0; i < n; ++i) hourly[i] = daily[i / 24];
        return hourly;
    };
    for (const auto& [fuel, p0] : spec.fuel_price0)
        series["fuel." + fuel] = walk(p0, spec.fuel_walk_sigma);
    series["eua"] = walk(spec.eua0, spec.eua_walk_sigma);

    // Capacities / renewable generation.
    for (const auto& sp : spec.plants) {
        std::vector<double> vals(n);
        for (std::size_t i = 0; i < n; ++i)
            vals[i] = std::max(0.0, seasonal(sp.cap_mean, sp.cap_daily_amp, sp.cap_annual_amp,
                                             sp.phase, i));
        if (sp.plant.kind == PlantKind::Conventional) {
            series["cap." + sp.plant.id] = vals;
        } else {
            series["gen." + sp.plant.id] = vals;
            series["res_da." + sp.plant.id] = vals;
        }
    }

    // Load plus noise, clamped at zero.
    std::vector<double> load(n);
    for (std::size_t i = 0; i < n; ++i) {
        double v = seasonal(spec.load_mean, spec.load_daily_amp, spec.load_annual_amp, 0.0, i);
        if (spec.load_noise_sigma > 0.0) v += normal(rng, 0.0, spec.load_noise_sigma);
        load[i] = std::max(0.0, v);
    }
    series["load_actual"] = load;
    series["load_da"] = load;

    std::vector<double> hydro(n), ni(n);
    for (std::size_t i = 0; i < n; ++i) {
        hydro[i] = std::max(0.0, seasonal(spec.hydro_mean, spec.hydro_amp, 0.0, 0.0, i));
        ni[i] = spec.net_import_mean +
                spec.net_import_amp * std::sin(kTwoPi * static_cast<double>(i % 24) / 24.0);
    }
    series["hydro_gen"] = hydro;
    series["hydro_fc"] = hydro;
    series["net_import"] = ni;
    series["net_import_fc"] = ni;

    HourlyPanel base(hours, series);

    // Price each hour at the ground truth, then attach the price series.
    std::vector<double> price(n);
    for (std::size_t i = 0; i < n; ++i) {
        HourStacks hs = assemble_hour(catalog, base, theta, i, Mode::Train);
        double total_cap = 0.0;
        for (const auto& s : hs.stacks) total_cap += s.cap;
        if (hs.effective_load > total_cap)
            throw InfeasibleSpec("fleet capacity " + std::to_string(total_cap) +
                                 " below load " + std::to_string(hs.effective_load) + " at " +
                                 format_hour(hours[i]));
        PiecewiseCurve curve = PiecewiseCurve::aggregate(hs.stacks);
        double p = curve.eval(hs.effective_load);
        if (spec.price_noise_sigma > 0.0) p += normal(rng, 0.0, spec.price_noise_sigma);
        price[i] = std::clamp(p, kPriceFloor, kPriceCap);
    }
    series["price"] = std::move(price);

    return {HourlyPanel(std::move(hours), std::move(series)), std::move(catalog), std::move(theta)};
}

}  // namespace stackcast
