#include "stackcast/parameters.hpp"

#include <algorithm>
#include <cmath>

#include <nlohmann/json.hpp>

#include "stackcast/errors.hpp"

namespace stackcast {

namespace {

// Box bounds per parameter family.
constexpr double kEtaLowMin = 0.10, kEtaLowMax = 0.50;
constexpr double kEtaHighMin = 0.10, kEtaHighMax = 1.00;
constexpr double kBidLowMin = -500.0, kBidLowMax = 0.0;
constexpr double kBidHighMin = 0.0, kBidHighMax = 20.0;
constexpr double kCfMin = 1.0, kCfMax = 2.0;
constexpr double kCfNetImportMin = 0.0, kCfNetImportMax = 1.0;

const std::map<std::string, FuelExpertValues>& expert_table() {
    static const std::map<std::string, FuelExpertValues> table = {
        {"lignite", {{0.30, 0.43}, 0.40}},
        {"coal", {{0.35, 0.46}, 0.30}},
        {"gas", {{0.25, 0.40}, 0.20}},
        {"oil", {{0.24, 0.44}, 0.30}},
        {"nuclear", {{0.32, 0.42}, 0.03}},
    };
    return table;
}

}  // namespace

const FuelExpertValues& expert_values(const std::string& fuel) {
    const auto& table = expert_table();
    auto it = table.find(fuel);
    if (it == table.end()) throw UnknownFuel("no expert estimates for fuel '" + fuel + "'");
    return it->second;
}

double classic_bid_low(const std::string& plant_id) {
    static const std::map<std::string, double> table = {
        {"pv", -500.0},         {"solar", -500.0},   {"wind_onshore", -70.0},
        {"wind_offshore", -150.0}, {"biomass", -200.0}, {"other_res", -500.0},
        {"hydro", -500.0},
    };
    auto it = table.find(plant_id);
    return it == table.end() ? -500.0 : it->second;
}

std::string to_string(ParamGroup g) {
    switch (g) {
        case ParamGroup::Efficiencies: return "efficiencies";
        case ParamGroup::Bids: return "bids";
        case ParamGroup::CapFactors: return "cap_factors";
        case ParamGroup::MustRun: return "must_run";
        case ParamGroup::GasSplit: return "gas_split";
        case ParamGroup::Virtuals: return "virtuals";
    }
    return "efficiencies";
}

ParamGroup group_from_string(const std::string& s) {
    for (ParamGroup g : kAllGroups)
        if (to_string(g) == s) return g;
    throw InvalidTheta("unknown parameter group: '" + s + "'");
}

ParameterSet ParameterSet::classical(const PlantCatalog& catalog) {
    ParameterSet ps;
    auto add = [&ps](std::string name, ParamGroup group, double lo, double hi, double init,
                     bool needs_split = false) {
        ps.schema_.push_back({name, group, lo, hi, init, needs_split});
        ps.values_[std::move(name)] = init;
    };

    for (const PlantType* p : catalog.conventional()) {
        const auto& ev = expert_values(p->fuel);
        add("eta_low." + p->id, ParamGroup::Efficiencies, kEtaLowMin, kEtaLowMax, ev.eta.low);
        add("eta_high." + p->id, ParamGroup::Efficiencies, kEtaHighMin, kEtaHighMax, ev.eta.high);
    }
    // The open-cycle half of the gas stack, live only under the split.
    if (catalog.has("gas")) {
        add("eta_low.gas2", ParamGroup::Efficiencies, kEtaLowMin, kEtaLowMax, 0.10, true);
        add("eta_high.gas2", ParamGroup::Efficiencies, kEtaHighMin, kEtaHighMax, 0.20, true);
    }
    for (const PlantType* p : catalog.renewable()) {
        add("bid_low." + p->id, ParamGroup::Bids, kBidLowMin, kBidLowMax, classic_bid_low(p->id));
        add("bid_high." + p->id, ParamGroup::Bids, kBidHighMin, kBidHighMax, 20.0);
    }
    for (const auto& p : catalog.plants()) {
        if (p.cf_eligible)
            add("cf." + p.id, ParamGroup::CapFactors, kCfMin, kCfMax, 1.5);
    }
    for (const auto& p : catalog.plants()) {
        if (p.mr_eligible)
            add("mr." + p.id, ParamGroup::MustRun, 0.0, 1.0, 0.0);
    }
    add("gs", ParamGroup::GasSplit, 0.0, 1.0, 0.0);
    // Virtual plants: hydro bids like a renewable, both forecasts get a scale.
    add("bid_low.hydro", ParamGroup::Virtuals, kBidLowMin, kBidLowMax, classic_bid_low("hydro"));
    add("bid_high.hydro", ParamGroup::Virtuals, kBidHighMin, kBidHighMax, 20.0);
    add("cf.hydro", ParamGroup::Virtuals, kCfMin, kCfMax, 1.0);
    add("cf.net_import", ParamGroup::Virtuals, kCfNetImportMin, kCfNetImportMax, 0.0);
    return ps;
}

const ParamEntry* ParameterSet::entry(const std::string& name) const {
    for (const auto& e : schema_)
        if (e.name == name) return &e;
    return nullptr;
}

double ParameterSet::get(const std::string& name) const {
    auto it = values_.find(name);
    if (it == values_.end()) throw InvalidTheta("no parameter named '" + name + "'");
    return it->second;
}

void ParameterSet::set(const std::string& name, double v) {
    auto it = values_.find(name);
    if (it == values_.end()) throw InvalidTheta("no parameter named '" + name + "'");
    it->second = v;
}

EfficiencyPair ParameterSet::efficiency(const std::string& plant_id) const {
    return {get("eta_low." + plant_id), get("eta_high." + plant_id)};
}

ResBidPair ParameterSet::bids(const std::string& plant_id) const {
    return {get("bid_low." + plant_id), get("bid_high." + plant_id)};
}

double ParameterSet::cf(const std::string& plant_id) const {
    auto it = values_.find("cf." + plant_id);
    return it == values_.end() ? 1.0 : it->second;
}

double ParameterSet::mr(const std::string& plant_id) const {
    auto it = values_.find("mr." + plant_id);
    return it == values_.end() ? 0.0 : it->second;
}

std::vector<ParamEntry> ParameterSet::optimizable() const {
    std::vector<ParamEntry> out;
    for (const auto& e : schema_) {
        if (!is_active(e.group)) continue;
        if (e.needs_gas_split && !is_active(ParamGroup::GasSplit)) continue;
        out.push_back(e);
    }
    return out;
}

std::vector<double> ParameterSet::values_of(std::span<const ParamEntry> entries) const {
    std::vector<double> x;
    x.reserve(entries.size());
    for (const auto& e : entries) x.push_back(get(e.name));
    return x;
}

void ParameterSet::apply(std::span<const ParamEntry> entries, std::span<const double> x) {
    if (entries.size() != x.size())
        throw InvalidTheta("parameter vector length mismatch");
    for (std::size_t i = 0; i < entries.size(); ++i) set(entries[i].name, x[i]);
}

bool ParameterSet::in_box(std::string* violation) const {
    for (const auto& e : schema_) {
        double v = get(e.name);
        if (v < e.lower || v > e.upper || !std::isfinite(v)) {
            if (violation)
                *violation = e.name + "=" + std::to_string(v) + " outside [" +
                             std::to_string(e.lower) + ", " + std::to_string(e.upper) + "]";
            return false;
        }
    }
    return true;
}

void ParameterSet::clip_to_box() {
    for (const auto& e : schema_)
        values_[e.name] = std::clamp(values_[e.name], e.lower, e.upper);
}

void ParameterSet::reset_group(ParamGroup g) {
    for (const auto& e : schema_)
        if (e.group == g) values_[e.name] = e.init;
}

void ParameterSet::set_group_neutral(ParamGroup g) {
    reset_group(g);
    if (g == ParamGroup::GasSplit) set("gs", 1.0);
}

nlohmann::json ParameterSet::to_json() const {
    nlohmann::json values = nlohmann::json::object();
    nlohmann::json bounds = nlohmann::json::object();
    for (const auto& e : schema_) {
        values[e.name] = get(e.name);
        bounds[e.name] = {e.lower, e.upper};
    }
    nlohmann::json groups = nlohmann::json::array();
    for (ParamGroup g : kAllGroups)
        if (is_active(g)) groups.push_back(to_string(g));
    return nlohmann::json{{"values", values}, {"bounds", bounds}, {"active_groups", groups}};
}

ParameterSet ParameterSet::from_json(const nlohmann::json& j, const PlantCatalog& catalog) {
    ParameterSet ps = classical(catalog);
    if (!j.contains("values"))
        throw InvalidTheta("theta json needs a 'values' object");
    for (const auto& [name, v] : j.at("values").items()) {
        if (!ps.contains(name))
            throw InvalidTheta("theta value '" + name + "' does not match the catalog");
        ps.set(name, v.get<double>());
    }
    std::set<ParamGroup> groups;
    for (const auto& g : j.value("active_groups", nlohmann::json::array()))
        groups.insert(group_from_string(g.get<std::string>()));
    ps.set_active_groups(std::move(groups));
    std::string why;
    if (!ps.in_box(&why)) throw InvalidTheta("theta out of box: " + why);
    return ps;
}

}  // namespace stackcast
