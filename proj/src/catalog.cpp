#include "stackcast/catalog.hpp"

#include <fstream>
#include <set>

#include <nlohmann/json.hpp>

#include "stackcast/errors.hpp"

namespace stackcast {

namespace {

const std::set<std::string> kPricedFuels = {"gas", "coal", "lignite", "oil", "nuclear"};

}  // namespace

std::string to_string(PlantKind kind) {
    switch (kind) {
        case PlantKind::Conventional: return "conventional";
        case PlantKind::Renewable: return "renewable";
        case PlantKind::Virtual: return "virtual";
    }
    return "conventional";
}

PlantKind plant_kind_from_string(const std::string& s) {
    if (s == "conventional") return PlantKind::Conventional;
    if (s == "renewable") return PlantKind::Renewable;
    if (s == "virtual") return PlantKind::Virtual;
    throw CatalogError("unknown plant kind: '" + s + "'");
}

bool default_cf_eligible(const PlantType& p) {
    return p.kind == PlantKind::Conventional && p.fuel != "nuclear" && kPricedFuels.count(p.fuel) > 0;
}

bool default_mr_eligible(const PlantType& p) {
    return p.kind == PlantKind::Conventional && kPricedFuels.count(p.fuel) > 0;
}

PlantCatalog::PlantCatalog(std::vector<PlantType> plants) : plants_(std::move(plants)) {
    std::set<std::string> seen;
    for (const auto& p : plants_) {
        if (p.id.empty()) throw CatalogError("plant with empty id");
        if (!seen.insert(p.id).second) throw CatalogError("duplicate plant id: '" + p.id + "'");
        if (p.kind == PlantKind::Renewable) {
            if (!p.fuel.empty())
                throw CatalogError("renewable plant '" + p.id + "' must not reference a fuel");
            if (p.co2_intensity != 0.0)
                throw CatalogError("renewable plant '" + p.id + "' must have zero CO2 intensity");
        }
        if (p.kind == PlantKind::Conventional && p.fuel.empty())
            throw CatalogError("conventional plant '" + p.id + "' needs a fuel key");
    }
}

const PlantType* PlantCatalog::find(const std::string& id) const {
    for (const auto& p : plants_)
        if (p.id == id) return &p;
    return nullptr;
}

const PlantType& PlantCatalog::at(const std::string& id) const {
    const PlantType* p = find(id);
    if (!p) throw CatalogError("no plant with id '" + id + "'");
    return *p;
}

std::vector<const PlantType*> PlantCatalog::conventional() const {
    std::vector<const PlantType*> out;
    for (const auto& p : plants_)
        if (p.kind == PlantKind::Conventional) out.push_back(&p);
    return out;
}

std::vector<const PlantType*> PlantCatalog::renewable() const {
    std::vector<const PlantType*> out;
    for (const auto& p : plants_)
        if (p.kind == PlantKind::Renewable) out.push_back(&p);
    return out;
}

PlantCatalog PlantCatalog::from_json(const nlohmann::json& j) {
    if (!j.contains("plants") || !j["plants"].is_array())
        throw CatalogError("catalog json needs a 'plants' array");
    std::vector<PlantType> plants;
    for (const auto& e : j["plants"]) {
        PlantType p;
        p.id = e.at("id").get<std::string>();
        p.kind = plant_kind_from_string(e.value("kind", std::string("conventional")));
        p.fuel = e.value("fuel", std::string());
        p.co2_intensity = e.value("co2_intensity", 0.0);
        p.subsidy_class = e.value("subsidy_class", std::string());
        p.other_cost = e.value("other_cost", 0.0);
        p.cf_eligible = e.contains("cf_eligible") ? e["cf_eligible"].get<bool>() : default_cf_eligible(p);
        p.mr_eligible = e.contains("mr_eligible") ? e["mr_eligible"].get<bool>() : default_mr_eligible(p);
        plants.push_back(std::move(p));
    }
    return PlantCatalog(std::move(plants));
}

PlantCatalog PlantCatalog::from_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw SchemaMismatch("cannot open catalog file: " + path);
    nlohmann::json j;
    in >> j;
    return from_json(j);
}

nlohmann::json PlantCatalog::to_json() const {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& p : plants_) {
        nlohmann::json e;
        e["id"] = p.id;
        e["kind"] = to_string(p.kind);
        if (!p.fuel.empty()) e["fuel"] = p.fuel;
        e["co2_intensity"] = p.co2_intensity;
        if (!p.subsidy_class.empty()) e["subsidy_class"] = p.subsidy_class;
        e["other_cost"] = p.other_cost;
        e["cf_eligible"] = p.cf_eligible;
        e["mr_eligible"] = p.mr_eligible;
        arr.push_back(std::move(e));
    }
    return nlohmann::json{{"plants", std::move(arr)}};
}

}  // namespace stackcast
