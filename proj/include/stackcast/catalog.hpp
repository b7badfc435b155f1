// Plant catalog: the technology set with its renewable/conventional partition
// and the static per-plant attributes used to derive marginal costs.
#pragma once

#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

namespace stackcast {

enum class PlantKind { Conventional, Renewable, Virtual };

std::string to_string(PlantKind kind);
PlantKind plant_kind_from_string(const std::string& s);

struct PlantType {
    std::string id;
    PlantKind kind = PlantKind::Conventional;
    std::string fuel;            // conventional only; key into the fuel price panel
    double co2_intensity = 0.0;  // tCO2 per MWh thermal
    std::string subsidy_class;
    double other_cost = 0.0;     // EUR/MWh variable cost adder
    bool cf_eligible = false;    // capacity correction factor applies
    bool mr_eligible = false;    // can carry a must-run share
};

class PlantCatalog {
public:
    explicit PlantCatalog(std::vector<PlantType> plants);

    const std::vector<PlantType>& plants() const { return plants_; }
    bool has(const std::string& id) const { return find(id) != nullptr; }
    const PlantType* find(const std::string& id) const;
    const PlantType& at(const std::string& id) const;

    std::vector<const PlantType*> conventional() const;
    std::vector<const PlantType*> renewable() const;

    static PlantCatalog from_json(const nlohmann::json& j);
    static PlantCatalog from_json_file(const std::string& path);
    nlohmann::json to_json() const;

private:
    std::vector<PlantType> plants_;
};

// Default eligibility rules applied when a catalog entry does not set the
// flags explicitly: cf and mr for conventional plants burning one of the five
// priced fuels; everything else opts in via the catalog file.
bool default_cf_eligible(const PlantType& p);
bool default_mr_eligible(const PlantType& p);

}  // namespace stackcast
