// The optimizable parameter vector: efficiencies, renewable bid bounds,
// capacity correction factors, must-run shares, the gas split fraction and the
// virtual-plant (hydro / net import) controls, each with box bounds, grouped
// into six independently activatable groups. Inactive groups stay pinned at
// their classical initial values, so the all-inactive set reproduces the
// expert merit order.
#pragma once

#include <array>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "stackcast/catalog.hpp"

namespace stackcast {

enum class ParamGroup { Efficiencies, Bids, CapFactors, MustRun, GasSplit, Virtuals };

constexpr std::array<ParamGroup, 6> kAllGroups = {
    ParamGroup::Efficiencies, ParamGroup::Bids,     ParamGroup::CapFactors,
    ParamGroup::MustRun,      ParamGroup::GasSplit, ParamGroup::Virtuals};

std::string to_string(ParamGroup g);
ParamGroup group_from_string(const std::string& s);

struct EfficiencyPair {
    double low = 1.0;   // the L-superscript value
    double high = 1.0;  // the U-superscript value; the pair is not required to be ordered
};

struct ResBidPair {
    double low = 0.0;   // EUR/MWh, <= 0
    double high = 0.0;  // EUR/MWh, >= 0
};

// Expert estimates (efficiency pairs, CO2 intensities) per fuel.
struct FuelExpertValues {
    EfficiencyPair eta;
    double co2_intensity;
};
const FuelExpertValues& expert_values(const std::string& fuel);  // throws UnknownFuel

// Classical bid floor per canonical renewable id; unknown ids fall back to the
// subsidy-free floor of -500.
double classic_bid_low(const std::string& plant_id);

struct ParamEntry {
    std::string name;  // "eta_low.gas", "bid_high.pv", "cf.coal", "mr.lignite", "gs", ...
    ParamGroup group;
    double lower;
    double upper;
    double init;
    bool needs_gas_split = false;  // only meaningful when the gas split is active
};

class ParameterSet {
public:
    ParameterSet() = default;

    // Theta_init: Table-of-expert-values efficiencies, classical RES bids,
    // cf = 1.5 for eligible plants, mr = 0, gs = 0, virtual extensions off.
    static ParameterSet classical(const PlantCatalog& catalog);

    // -- value access ------------------------------------------------------
    double get(const std::string& name) const;
    void set(const std::string& name, double v);
    bool contains(const std::string& name) const { return values_.count(name) > 0; }

    EfficiencyPair efficiency(const std::string& plant_id) const;
    ResBidPair bids(const std::string& plant_id) const;
    double cf(const std::string& plant_id) const;  // 1.0 when the plant has no cf entry
    double mr(const std::string& plant_id) const;  // 0.0 when the plant has no mr entry
    double gas_split() const { return get("gs"); }

    // -- group mask --------------------------------------------------------
    const std::set<ParamGroup>& active_groups() const { return active_; }
    bool is_active(ParamGroup g) const { return active_.count(g) > 0; }
    void set_active_groups(std::set<ParamGroup> groups) { active_ = std::move(groups); }
    void activate(ParamGroup g) { active_.insert(g); }

    // -- schema / optimizer view --------------------------------------------
    const std::vector<ParamEntry>& entries() const { return schema_; }
    // Entries the optimizer may vary: group active, and gas2 efficiencies only
    // once the split itself is active.
    std::vector<ParamEntry> optimizable() const;
    std::vector<double> values_of(std::span<const ParamEntry> entries) const;
    void apply(std::span<const ParamEntry> entries, std::span<const double> x);

    bool in_box(std::string* violation = nullptr) const;
    void clip_to_box();

    // Reset a group's parameters to their classical initial values.
    void reset_group(ParamGroup g);
    // Values at which a newly activated group leaves the model unchanged
    // (gs -> 1 keeps all capacity on the original gas stack; other groups'
    // classical inits are already neutral). The virtual-plant group has no
    // in-box neutral point: activating it always adds the hydro stack.
    void set_group_neutral(ParamGroup g);

    nlohmann::json to_json() const;
    static ParameterSet from_json(const nlohmann::json& j, const PlantCatalog& catalog);

private:
    std::map<std::string, double> values_;
    std::vector<ParamEntry> schema_;
    std::set<ParamGroup> active_;

    const ParamEntry* entry(const std::string& name) const;
};

}  // namespace stackcast
