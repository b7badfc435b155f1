// Per-plant variable-cost bounds: (fuel + intensity * EUA) / efficiency plus
// other costs, evaluated at both efficiencies, returned sorted so that every
// plant stack is nondecreasing, then clamped to the price space.
#pragma once

#include <map>
#include <string>
#include <utility>

#include "stackcast/catalog.hpp"
#include "stackcast/mode.hpp"
#include "stackcast/panel.hpp"
#include "stackcast/parameters.hpp"

namespace stackcast {

struct CostBounds {
    double c_low = 0.0;
    double c_high = 0.0;
};

// Raw per-superscript values, unsorted and unclamped (diagnostics only):
// first element uses eta.low, second uses eta.high.
std::pair<double, double> conventional_cost_candidates(double fuel_price, double eua_price,
                                                       double co2_intensity, EfficiencyPair eff,
                                                       double other_cost);

CostBounds conventional_cost_bounds(double fuel_price, double eua_price, double co2_intensity,
                                    EfficiencyPair eff, double other_cost);

CostBounds res_cost_bounds(const ResBidPair& bids);

// Fleet-wide bounds for one panel row. Test mode reads fuel and EUA prices at
// the configured lag. Virtual plants price at the floor.
std::map<std::string, CostBounds> cost_bounds_for_hour(const PlantCatalog& catalog,
                                                       const HourlyPanel& panel,
                                                       const ParameterSet& params, std::size_t row,
                                                       Mode mode, const ModeConfig& cfg = {});

}  // namespace stackcast
