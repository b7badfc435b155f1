#include "stackcast/costs.hpp"

#include <algorithm>

#include "stackcast/errors.hpp"

namespace stackcast {

namespace {

double clamp_price(double p) { return std::clamp(p, kPriceFloor, kPriceCap); }

std::size_t lagged_row(std::size_t row, int lag_hours, Mode mode) {
    if (mode == Mode::Train || lag_hours <= 0) return row;
    std::size_t lag = static_cast<std::size_t>(lag_hours);
    return row >= lag ? row - lag : 0;  // clamp at the panel start
}

}  // namespace

std::pair<double, double> conventional_cost_candidates(double fuel_price, double eua_price,
                                                       double co2_intensity, EfficiencyPair eff,
                                                       double other_cost) {
    if (eff.low <= 0.0 || eff.high <= 0.0)
        throw NonPositiveEfficiency("efficiency must be positive");
    double thermal = fuel_price + co2_intensity * eua_price;
    return {thermal / eff.low + other_cost, thermal / eff.high + other_cost};
}

CostBounds conventional_cost_bounds(double fuel_price, double eua_price, double co2_intensity,
                                    EfficiencyPair eff, double other_cost) {
    auto [a, b] = conventional_cost_candidates(fuel_price, eua_price, co2_intensity, eff, other_cost);
    return {clamp_price(std::min(a, b)), clamp_price(std::max(a, b))};
}

CostBounds res_cost_bounds(const ResBidPair& bids) {
    return {clamp_price(std::min(bids.low, bids.high)), clamp_price(std::max(bids.low, bids.high))};
}

std::map<std::string, CostBounds> cost_bounds_for_hour(const PlantCatalog& catalog,
                                                       const HourlyPanel& panel,
                                                       const ParameterSet& params, std::size_t row,
                                                       Mode mode, const ModeConfig& cfg) {
    std::size_t fuel_row = lagged_row(row, cfg.fuel_lag_hours, mode);
    double eua = 0.0;
    bool have_eua = panel.has("eua");
    if (have_eua) eua = panel.at("eua", fuel_row);

    std::map<std::string, CostBounds> out;
    for (const auto& p : catalog.plants()) {
        switch (p.kind) {
            case PlantKind::Conventional: {
                if (!panel.has("fuel." + p.fuel))
                    throw MissingFuelSeries("no fuel price series for '" + p.fuel + "'");
                if (!have_eua && p.co2_intensity != 0.0)
                    throw MissingFuelSeries("plant '" + p.id + "' needs the eua series");
                double fuel = panel.at("fuel." + p.fuel, fuel_row);
                out[p.id] = conventional_cost_bounds(fuel, eua, p.co2_intensity,
                                                     params.efficiency(p.id), p.other_cost);
                break;
            }
            case PlantKind::Renewable:
                out[p.id] = res_cost_bounds(params.bids(p.id));
                break;
            case PlantKind::Virtual:
                out[p.id] = {kPriceFloor, kPriceFloor};
                break;
        }
    }
    return out;
}

}  // namespace stackcast
