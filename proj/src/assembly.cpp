#include "stackcast/assembly.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "stackcast/errors.hpp"
#include "stackcast/threading.hpp"

namespace stackcast {

namespace {

std::size_t lagged_row(std::size_t row, int lag_hours) {
    std::size_t lag = lag_hours > 0 ? static_cast<std::size_t>(lag_hours) : 0;
    return row >= lag ? row - lag : 0;
}

// Realized series in train mode; lagged persistence in test mode.
double realized_or_lagged(const HourlyPanel& panel, const std::string& key, std::size_t row,
                          Mode mode, int lag_hours) {
    return panel.at(key, mode == Mode::Train ? row : lagged_row(row, lag_hours));
}

// Hydro / net import inputs: actuals in train mode; in test mode an externally
// supplied forecast series when present, else lagged actuals.
double virtual_input(const HourlyPanel& panel, const std::string& actual_key,
                     const std::string& forecast_key, std::size_t row, Mode mode, int lag_hours) {
    if (mode == Mode::Test && panel.has(forecast_key)) return panel.at(forecast_key, row);
    return realized_or_lagged(panel, actual_key, row, mode, lag_hours);
}

}  // namespace

HourStacks assemble_hour(const PlantCatalog& catalog, const HourlyPanel& panel,
                         const ParameterSet& params, std::size_t row, Mode mode,
                         const ModeConfig& cfg) {
    if (row >= panel.size()) throw RangeError("assemble_hour: row out of range");
    auto bounds = cost_bounds_for_hour(catalog, panel, params, row, mode, cfg);

    HourStacks out;
    out.stacks.reserve(catalog.plants().size() + 3);

    // (1) base capacities, (2) capacity correction
    for (const auto& p : catalog.plants()) {
        double cap = 0.0;
        if (p.kind == PlantKind::Conventional) {
            cap = realized_or_lagged(panel, "cap." + p.id, row, mode, cfg.capacity_lag_hours);
        } else if (p.kind == PlantKind::Renewable) {
            cap = mode == Mode::Train ? panel.at("gen." + p.id, row)
                                      : panel.at("res_da." + p.id, row);
        }
        if (cap < 0.0) cap = 0.0;
        if (p.cf_eligible) cap *= params.cf(p.id);
        out.stacks.push_back({p.id, cap, bounds.at(p.id)});
    }

    // (3) gas split: the corrected gas capacity divides into two stacks with
    // their own efficiency pairs.
    if (params.is_active(ParamGroup::GasSplit)) {
        auto gas_it = std::find_if(out.stacks.begin(), out.stacks.end(),
                                   [](const PlantStack& s) { return s.plant == "gas"; });
        if (gas_it == out.stacks.end())
            throw CatalogError("gas split active but the catalog has no plant 'gas'");
        const PlantType& gas = catalog.at("gas");
        double total = gas_it->cap;
        double gs = params.gas_split();
        gas_it->cap = gs * total;
        double rest = total - gas_it->cap;  // remainder keeps the sum exact

        std::size_t fuel_row = mode == Mode::Test ? lagged_row(row, cfg.fuel_lag_hours) : row;
        double fuel = panel.at("fuel." + gas.fuel, fuel_row);
        double eua = panel.has("eua") ? panel.at("eua", fuel_row) : 0.0;
        CostBounds b2 = conventional_cost_bounds(fuel, eua, gas.co2_intensity,
                                                 params.efficiency(kGas2Id), gas.other_cost);
        out.stacks.insert(gas_it + 1, {kGas2Id, rest, b2});
        out.notes.push_back("gas split " + std::to_string(gs));
    }

    // (4) must-run: shares of the corrected capacities move into one virtual
    // stack at the price floor. Split halves carry the gas share.
    if (params.is_active(ParamGroup::MustRun)) {
        double must_run = 0.0;
        for (auto& s : out.stacks) {
            const std::string& base = s.plant == kGas2Id ? "gas" : s.plant;
            const PlantType* p = catalog.find(base);
            if (!p || !p->mr_eligible) continue;
            double share = params.mr(base);
            double carve = share * s.cap;
            if (carve > s.cap) {  // out-of-box share; clamp with a diagnostic
                out.notes.push_back("must-run clamped for " + s.plant);
                carve = s.cap;
            }
            s.cap -= carve;
            if (s.cap < 0.0) s.cap = 0.0;
            must_run += carve;
        }
        out.stacks.push_back({kMustRunId, must_run, {kPriceFloor, kPriceFloor}});
    }

    // (5) hydro: forecast generation enters like a renewable, scaled by its
    // correction factor.
    double export_shift = 0.0;
    if (params.is_active(ParamGroup::Virtuals)) {
        double hydro = virtual_input(panel, "hydro_gen", "hydro_fc", row, mode,
                                     cfg.capacity_lag_hours);
        if (hydro < 0.0) hydro = 0.0;
        ResBidPair hb = params.bids(kHydroId);
        out.stacks.push_back({kHydroId, params.cf(kHydroId) * hydro, res_cost_bounds(hb)});

        // (6) net import: scaled forecast; imports add floor-priced supply,
        // exports shift the demand instead of going in as negative capacity.
        double ni = params.cf(kNetImportId) * virtual_input(panel, "net_import", "net_import_fc",
                                                            row, mode, cfg.capacity_lag_hours);
        if (ni >= 0.0) {
            out.stacks.push_back({kNetImportId, ni, {kPriceFloor, kPriceFloor}});
        } else {
            export_shift = -ni;
            out.notes.push_back("export shift " + std::to_string(export_shift));
        }
    }

    // (7) effective load
    double load = mode == Mode::Train ? panel.at("load_actual", row) : panel.at("load_da", row);
    out.effective_load = load + export_shift;
    if (out.effective_load < 0.0) out.effective_load = 0.0;
    return out;
}

HourPrice price_hour(const PlantCatalog& catalog, const HourlyPanel& panel,
                     const ParameterSet& params, std::size_t row, Mode mode, const ModeConfig& cfg,
                     bool with_decomposition) {
    HourStacks hs = assemble_hour(catalog, panel, params, row, mode, cfg);
    PiecewiseCurve curve = PiecewiseCurve::aggregate(hs.stacks);
    HourPrice out;
    out.price = std::clamp(curve.eval(hs.effective_load), kPriceFloor, kPriceCap);
    if (with_decomposition) {
        double q = std::min(hs.effective_load, curve.total_capacity());
        out.decomposition = components_at(hs.stacks, curve, q);
    }
    return out;
}

ForecastRun price_series(const PlantCatalog& catalog, const HourlyPanel& panel,
                         const ParameterSet& params, std::span<const std::size_t> rows, Mode mode,
                         const ModeConfig& cfg, int threads, bool with_decomposition) {
    ForecastRun run;
    run.hours.resize(rows.size());
    run.price_pred.resize(rows.size());
    bool have_actual = panel.has("price");
    if (have_actual) run.price_actual.resize(rows.size());
    std::vector<std::optional<Decomposition>> decs;
    if (with_decomposition) decs.resize(rows.size());

    parallel_for(rows.size(), threads, [&](std::size_t i) {
        std::size_t row = rows[i];
        HourPrice hp = price_hour(catalog, panel, params, row, mode, cfg, with_decomposition);
        run.hours[i] = panel.hours()[row];
        run.price_pred[i] = hp.price;
        if (have_actual) run.price_actual[i] = panel.at("price", row);
        if (with_decomposition) decs[i] = std::move(hp.decomposition);
    });

    if (with_decomposition) {
        run.atm_technology.resize(rows.size());
        // A stable column set: every plant that is ever marginal.
        for (std::size_t i = 0; i < decs.size(); ++i) {
            if (!decs[i]) continue;
            for (const auto& [pl, f] : decs[i]->fraction_at_q)
                if (run.components.find(pl) == run.components.end())
                    run.components[pl] = std::vector<double>(rows.size(), 0.0);
        }
        for (std::size_t i = 0; i < decs.size(); ++i) {
            if (!decs[i]) continue;
            const auto& dec = *decs[i];
            run.atm_technology[i] = dec.atm_plants.empty() ? "" : dec.atm_plants.front();
            for (const auto& [pl, f] : dec.fraction_at_q) run.components[pl][i] = f;
        }
    }
    return run;
}

void ForecastRun::write_csv(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw Error("cannot open '" + path + "' for writing");
    out << "ts,price_pred";
    if (!price_actual.empty()) out << ",price_actual";
    if (!atm_technology.empty()) out << ",atm_technology";
    for (const auto& [pl, _] : components) out << ",frac." << pl;
    out << "\n";
    char buf[64];
    auto num = [&](double v) {
        std::snprintf(buf, sizeof buf, "%.17g", v);
        return std::string(buf);
    };
    for (std::size_t i = 0; i < hours.size(); ++i) {
        out << format_hour(hours[i]) << ',' << num(price_pred[i]);
        if (!price_actual.empty()) out << ',' << num(price_actual[i]);
        if (!atm_technology.empty()) out << ',' << atm_technology[i];
        for (const auto& [pl, vals] : components) out << ',' << num(vals[i]);
        out << "\n";
    }
}

ForecastRun ForecastRun::read_csv(const std::string& path, const std::string& model_id) {
    std::ifstream in(path);
    if (!in) throw SchemaMismatch("cannot open run file '" + path + "'");
    std::string line;
    if (!std::getline(in, line)) throw SchemaMismatch("empty run file '" + path + "'");
    std::vector<std::string> header;
    {
        std::stringstream ss(line);
        std::string col;
        while (std::getline(ss, col, ',')) header.push_back(col);
    }
    auto col_index = [&](const std::string& name) -> int {
        for (std::size_t i = 0; i < header.size(); ++i)
            if (header[i] == name) return static_cast<int>(i);
        return -1;
    };
    int c_ts = col_index("ts"), c_pred = col_index("price_pred"), c_act = col_index("price_actual");
    if (c_ts < 0 || c_pred < 0)
        throw SchemaMismatch("run file '" + path + "' needs ts and price_pred columns");

    ForecastRun run;
    run.model_id = model_id;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<std::string> cells;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) cells.push_back(cell);
        if (cells.size() < header.size()) cells.resize(header.size());
        run.hours.push_back(parse_hour(cells[c_ts]));
        run.price_pred.push_back(std::stod(cells[c_pred]));
        if (c_act >= 0) run.price_actual.push_back(std::stod(cells[c_act]));
    }
    return run;
}

}  // namespace stackcast
