// Applies the extended parameter set to a panel hour: base capacities,
// capacity correction, gas split, must-run carve-out, hydro and net-import
// virtual plants, then prices the hour against the effective load.
#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "stackcast/catalog.hpp"
#include "stackcast/curve.hpp"
#include "stackcast/mode.hpp"
#include "stackcast/panel.hpp"
#include "stackcast/parameters.hpp"

namespace stackcast {

// Synthetic plant ids introduced by the assembler.
inline constexpr const char* kGas2Id = "gas2";
inline constexpr const char* kMustRunId = "must_run";
inline constexpr const char* kHydroId = "hydro";
inline constexpr const char* kNetImportId = "net_import";

struct HourStacks {
    std::vector<PlantStack> stacks;
    double effective_load = 0.0;
    std::vector<std::string> notes;  // provenance: split halves, virtuals, clamps
};

HourStacks assemble_hour(const PlantCatalog& catalog, const HourlyPanel& panel,
                         const ParameterSet& params, std::size_t row, Mode mode,
                         const ModeConfig& cfg = {});

struct HourPrice {
    double price = 0.0;
    std::optional<Decomposition> decomposition;
};

HourPrice price_hour(const PlantCatalog& catalog, const HourlyPanel& panel,
                     const ParameterSet& params, std::size_t row, Mode mode,
                     const ModeConfig& cfg = {}, bool with_decomposition = false);

struct ForecastRun {
    std::string model_id;
    std::vector<HourStamp> hours;
    std::vector<double> price_pred;
    std::vector<double> price_actual;            // empty when actuals are unknown
    std::vector<std::string> atm_technology;     // empty without decomposition
    std::map<std::string, std::vector<double>> components;  // per-plant marginal fraction

    void write_csv(const std::string& path) const;
    static ForecastRun read_csv(const std::string& path, const std::string& model_id);
};

// Prices the requested rows (parallel map, results in request order).
ForecastRun price_series(const PlantCatalog& catalog, const HourlyPanel& panel,
                         const ParameterSet& params, std::span<const std::size_t> rows, Mode mode,
                         const ModeConfig& cfg = {}, int threads = 1,
                         bool with_decomposition = false);

}  // namespace stackcast
