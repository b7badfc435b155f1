// HourlyPanel: an immutable, aligned, gap-free bundle of hourly series.
//
// Series keys follow a dotted convention:
//   cap.<plant>      available capacity, MW
//   gen.<plant>      actual generation, MWh
//   res_da.<plant>   day-ahead RES generation forecast, MWh
//   fuel.<fuel>      fuel price, EUR/MWh thermal
//   eua              CO2 allowance price, EUR/tCO2
//   price            day-ahead price outcome, EUR/MWh
//   load_actual      realized load, MWh
//   load_da          day-ahead load forecast, MWh
//   net_import       realized net imports (signed), MWh
//   hydro_gen        realized run-of-river/reservoir generation, MWh
//   hydro_fc / net_import_fc   optional externally supplied forecasts
//   <base>.<zone>    foreign-zone variants, e.g. load_da.fr
#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "stackcast/hours.hpp"

namespace stackcast {

constexpr double kPriceFloor = -500.0;
constexpr double kPriceCap = 3000.0;

class HourlyPanel {
public:
    HourlyPanel() = default;
    // Validates: contiguous hourly index, equal lengths, finite values,
    // price within the price space, nonnegative capacities/fuels/eua.
    HourlyPanel(std::vector<HourStamp> hours, std::map<std::string, std::vector<double>> series);

    std::size_t size() const { return hours_.size(); }
    bool empty() const { return hours_.empty(); }
    const std::vector<HourStamp>& hours() const { return hours_; }
    HourStamp first_hour() const { return hours_.front(); }
    HourStamp last_hour() const { return hours_.back(); }

    bool has(const std::string& key) const { return series_.count(key) > 0; }
    std::span<const double> series(const std::string& key) const;  // throws MissingSeries
    double at(const std::string& key, std::size_t row) const;
    std::optional<std::size_t> row_of(HourStamp t) const;

    const std::map<std::string, std::vector<double>>& all_series() const { return series_; }

    // Loader diagnostics: how many values per series came from a fill policy.
    std::map<std::string, std::size_t> fill_counts;

private:
    std::vector<HourStamp> hours_;
    std::map<std::string, std::vector<double>> series_;
};

// Disjoint, contiguous, order-preserving split; train ends the hour before cut.
std::pair<HourlyPanel, HourlyPanel> split_train_test(const HourlyPanel& panel, HourStamp cut);

}  // namespace stackcast
