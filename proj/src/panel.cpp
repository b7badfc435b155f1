#include "stackcast/panel.hpp"

#include <cmath>

#include "stackcast/errors.hpp"

namespace stackcast {

namespace {

bool nonnegative_series(const std::string& key) {
    return key.rfind("cap.", 0) == 0 || key.rfind("fuel.", 0) == 0 || key == "eua" ||
           key == "load_actual" || key == "load_da" || key.rfind("load_da.", 0) == 0;
}

}  // namespace

HourlyPanel::HourlyPanel(std::vector<HourStamp> hours,
                         std::map<std::string, std::vector<double>> series)
    : hours_(std::move(hours)), series_(std::move(series)) {
    if (hours_.empty()) throw SchemaMismatch("panel has no hours");
    for (std::size_t i = 1; i < hours_.size(); ++i) {
        if (hours_[i] != hours_[i - 1] + 1)
            throw GapError("panel index not contiguous at " + format_hour(hours_[i - 1]) +
                           " -> " + format_hour(hours_[i]));
    }
    for (const auto& [key, vals] : series_) {
        if (vals.size() != hours_.size())
            throw SchemaMismatch("series '" + key + "' length " + std::to_string(vals.size()) +
                                 " != index length " + std::to_string(hours_.size()));
        for (std::size_t i = 0; i < vals.size(); ++i) {
            double v = vals[i];
            if (!std::isfinite(v))
                throw GapError("series '" + key + "' missing/non-finite at " + format_hour(hours_[i]));
            if (key == "price" && (v < kPriceFloor || v > kPriceCap))
                throw RangeError("price " + std::to_string(v) + " outside [" +
                                 std::to_string(kPriceFloor) + ", " + std::to_string(kPriceCap) +
                                 "] at " + format_hour(hours_[i]));
            if (nonnegative_series(key) && v < 0.0)
                throw RangeError("series '" + key + "' negative (" + std::to_string(v) + ") at " +
                                 format_hour(hours_[i]));
        }
    }
}

std::span<const double> HourlyPanel::series(const std::string& key) const {
    auto it = series_.find(key);
    if (it == series_.end()) throw MissingSeries("panel has no series '" + key + "'");
    return it->second;
}

double HourlyPanel::at(const std::string& key, std::size_t row) const {
    return series(key)[row];
}

std::optional<std::size_t> HourlyPanel::row_of(HourStamp t) const {
    if (hours_.empty() || t < hours_.front() || t > hours_.back()) return std::nullopt;
    return static_cast<std::size_t>(t - hours_.front());
}

std::pair<HourlyPanel, HourlyPanel> split_train_test(const HourlyPanel& panel, HourStamp cut) {
    if (panel.empty()) throw CutOutOfRange("cannot split an empty panel");
    if (cut <= panel.first_hour() || cut > panel.last_hour())
        throw CutOutOfRange("cut " + format_hour(cut) + " not strictly inside [" +
                            format_hour(panel.first_hour()) + ", " + format_hour(panel.last_hour()) + "]");
    std::size_t k = static_cast<std::size_t>(cut - panel.first_hour());

    std::vector<HourStamp> train_hours(panel.hours().begin(), panel.hours().begin() + k);
    std::vector<HourStamp> test_hours(panel.hours().begin() + k, panel.hours().end());
    std::map<std::string, std::vector<double>> train_series, test_series;
    for (const auto& [key, vals] : panel.all_series()) {
        train_series[key].assign(vals.begin(), vals.begin() + k);
        test_series[key].assign(vals.begin() + k, vals.end());
    }
    return {HourlyPanel(std::move(train_hours), std::move(train_series)),
            HourlyPanel(std::move(test_hours), std::move(test_series))};
}

}  // namespace stackcast
