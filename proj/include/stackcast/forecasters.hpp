// Input-forecast and benchmark price models: leakage-safe feature builders,
// the hydro and net-import LASSO models, the naive persistence rule and the
// LASSO expert price model, each as one submodel per hour of day.
//
// Information cutoff (day-ahead auction at 12:00 of d-1): realized hourly
// series are available through hour 10 of d-1; day-ahead forecasts for d are
// available; fuel closes are available through d-2; prices through d-1.
#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "stackcast/assembly.hpp"
#include "stackcast/catalog.hpp"
#include "stackcast/lasso.hpp"
#include "stackcast/panel.hpp"

namespace stackcast {

struct FeatureSpec {
    enum class Kind {
        SameHourLag,   // series at (d - lag, h); cutoff_shift adds the d-1/d-2 base
        CrossHourLag,  // series at (d - lag, fixed hour)
        DailyLag,      // series at (d - lag, hour 0); daily values broadcast
        DailyMax,      // max over hours of (d - lag)
        DailyMin,      // min over hours of (d - lag)
        Exogenous,     // series at (d, h); day-ahead published values
        WeekDay,       // indicator, index 0..6 (Mon..Sun)
        Season         // Fourier pair harmonics, index 0..3
    };
    Kind kind = Kind::Exogenous;
    std::string series;
    int day_lag = 0;
    int hour = 0;   // CrossHourLag only
    int index = 0;  // WeekDay / Season only
    bool cutoff_shift = false;  // base day d-1 for h<=10, d-2 otherwise
    std::string name;
};

struct LinearSpec {
    std::string name;
    std::string target;        // series key
    int target_lag_days = 2;   // training targets end at d - this (1 for published prices)
    std::vector<FeatureSpec> features;
    int max_feature_lag_days() const;
};

class FeatureBuilder {
public:
    explicit FeatureBuilder(const HourlyPanel& panel,
                            std::map<std::string, std::vector<double>> extra = {});
    double value(const FeatureSpec& f, std::int64_t day, int hour) const;
    double target(const LinearSpec& spec, std::int64_t day, int hour) const;
    std::int64_t first_day() const { return first_day_; }
    std::int64_t last_day() const { return last_day_; }

private:
    const HourlyPanel* panel_;
    std::map<std::string, std::vector<double>> extra_;
    std::int64_t first_day_, last_day_;

    double series_at(const std::string& key, std::int64_t day, int hour) const;
};

struct ForecasterConfig {
    int window_days = 365;       // rolling training window
    int lambda_grid = 100;
    double lambda_min_ratio = 1e-4;
    int refit_every_days = 1;    // batch runners refit on this cadence
    std::vector<std::string> zones;  // extra bidding zones for the net-import model
};

// Model builders (per-hour submodels share the spec).
LinearSpec hydro_spec();
LinearSpec net_import_spec(const PlantCatalog& catalog, const std::vector<std::string>& zones);
LinearSpec expert_spec();

// Fits the spec's submodel for hour h on the trailing window and predicts
// (day, hour). Throws InsufficientHistory when no feasible training day exists.
double linear_forecast(const HourlyPanel& panel, const LinearSpec& spec, std::int64_t day,
                       int hour, const ForecasterConfig& cfg,
                       const std::map<std::string, std::vector<double>>& extra = {});

double hydro_forecast(const HourlyPanel& panel, std::int64_t day, int hour,
                      const ForecasterConfig& cfg = {});
double net_import_forecast(const HourlyPanel& panel, const PlantCatalog& catalog,
                           std::int64_t day, int hour, const ForecasterConfig& cfg = {});

// Price_{d-7,h} on Mon/Sat/Sun, else Price_{d-1,h}.
double naive_price(const HourlyPanel& panel, std::int64_t day, int hour);

double expert_price(const HourlyPanel& panel, std::int64_t day, int hour,
                    const ForecasterConfig& cfg = {});

// Batch runners over panel rows (forecast runs share the common CSV format).
ForecastRun run_naive(const HourlyPanel& panel, std::span<const std::size_t> rows);
ForecastRun run_linear(const HourlyPanel& panel, const LinearSpec& spec,
                       std::span<const std::size_t> rows, const ForecasterConfig& cfg,
                       const std::string& model_id, int threads = 1);

}  // namespace stackcast
