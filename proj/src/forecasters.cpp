#include "stackcast/forecasters.hpp"

#include <algorithm>
#include <cmath>

#include "stackcast/errors.hpp"
#include "stackcast/threading.hpp"

namespace stackcast {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;
constexpr double kDaysPerYear = 365.25;

// Publication-cutoff base day: hours 1..11 (indices 0..10) of d-1 are realized
// at the 12:00 auction, later hours fall back to d-2.
int cutoff_base(int hour) { return hour <= 10 ? 1 : 2; }

}  // namespace

int LinearSpec::max_feature_lag_days() const {
    int lag = 0;
    for (const auto& f : features) {
        int l = f.day_lag + (f.cutoff_shift ? 2 : 0);
        switch (f.kind) {
            case FeatureSpec::Kind::WeekDay:
            case FeatureSpec::Kind::Season:
            case FeatureSpec::Kind::Exogenous:
                l = 0;
                break;
            default:
                break;
        }
        lag = std::max(lag, l);
    }
    return lag;
}

FeatureBuilder::FeatureBuilder(const HourlyPanel& panel,
                               std::map<std::string, std::vector<double>> extra)
    : panel_(&panel), extra_(std::move(extra)) {
    first_day_ = day_of(panel.first_hour());
    if (hour_of_day(panel.first_hour()) != 0) ++first_day_;  // first complete day
    last_day_ = day_of(panel.last_hour());
    if (hour_of_day(panel.last_hour()) != 23) --last_day_;
}

double FeatureBuilder::series_at(const std::string& key, std::int64_t day, int hour) const {
    auto row = panel_->row_of(day * 24 + hour);
    if (!row) throw InsufficientHistory("feature needs " + format_hour(day * 24 + hour));
    auto it = extra_.find(key);
    if (it != extra_.end()) return it->second[*row];
    return panel_->at(key, *row);
}

double FeatureBuilder::value(const FeatureSpec& f, std::int64_t day, int hour) const {
    switch (f.kind) {
        case FeatureSpec::Kind::SameHourLag: {
            int base = f.cutoff_shift ? cutoff_base(hour) : 0;
            return series_at(f.series, day - base - f.day_lag, hour);
        }
        case FeatureSpec::Kind::CrossHourLag:
            return series_at(f.series, day - f.day_lag, f.hour);
        case FeatureSpec::Kind::DailyLag:
            return series_at(f.series, day - f.day_lag, 0);
        case FeatureSpec::Kind::DailyMax:
        case FeatureSpec::Kind::DailyMin: {
            double acc = series_at(f.series, day - f.day_lag, 0);
            for (int h = 1; h < 24; ++h) {
                double v = series_at(f.series, day - f.day_lag, h);
                acc = f.kind == FeatureSpec::Kind::DailyMax ? std::max(acc, v) : std::min(acc, v);
            }
            return acc;
        }
        case FeatureSpec::Kind::Exogenous:
            return series_at(f.series, day, hour);
        case FeatureSpec::Kind::WeekDay:
            return weekday(day) == f.index ? 1.0 : 0.0;
        case FeatureSpec::Kind::Season: {
            double t = static_cast<double>(day) + static_cast<double>(hour) / 24.0;
            double ang = kTwoPi * t / kDaysPerYear;
            switch (f.index) {
                case 0: return std::sin(ang);
                case 1: return std::cos(ang);
                case 2: return std::sin(2.0 * ang);
                default: return std::cos(2.0 * ang);
            }
        }
    }
    return 0.0;
}

double FeatureBuilder::target(const LinearSpec& spec, std::int64_t day, int hour) const {
    return series_at(spec.target, day, hour);
}

LinearSpec hydro_spec() {
    LinearSpec spec;
    spec.name = "hydro";
    spec.target = "hydro_gen";
    spec.target_lag_days = 2;
    // Cross-hour lags: hours 1..11 from d-1, hours 12..24 from d-2.
    for (int s = 1; s <= 24; ++s) {
        FeatureSpec f;
        f.kind = FeatureSpec::Kind::CrossHourLag;
        f.series = "hydro_gen";
        f.day_lag = s <= 11 ? 1 : 2;
        f.hour = s - 1;
        f.name = "cross_d" + std::to_string(f.day_lag) + "_h" + std::to_string(s);
        spec.features.push_back(std::move(f));
    }
    for (int l = 2; l <= 14; ++l) {
        FeatureSpec f;
        f.kind = FeatureSpec::Kind::SameHourLag;
        f.series = "hydro_gen";
        f.day_lag = l;
        f.name = "lag_d" + std::to_string(l);
        spec.features.push_back(std::move(f));
    }
    for (int i = 0; i < 4; ++i)
        spec.features.push_back({FeatureSpec::Kind::Season, "", 0, 0, i, false,
                                 "season_" + std::to_string(i + 1)});
    for (int i = 0; i < 7; ++i)
        spec.features.push_back({FeatureSpec::Kind::WeekDay, "", 0, 0, i, false,
                                 "dow_" + std::to_string(i + 1)});
    return spec;
}

LinearSpec net_import_spec(const PlantCatalog& catalog, const std::vector<std::string>& zones) {
    LinearSpec spec;
    spec.name = "net_import";
    spec.target = "net_import";
    spec.target_lag_days = 2;

    std::vector<std::string> suffixes = {""};
    for (const auto& z : zones) suffixes.push_back("." + z);

    for (const auto& suffix : suffixes) {
        spec.features.push_back({FeatureSpec::Kind::Exogenous, "load_da" + suffix, 0, 0, 0, false,
                                 "load_da" + suffix});
        for (const PlantType* p : catalog.renewable())
            spec.features.push_back({FeatureSpec::Kind::Exogenous, "res_da." + p->id + suffix, 0,
                                     0, 0, false, "res_da." + p->id + suffix});
        // Latest available conventional generation: d-1 before the cutoff
        // hour, d-2 after it.
        for (const PlantType* p : catalog.conventional())
            spec.features.push_back({FeatureSpec::Kind::SameHourLag, "gen." + p->id + suffix, 0,
                                     0, 0, true, "gen." + p->id + suffix});
    }
    // 14 net-import lags walking back from the cutoff-shifted base day.
    for (int i = 1; i <= 14; ++i)
        spec.features.push_back({FeatureSpec::Kind::SameHourLag, "net_import", i - 1, 0, 0, true,
                                 "ni_lag_" + std::to_string(i)});
    return spec;
}

LinearSpec expert_spec() {
    LinearSpec spec;
    spec.name = "expert";
    spec.target = "price";
    spec.target_lag_days = 1;  // day-ahead prices publish a day ahead
    for (int i = 1; i <= 14; ++i)
        spec.features.push_back({FeatureSpec::Kind::SameHourLag, "price", i, 0, 0, false,
                                 "price_lag_" + std::to_string(i)});
    spec.features.push_back({FeatureSpec::Kind::DailyMax, "price", 1, 0, 0, false, "price_max_d1"});
    spec.features.push_back({FeatureSpec::Kind::DailyMin, "price", 1, 0, 0, false, "price_min_d1"});
    spec.features.push_back(
        {FeatureSpec::Kind::CrossHourLag, "price", 1, 23, 0, false, "price_d1_h24"});
    spec.features.push_back({FeatureSpec::Kind::Exogenous, "load_da", 0, 0, 0, false, "load_da"});
    spec.features.push_back(
        {FeatureSpec::Kind::Exogenous, "res_da_total", 0, 0, 0, false, "res_da_total"});
    for (const char* fuel : {"gas", "coal", "oil"})
        spec.features.push_back({FeatureSpec::Kind::DailyLag, std::string("fuel.") + fuel, 2, 0, 0,
                                 false, std::string(fuel) + "_d2"});
    spec.features.push_back({FeatureSpec::Kind::DailyLag, "eua", 2, 0, 0, false, "eua_d2"});
    for (int i = 0; i < 7; ++i)
        spec.features.push_back({FeatureSpec::Kind::WeekDay, "", 0, 0, i, false,
                                 "dow_" + std::to_string(i + 1)});
    for (int i = 0; i < 4; ++i)
        spec.features.push_back({FeatureSpec::Kind::Season, "", 0, 0, i, false,
                                 "season_" + std::to_string(i + 1)});
    return spec;
}

namespace {

// Sum of the intermittent day-ahead forecasts; series that the panel lacks
// contribute zero.
std::map<std::string, std::vector<double>> expert_extras(const HourlyPanel& panel) {
    std::vector<double> total(panel.size(), 0.0);
    for (const char* id : {"pv", "solar", "wind_onshore", "wind_offshore"}) {
        std::string key = std::string("res_da.") + id;
        if (!panel.has(key)) continue;
        auto s = panel.series(key);
        for (std::size_t i = 0; i < total.size(); ++i) total[i] += s[i];
    }
    return {{"res_da_total", std::move(total)}};
}

struct TrainingWindow {
    std::int64_t first_day;
    std::int64_t last_day;
};

TrainingWindow training_window(const FeatureBuilder& fb, const LinearSpec& spec, std::int64_t day,
                               const ForecasterConfig& cfg) {
    std::int64_t last_target = day - spec.target_lag_days;
    std::int64_t first_feasible = fb.first_day() + spec.max_feature_lag_days();
    std::int64_t first_target = std::max(first_feasible, last_target - cfg.window_days + 1);
    if (last_target < first_target || last_target > fb.last_day())
        throw InsufficientHistory(spec.name + ": no feasible training day before day " +
                                  std::to_string(day));
    return {first_target, last_target};
}

LassoFit fit_hour_model(const FeatureBuilder& fb, const LinearSpec& spec, std::int64_t day,
                        int hour, const ForecasterConfig& cfg) {
    TrainingWindow w = training_window(fb, spec, day, cfg);
    std::size_t n = static_cast<std::size_t>(w.last_day - w.first_day + 1);
    std::vector<std::vector<double>> X(spec.features.size(), std::vector<double>(n));
    std::vector<double> y(n);
    for (std::size_t r = 0; r < n; ++r) {
        std::int64_t d = w.first_day + static_cast<std::int64_t>(r);
        for (std::size_t j = 0; j < spec.features.size(); ++j)
            X[j][r] = fb.value(spec.features[j], d, hour);
        y[r] = fb.target(spec, d, hour);
    }
    std::vector<double> grid = default_lambda_grid(X, y, cfg.lambda_grid, cfg.lambda_min_ratio);
    return lasso_fit(X, y, grid);
}

double predict_with(const LassoFit& fit, const FeatureBuilder& fb, const LinearSpec& spec,
                    std::int64_t day, int hour) {
    std::vector<double> x(spec.features.size());
    for (std::size_t j = 0; j < spec.features.size(); ++j)
        x[j] = fb.value(spec.features[j], day, hour);
    return fit.predict(x);
}

}  // namespace

double linear_forecast(const HourlyPanel& panel, const LinearSpec& spec, std::int64_t day,
                       int hour, const ForecasterConfig& cfg,
                       const std::map<std::string, std::vector<double>>& extra) {
    FeatureBuilder fb(panel, extra);
    LassoFit fit = fit_hour_model(fb, spec, day, hour, cfg);
    return predict_with(fit, fb, spec, day, hour);
}

double hydro_forecast(const HourlyPanel& panel, std::int64_t day, int hour,
                      const ForecasterConfig& cfg) {
    return linear_forecast(panel, hydro_spec(), day, hour, cfg);
}

double net_import_forecast(const HourlyPanel& panel, const PlantCatalog& catalog,
                           std::int64_t day, int hour, const ForecasterConfig& cfg) {
    return linear_forecast(panel, net_import_spec(catalog, cfg.zones), day, hour, cfg);
}

double naive_price(const HourlyPanel& panel, std::int64_t day, int hour) {
    int wd = weekday(day);
    int lag = (wd == 0 || wd == 5 || wd == 6) ? 7 : 1;  // Mon, Sat, Sun
    auto row = panel.row_of((day - lag) * 24 + hour);
    if (!row) throw InsufficientHistory("naive model needs day " + std::to_string(day - lag));
    return panel.at("price", *row);
}

double expert_price(const HourlyPanel& panel, std::int64_t day, int hour,
                    const ForecasterConfig& cfg) {
    return linear_forecast(panel, expert_spec(), day, hour, cfg, expert_extras(panel));
}

ForecastRun run_naive(const HourlyPanel& panel, std::span<const std::size_t> rows) {
    ForecastRun run;
    run.model_id = "naive";
    bool have_actual = panel.has("price");
    for (std::size_t r : rows) {
        HourStamp t = panel.hours()[r];
        run.hours.push_back(t);
        run.price_pred.push_back(naive_price(panel, day_of(t), hour_of_day(t)));
        if (have_actual) run.price_actual.push_back(panel.at("price", r));
    }
    return run;
}

ForecastRun run_linear(const HourlyPanel& panel, const LinearSpec& spec,
                       std::span<const std::size_t> rows, const ForecasterConfig& cfg,
                       const std::string& model_id, int threads) {
    std::map<std::string, std::vector<double>> extra;
    if (spec.name == "expert") extra = expert_extras(panel);
    FeatureBuilder fb(panel, extra);

    // One fit per (hour of day, refit period); fits are independent jobs.
    int cadence = std::max(1, cfg.refit_every_days);
    struct Job {
        std::int64_t fit_day;
        int hour;
    };
    std::vector<Job> jobs;
    std::map<std::pair<std::int64_t, int>, std::size_t> job_of;
    std::vector<std::pair<std::size_t, std::size_t>> row_jobs(rows.size());
    std::int64_t anchor = 0;
    bool have_anchor = false;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        HourStamp t = panel.hours()[rows[i]];
        std::int64_t d = day_of(t);
        if (!have_anchor) {
            anchor = d;
            have_anchor = true;
        }
        std::int64_t fit_day = anchor + ((d - anchor) / cadence) * cadence;
        int h = hour_of_day(t);
        auto key = std::make_pair(fit_day, h);
        auto it = job_of.find(key);
        if (it == job_of.end()) {
            it = job_of.emplace(key, jobs.size()).first;
            jobs.push_back({fit_day, h});
        }
        row_jobs[i] = {it->second, rows[i]};
    }

    std::vector<LassoFit> fits(jobs.size());
    parallel_for(jobs.size(), threads, [&](std::size_t j) {
        fits[j] = fit_hour_model(fb, spec, jobs[j].fit_day, jobs[j].hour, cfg);
    });

    ForecastRun run;
    run.model_id = model_id;
    run.hours.resize(rows.size());
    run.price_pred.resize(rows.size());
    bool have_actual = panel.has("price");
    if (have_actual) run.price_actual.resize(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        auto [job, row] = row_jobs[i];
        HourStamp t = panel.hours()[row];
        run.hours[i] = t;
        run.price_pred[i] = predict_with(fits[job], fb, spec, day_of(t), hour_of_day(t));
        if (have_actual) run.price_actual[i] = panel.at("price", row);
    }
    return run;
}

}  // namespace stackcast
