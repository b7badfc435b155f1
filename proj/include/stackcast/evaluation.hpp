// Error metrics, skill against the naive baseline, residual-load quantile
// breakdowns and residual correlation matrices across models.
#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "stackcast/assembly.hpp"
#include "stackcast/panel.hpp"

namespace stackcast {

double mae(std::span<const double> pred, std::span<const double> actual);

struct BinAssignment {
    int n_bins = 20;
    std::vector<int> bin;                 // per evaluated hour, 0-based
    std::vector<double> boundaries;       // n_bins - 1 upper boundaries
    std::vector<bool> negative_price;     // per evaluated hour
    std::vector<std::size_t> rows;        // panel rows evaluated, in order
};

// Residual load = day-ahead load minus intermittent day-ahead RES. Hours are
// binned by value against empirical quantile boundaries: a tie places the hour
// in the lowest admissible bin, so an all-equal series lands entirely in bin 1.
BinAssignment residual_load_bins(const HourlyPanel& panel, std::span<const std::size_t> rows,
                                 int n_bins = 20,
                                 const std::vector<std::string>& res_ids = {"pv", "wind_onshore",
                                                                            "wind_offshore"});

struct MetricReport {
    std::string model;
    double mae_total = 0.0;
    std::optional<double> skill_pct;  // 100 * mae_model / mae_naive
    std::vector<double> bin_mae;
    std::vector<std::size_t> bin_count;
    double negative_mae = 0.0;
    std::size_t negative_count = 0;

    std::string to_csv() const;
};

MetricReport evaluate_run(const ForecastRun& run, const BinAssignment& bins,
                          std::optional<double> naive_mae);

std::string metrics_table(std::span<const MetricReport> reports);

double pearson_correlation(std::span<const double> x, std::span<const double> y);

// Canonical biased double-centered estimator; O(n^2) time, O(n) memory.
// Deterministic for any thread count (fixed chunked summation).
double distance_correlation(std::span<const double> x, std::span<const double> y, int threads = 1);

struct CorrelationMatrices {
    std::vector<std::string> models;
    std::vector<double> pearson;  // row-major k x k
    std::vector<double> dcor;
    std::string to_csv(bool use_dcor) const;
};

// Residual (pred - actual) correlations for every model pair.
CorrelationMatrices error_correlations(std::span<const ForecastRun> runs, int threads = 1);

}  // namespace stackcast
