// Coordinate-descent LASSO over a descending lambda path with BIC model
// selection. Features are standardized internally; coefficients are reported
// on the original scale. Objective: (1/2N)||y - b0 - Xb||^2 + lambda * |b|_1.
#pragma once

#include <span>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

namespace stackcast {

struct LassoFit {
    std::vector<double> coefficients;  // original scale, one per input column
    double intercept = 0.0;
    double lambda = 0.0;
    double bic = 0.0;
    int nonzero = 0;
    std::vector<double> column_mean;   // standardization statistics
    std::vector<double> column_scale;  // zero for dropped constant columns
    std::vector<double> lambda_path;
    std::vector<double> bic_path;

    double predict(std::span<const double> x) const;
    nlohmann::json to_json() const;
};

// 100 log-spaced values from lambda_max(X, y) down to ratio * lambda_max.
std::vector<double> default_lambda_grid(std::span<const std::vector<double>> columns,
                                        std::span<const double> y, int count = 100,
                                        double min_ratio = 1e-4);

// columns: p vectors of length n (n >= 2). Deterministic. Throws
// DegenerateDesign when every column is constant.
LassoFit lasso_fit(std::span<const std::vector<double>> columns, std::span<const double> y,
                   std::span<const double> lambda_grid);

}  // namespace stackcast
