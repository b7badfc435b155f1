#include "stackcast/lasso.hpp"

#include <algorithm>
#include <cmath>

#include <nlohmann/json.hpp>

#include "stackcast/errors.hpp"

namespace stackcast {

namespace {

constexpr double kCoefTol = 1e-8;   // convergence: max coefficient change
constexpr int kMaxSweeps = 100000;  // safety stop for the unpenalized limit

double soft_threshold(double z, double g) {
    if (z > g) return z - g;
    if (z < -g) return z + g;
    return 0.0;
}

struct Standardized {
    std::size_t n = 0, p = 0;
    std::vector<std::vector<double>> cols;  // zero mean, unit variance; empty if dropped
    std::vector<double> mean, scale;        // scale 0 marks a dropped column
    std::vector<double> yc;                 // centered target
    double ymean = 0.0;
};

Standardized standardize(std::span<const std::vector<double>> columns, std::span<const double> y) {
    Standardized s;
    s.n = y.size();
    s.p = columns.size();
    if (s.n < 2) throw DegenerateDesign("lasso needs at least 2 observations");
    for (const auto& c : columns)
        if (c.size() != s.n) throw LengthMismatch("lasso column length mismatch");

    s.cols.resize(s.p);
    s.mean.resize(s.p);
    s.scale.resize(s.p);
    std::size_t kept = 0;
    for (std::size_t j = 0; j < s.p; ++j) {
        double m = 0.0;
        for (double v : columns[j]) m += v;
        m /= static_cast<double>(s.n);
        double var = 0.0;
        for (double v : columns[j]) var += (v - m) * (v - m);
        var /= static_cast<double>(s.n);  // population variance: sum of squares == n
        s.mean[j] = m;
        if (var <= 0.0) {
            s.scale[j] = 0.0;  // constant column: dropped
            continue;
        }
        s.scale[j] = std::sqrt(var);
        s.cols[j].resize(s.n);
        for (std::size_t i = 0; i < s.n; ++i) s.cols[j][i] = (columns[j][i] - m) / s.scale[j];
        ++kept;
    }
    if (kept == 0) throw DegenerateDesign("every design column is constant");

    s.ymean = 0.0;
    for (double v : y) s.ymean += v;
    s.ymean /= static_cast<double>(s.n);
    s.yc.resize(s.n);
    for (std::size_t i = 0; i < s.n; ++i) s.yc[i] = y[i] - s.ymean;
    return s;
}

}  // namespace

std::vector<double> default_lambda_grid(std::span<const std::vector<double>> columns,
                                        std::span<const double> y, int count, double min_ratio) {
    Standardized s = standardize(columns, y);
    double lmax = 0.0;
    for (std::size_t j = 0; j < s.p; ++j) {
        if (s.scale[j] == 0.0) continue;
        double dot = 0.0;
        for (std::size_t i = 0; i < s.n; ++i) dot += s.cols[j][i] * s.yc[i];
        lmax = std::max(lmax, std::abs(dot) / static_cast<double>(s.n));
    }
    if (lmax <= 0.0) lmax = 1.0;  // constant target: any grid selects the empty model
    std::vector<double> grid(static_cast<std::size_t>(count));
    if (count == 1) {
        grid[0] = lmax;
        return grid;
    }
    double step = std::log(min_ratio) / static_cast<double>(count - 1);
    for (int k = 0; k < count; ++k) grid[static_cast<std::size_t>(k)] = lmax * std::exp(step * k);
    return grid;
}

LassoFit lasso_fit(std::span<const std::vector<double>> columns, std::span<const double> y,
                   std::span<const double> lambda_grid) {
    if (lambda_grid.empty()) throw DegenerateDesign("empty lambda grid");
    Standardized s = standardize(columns, y);
    const auto n = static_cast<double>(s.n);

    // Path in descending lambda with warm starts.
    std::vector<double> order(lambda_grid.begin(), lambda_grid.end());
    std::sort(order.begin(), order.end(), std::greater<>());

    std::vector<double> beta(s.p, 0.0);
    std::vector<double> resid(s.yc);
    std::vector<double> best_beta;
    double best_bic = 0.0, best_lambda = 0.0;
    int best_nnz = 0;
    bool have_best = false;

    LassoFit fit;
    fit.lambda_path = order;
    fit.bic_path.reserve(order.size());

    for (double lambda : order) {
        for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
            double max_change = 0.0;
            for (std::size_t j = 0; j < s.p; ++j) {
                if (s.scale[j] == 0.0) continue;
                const auto& xj = s.cols[j];
                double dot = 0.0;
                for (std::size_t i = 0; i < s.n; ++i) dot += xj[i] * resid[i];
                double z = dot / n + beta[j];  // (1/n) x_j' x_j == 1 after standardization
                double bj = soft_threshold(z, lambda);
                double delta = bj - beta[j];
                if (delta != 0.0) {
                    for (std::size_t i = 0; i < s.n; ++i) resid[i] -= delta * xj[i];
                    beta[j] = bj;
                }
                max_change = std::max(max_change, std::abs(delta));
            }
            if (max_change < kCoefTol) break;
        }

        double rss = 0.0;
        for (double r : resid) rss += r * r;
        int nnz = 0;
        for (std::size_t j = 0; j < s.p; ++j)
            if (beta[j] != 0.0) ++nnz;
        double bic = n * std::log(std::max(rss / n, 1e-300)) +
                     (nnz + 1) * std::log(n);  // +1 for the intercept
        fit.bic_path.push_back(bic);
        if (!have_best || bic < best_bic) {
            have_best = true;
            best_bic = bic;
            best_lambda = lambda;
            best_nnz = nnz;
            best_beta = beta;
        }
    }

    fit.lambda = best_lambda;
    fit.bic = best_bic;
    fit.nonzero = best_nnz;
    fit.column_mean = s.mean;
    fit.column_scale = s.scale;
    fit.coefficients.assign(s.p, 0.0);
    double shift = 0.0;
    for (std::size_t j = 0; j < s.p; ++j) {
        if (s.scale[j] == 0.0) continue;
        fit.coefficients[j] = best_beta[j] / s.scale[j];
        shift += fit.coefficients[j] * s.mean[j];
    }
    fit.intercept = s.ymean - shift;
    return fit;
}

double LassoFit::predict(std::span<const double> x) const {
    double v = intercept;
    for (std::size_t j = 0; j < coefficients.size(); ++j) v += coefficients[j] * x[j];
    return v;
}

nlohmann::json LassoFit::to_json() const {
    nlohmann::json j;
    j["coefficients"] = coefficients;
    j["intercept"] = intercept;
    j["lambda"] = lambda;
    j["bic"] = bic;
    j["nonzero"] = nonzero;
    return j;
}

}  // namespace stackcast
