#include "stackcast/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <sstream>

#include "stackcast/errors.hpp"
#include "stackcast/threading.hpp"

namespace stackcast {

double mae(std::span<const double> pred, std::span<const double> actual) {
    if (pred.size() != actual.size() || pred.empty())
        throw LengthMismatch("mae needs two aligned non-empty series");
    double acc = 0.0;
    for (std::size_t i = 0; i < pred.size(); ++i) acc += std::abs(pred[i] - actual[i]);
    return acc / static_cast<double>(pred.size());
}

namespace {

// Type-7 empirical quantile (linear interpolation between order statistics).
double quantile_sorted(const std::vector<double>& sorted, double q) {
    if (sorted.size() == 1) return sorted[0];
    double pos = q * static_cast<double>(sorted.size() - 1);
    std::size_t lo = static_cast<std::size_t>(pos);
    if (lo >= sorted.size() - 1) return sorted.back();
    double w = pos - static_cast<double>(lo);
    return sorted[lo] + w * (sorted[lo + 1] - sorted[lo]);
}

}  // namespace

BinAssignment residual_load_bins(const HourlyPanel& panel, std::span<const std::size_t> rows,
                                 int n_bins, const std::vector<std::string>& res_ids) {
    if (rows.empty()) throw LengthMismatch("residual_load_bins: no hours");
    if (n_bins < 1) throw RangeError("residual_load_bins: n_bins must be >= 1");
    auto load = panel.series("load_da");
    std::vector<std::span<const double>> res;
    for (const auto& id : res_ids) res.push_back(panel.series("res_da." + id));
    bool have_price = panel.has("price");

    std::vector<double> resload(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        double v = load[rows[i]];
        for (const auto& s : res) v -= s[rows[i]];
        resload[i] = v;
    }

    std::vector<double> sorted = resload;
    std::sort(sorted.begin(), sorted.end());

    BinAssignment out;
    out.n_bins = n_bins;
    out.rows.assign(rows.begin(), rows.end());
    out.boundaries.resize(static_cast<std::size_t>(n_bins) - 1);
    for (int k = 1; k < n_bins; ++k)
        out.boundaries[static_cast<std::size_t>(k) - 1] =
            quantile_sorted(sorted, static_cast<double>(k) / n_bins);

    out.bin.resize(rows.size());
    out.negative_price.resize(rows.size(), false);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        int b = n_bins - 1;
        for (int k = 0; k < n_bins - 1; ++k) {
            if (resload[i] <= out.boundaries[static_cast<std::size_t>(k)]) {
                b = k;
                break;
            }
        }
        out.bin[i] = b;
        if (have_price) out.negative_price[i] = panel.at("price", rows[i]) < 0.0;
    }
    return out;
}

MetricReport evaluate_run(const ForecastRun& run, const BinAssignment& bins,
                          std::optional<double> naive_mae) {
    if (run.price_actual.empty())
        throw LengthMismatch("run '" + run.model_id + "' carries no actual prices");
    if (run.price_pred.size() != bins.bin.size())
        throw LengthMismatch("run '" + run.model_id + "' does not match the bin assignment");

    MetricReport rep;
    rep.model = run.model_id;
    rep.mae_total = mae(run.price_pred, run.price_actual);
    if (naive_mae) rep.skill_pct = 100.0 * rep.mae_total / *naive_mae;

    rep.bin_mae.assign(static_cast<std::size_t>(bins.n_bins), 0.0);
    rep.bin_count.assign(static_cast<std::size_t>(bins.n_bins), 0);
    double neg_acc = 0.0;
    for (std::size_t i = 0; i < run.price_pred.size(); ++i) {
        double err = std::abs(run.price_pred[i] - run.price_actual[i]);
        auto b = static_cast<std::size_t>(bins.bin[i]);
        rep.bin_mae[b] += err;
        ++rep.bin_count[b];
        if (bins.negative_price[i]) {
            neg_acc += err;
            ++rep.negative_count;
        }
    }
    for (std::size_t b = 0; b < rep.bin_mae.size(); ++b)
        if (rep.bin_count[b] > 0) rep.bin_mae[b] /= static_cast<double>(rep.bin_count[b]);
    rep.negative_mae = rep.negative_count > 0 ? neg_acc / static_cast<double>(rep.negative_count)
                                              : 0.0;
    return rep;
}

std::string MetricReport::to_csv() const {
    std::ostringstream out;
    char buf[64];
    auto num = [&](double v) {
        std::snprintf(buf, sizeof buf, "%.17g", v);
        return std::string(buf);
    };
    out << "metric,value,count\n";
    out << "mae," << num(mae_total) << "," << std::accumulate(bin_count.begin(), bin_count.end(),
                                                              std::size_t{0})
        << "\n";
    if (skill_pct) out << "skill_pct," << num(*skill_pct) << ",\n";
    for (std::size_t b = 0; b < bin_mae.size(); ++b) {
        double lo = 100.0 * static_cast<double>(b) / static_cast<double>(bin_mae.size());
        double hi = 100.0 * static_cast<double>(b + 1) / static_cast<double>(bin_mae.size());
        std::snprintf(buf, sizeof buf, "bin_%g_%g", lo, hi);
        out << buf << "," << num(bin_mae[b]) << "," << bin_count[b] << "\n";
    }
    out << "price_negative," << num(negative_mae) << "," << negative_count << "\n";
    return out.str();
}

std::string metrics_table(std::span<const MetricReport> reports) {
    std::ostringstream out;
    char buf[128];
    out << "res-load bin   ";
    for (const auto& r : reports) {
        std::snprintf(buf, sizeof buf, "%14s", r.model.c_str());
        out << buf;
    }
    out << "\n";
    auto line = [&](const std::string& label, auto getter) {
        std::snprintf(buf, sizeof buf, "%-15s", label.c_str());
        out << buf;
        for (const auto& r : reports) {
            std::snprintf(buf, sizeof buf, "%14.2f", getter(r));
            out << buf;
        }
        out << "\n";
    };
    if (!reports.empty()) {
        std::size_t nb = reports.front().bin_mae.size();
        for (std::size_t b = 0; b < nb; ++b) {
            double lo = 100.0 * static_cast<double>(b) / static_cast<double>(nb);
            double hi = 100.0 * static_cast<double>(b + 1) / static_cast<double>(nb);
            std::snprintf(buf, sizeof buf, "%g%% - %g%%", lo, hi);
            line(buf, [b](const MetricReport& r) { return r.bin_mae[b]; });
        }
        line("price < 0", [](const MetricReport& r) { return r.negative_mae; });
        line("overall", [](const MetricReport& r) { return r.mae_total; });
        line("skill %", [](const MetricReport& r) { return r.skill_pct.value_or(0.0); });
    }
    return out.str();
}

double pearson_correlation(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.size() < 2)
        throw LengthMismatch("pearson needs two aligned series of length >= 2");
    double n = static_cast<double>(x.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxy += (x[i] - mx) * (y[i] - my);
        sxx += (x[i] - mx) * (x[i] - mx);
        syy += (y[i] - my) * (y[i] - my);
    }
    if (sxx == 0.0 || syy == 0.0) return 0.0;
    return sxy / std::sqrt(sxx * syy);
}

namespace {

struct CenteredDistances {
    std::vector<double> row_mean;
    double grand_mean = 0.0;
};

CenteredDistances distance_row_means(std::span<const double> x, int threads) {
    std::size_t n = x.size();
    CenteredDistances cd;
    cd.row_mean.assign(n, 0.0);
    parallel_for(n, threads, [&](std::size_t i) {
        double acc = 0.0;
        for (std::size_t j = 0; j < n; ++j) acc += std::abs(x[i] - x[j]);
        cd.row_mean[i] = acc / static_cast<double>(n);
    });
    for (double v : cd.row_mean) cd.grand_mean += v;
    cd.grand_mean /= static_cast<double>(n);
    return cd;
}

}  // namespace

double distance_correlation(std::span<const double> x, std::span<const double> y, int threads) {
    if (x.size() != y.size() || x.size() < 2)
        throw LengthMismatch("distance correlation needs two aligned series of length >= 2");
    std::size_t n = x.size();
    CenteredDistances ax = distance_row_means(x, threads);
    CenteredDistances ay = distance_row_means(y, threads);

    // Fixed chunk partition: thread count never changes the summation order.
    constexpr std::size_t kChunks = 256;
    std::size_t chunks = std::min(kChunks, n);
    std::vector<double> vxy(chunks, 0.0), vxx(chunks, 0.0), vyy(chunks, 0.0);
    parallel_for(chunks, threads, [&](std::size_t c) {
        std::size_t lo = n * c / chunks;
        std::size_t hi = n * (c + 1) / chunks;
        double sxy = 0.0, sxx = 0.0, syy = 0.0;
        for (std::size_t i = lo; i < hi; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                double a = std::abs(x[i] - x[j]) - ax.row_mean[i] - ax.row_mean[j] + ax.grand_mean;
                double b = std::abs(y[i] - y[j]) - ay.row_mean[i] - ay.row_mean[j] + ay.grand_mean;
                sxy += a * b;
                sxx += a * a;
                syy += b * b;
            }
        }
        vxy[c] = sxy;
        vxx[c] = sxx;
        vyy[c] = syy;
    });
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t c = 0; c < chunks; ++c) {
        sxy += vxy[c];
        sxx += vxx[c];
        syy += vyy[c];
    }
    if (sxx <= 0.0 || syy <= 0.0) return 0.0;
    double d = sxy / std::sqrt(sxx * syy);
    return d < 0.0 ? 0.0 : std::sqrt(d);
}

CorrelationMatrices error_correlations(std::span<const ForecastRun> runs, int threads) {
    if (runs.size() < 2) throw LengthMismatch("error_correlations needs at least 2 runs");
    std::size_t n = runs.front().price_pred.size();
    for (const auto& r : runs) {
        if (r.price_pred.size() != n || r.price_actual.size() != n)
            throw LengthMismatch("runs must cover identical hours with actuals");
        if (r.hours != runs.front().hours)
            throw LengthMismatch("runs must cover identical hours");
    }

    std::vector<std::vector<double>> residuals(runs.size(), std::vector<double>(n));
    for (std::size_t k = 0; k < runs.size(); ++k)
        for (std::size_t i = 0; i < n; ++i)
            residuals[k][i] = runs[k].price_pred[i] - runs[k].price_actual[i];

    CorrelationMatrices out;
    std::size_t kN = runs.size();
    for (const auto& r : runs) out.models.push_back(r.model_id);
    out.pearson.assign(kN * kN, 1.0);
    out.dcor.assign(kN * kN, 1.0);
    for (std::size_t a = 0; a < kN; ++a) {
        for (std::size_t b = a + 1; b < kN; ++b) {
            double p = pearson_correlation(residuals[a], residuals[b]);
            double d = distance_correlation(residuals[a], residuals[b], threads);
            out.pearson[a * kN + b] = out.pearson[b * kN + a] = p;
            out.dcor[a * kN + b] = out.dcor[b * kN + a] = d;
        }
    }
    return out;
}

std::string CorrelationMatrices::to_csv(bool use_dcor) const {
    std::ostringstream out;
    char buf[64];
    out << "model";
    for (const auto& m : models) out << ',' << m;
    out << "\n";
    const auto& mat = use_dcor ? dcor : pearson;
    std::size_t k = models.size();
    for (std::size_t a = 0; a < k; ++a) {
        out << models[a];
        for (std::size_t b = 0; b < k; ++b) {
            std::snprintf(buf, sizeof buf, "%.17g", mat[a * k + b]);
            out << ',' << buf;
        }
        out << "\n";
    }
    return out.str();
}

}  // namespace stackcast
