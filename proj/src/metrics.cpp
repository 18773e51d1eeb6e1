#include "bandext/metrics.hpp"

#include "bandext/errors.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace bandext {

double horizon_error(std::span<const double> truth, std::span<const double> forecast, int l)
{
    if (l < 0) {
        throw InvalidParams("horizon must be >= 0");
    }
    const auto n = static_cast<std::size_t>(l);
    if (truth.size() < n || forecast.size() < n) {
        throw LengthMismatch("horizon_error: sequences shorter than the horizon");
    }
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double d = truth[i] - forecast[i];
        acc += d * d;
    }
    return std::sqrt(acc);
}

MeanEstimate mean_estimate(std::span<const double> samples)
{
    if (samples.empty()) {
        throw EmptyInput("mean of an empty sample");
    }
    const auto n = static_cast<double>(samples.size());
    double sum = 0.0;
    for (double v : samples) {
        sum += v;
    }
    const double mean = sum / n;
    if (samples.size() == 1) {
        return {mean, 0.0};
    }
    double ss = 0.0;
    for (double v : samples) {
        ss += (v - mean) * (v - mean);
    }
    return {mean, std::sqrt(ss / (n - 1.0) / n)};
}

BenchmarkTable aggregate_ratios(std::span<const TrialReport> trials)
{
    if (trials.empty()) {
        throw EmptyInput("aggregate_ratios needs at least one trial");
    }
    struct Columns {
        std::vector<double> bl;
        std::array<std::vector<double>, 3> d;
    };
    std::map<int, Columns> by_horizon;
    for (const auto& r : trials) {
        auto& col = by_horizon[r.l];
        col.bl.push_back(r.e_bl);
        for (std::size_t j = 0; j < 3; ++j) {
            col.d[j].push_back(r.e_spline[j]);
        }
    }

    BenchmarkTable table;
    for (auto& [horizon, col] : by_horizon) {
        // Sorting makes the sums independent of trial order.
        std::sort(col.bl.begin(), col.bl.end());
        RatioRow row;
        row.horizon = horizon;
        const auto bl = mean_estimate(col.bl);
        row.mean_bl = bl.mean;
        row.se_bl = bl.std_error;
        for (std::size_t j = 0; j < 3; ++j) {
            std::sort(col.d[j].begin(), col.d[j].end());
            const auto d = mean_estimate(col.d[j]);
            row.mean_d[j] = d.mean;
            row.se_d[j] = d.std_error;
            row.ratio[j] = bl.mean / d.mean;
        }
        table.rows.push_back(row);
        table.trials = std::max(table.trials, col.bl.size());
    }
    return table;
}

double truncation_discrepancy(std::span<const double> f1, std::span<const double> f2, int l)
{
    if (l < 1) {
        throw InvalidParams("horizon must be >= 1");
    }
    const auto n = static_cast<std::size_t>(l);
    if (f1.size() < n || f2.size() < n) {
        throw LengthMismatch("truncation_discrepancy: forecasts shorter than the horizon");
    }
    double diff = 0.0;
    double n1 = 0.0;
    double n2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double d = f1[i] - f2[i];
        diff += d * d;
        n1 += f1[i] * f1[i];
        n2 += f2[i] * f2[i];
    }
    const double denom = std::sqrt(n1) + std::sqrt(n2);
    if (denom == 0.0) {
        throw BothZero();
    }
    return 2.0 * std::sqrt(diff) / denom;
}

} // namespace bandext
