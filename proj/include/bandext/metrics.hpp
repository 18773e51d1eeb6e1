#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

namespace bandext {

/// (sum_{t=1}^{l} |truth(t) - forecast(t)|^2)^{1/2}; element 0 of each span is t = 1.
double horizon_error(std::span<const double> truth, std::span<const double> forecast, int l);

/// Errors of one trial at one horizon.
struct TrialReport {
    double e_bl = 0.0;
    std::array<double, 3> e_spline{};  ///< not-a-knot cubic, shape-preserving cubic, linear
    int l = 0;
};

struct RatioRow {
    int horizon = 0;
    std::array<double, 3> ratio{};  ///< mean(e_bl) / mean(e_d)
    double mean_bl = 0.0;
    double se_bl = 0.0;
    std::array<double, 3> mean_d{};
    std::array<double, 3> se_d{};
};

struct BenchmarkTable {
    std::vector<RatioRow> rows;  ///< ascending horizon
    std::size_t trials = 0;      ///< reports per horizon
};

/// Groups reports by horizon and takes mean(e_bl)/mean(e_d) for each column.
/// The ratio is of means, not a mean of per-trial ratios.
BenchmarkTable aggregate_ratios(std::span<const TrialReport> trials);

/// 2 ||f1 - f2|| / (||f1|| + ||f2||) over t = 1..l. Lies in [0, 2].
double truncation_discrepancy(std::span<const double> f1, std::span<const double> f2, int l);

struct MeanEstimate {
    double mean = 0.0;
    double std_error = 0.0;
};

/// Sample mean and standard error (sample standard deviation / sqrt(n); 0 for n = 1).
MeanEstimate mean_estimate(std::span<const double> samples);

} // namespace bandext
