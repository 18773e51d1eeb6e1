#pragma once

#include "bandext/extrapolate.hpp"
#include "bandext/metrics.hpp"
#include "bandext/simulate.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace bandext {

/// Monte-Carlo comparison of the band-limited forecast against spline
/// extrapolations of the moving average.
struct ComparisonConfig {
    int nu = 1;
    double omega = 0.0;
    int n_trunc = 50;
    double rho = 0.4;
    int window = 10;
    std::vector<int> horizons{1, 3, 6, 12};
    double switch_prob = 0.5;

    /// Panel 'a': nu = 1, omega = pi/2, N = 50. Panel 'b': nu = 8, omega = pi/5, N = 100.
    static ComparisonConfig panel(char id);
    void validate() const;
    int max_horizon() const;
};

/// Per-horizon reports for one simulated path.
std::vector<TrialReport> comparison_trial(const ComparisonConfig& cfg, const PreparedExtrapolator& forecaster,
                                          std::uint64_t seed, std::uint64_t trial_id);

BenchmarkTable run_comparison(const ComparisonConfig& cfg, std::size_t trials, std::uint64_t seed,
                              unsigned jobs = 1);

/// Truncation-sensitivity study: mean normalized discrepancy between forecasts
/// computed from the last N1 and the last N2 samples of one path.
struct TruncationConfig {
    int nu = 8;
    double omega = 0.0;
    double rho = 0.4;
    int horizon = 12;
    double switch_prob = 0.5;
    /// Diagnostic hook: accept N1 == N2 (both forecasts then use the same record).
    bool allow_equal_pairs = false;

    static TruncationConfig standard();
    void validate() const;
};

struct TruncationRow {
    int n1 = 0;
    int n2 = 0;
    MeanEstimate discrepancy;
};

std::vector<std::pair<int, int>> standard_truncation_pairs();

std::vector<TruncationRow> run_truncation_table(const TruncationConfig& cfg, std::span<const std::pair<int, int>> pairs,
                                                std::size_t trials, std::uint64_t seed, unsigned jobs = 1);

enum class SplineKind { notaknot, pchip, linear };

struct FigureSpec {
    int id = 1;
    int nu = 8;
    double omega = 0.0;
    int n_trunc = 50;
    int window = 10;
    double rho = 0.2;
    int horizon = 10;
    SplineKind spline = SplineKind::notaknot;
    std::optional<int> n_second;  ///< second truncation horizon overlay (figure 3)
    std::string note;

    /// Parameters of figures 1-3. Throws InvalidParams for any other id.
    static FigureSpec standard(int id);
};

/// Aligned curves on t = -T..L, where T is the largest truncation horizon.
/// Entries outside a curve's domain are NaN.
struct FigureData {
    FigureSpec spec;
    std::vector<int> t;
    std::vector<double> x;
    std::vector<double> bl_forecast;
    std::vector<double> moving_avg;
    std::vector<double> spline_forecast;
    std::vector<double> bl_forecast_second;  ///< empty unless spec.n_second is set
};

FigureData figure_data(const FigureSpec& spec, std::uint64_t seed, std::uint64_t trial_id = 0);

} // namespace bandext
