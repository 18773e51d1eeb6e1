#include "bandext/experiments.hpp"

#include "bandext/baselines.hpp"
#include "bandext/errors.hpp"
#include "bandext/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <memory>
#include <numbers>

namespace bandext {

ComparisonConfig ComparisonConfig::panel(char id)
{
    ComparisonConfig cfg;
    switch (id) {
    case 'a':
        cfg.nu = 1;
        cfg.omega = std::numbers::pi / 2.0;
        cfg.n_trunc = 50;
        break;
    case 'b':
        cfg.nu = 8;
        cfg.omega = std::numbers::pi / 5.0;
        cfg.n_trunc = 100;
        break;
    default:
        throw InvalidParams(std::string("unknown panel '") + id + "', expected a or b");
    }
    return cfg;
}

void ComparisonConfig::validate() const
{
    BandParams{omega, rho, n_trunc, max_horizon()}.validate();
    if (window < 1) {
        throw InvalidParams("moving-average window must be >= 1");
    }
    if (n_trunc < 3) {
        throw InvalidParams("spline baselines need at least 4 knots (N >= 3)");
    }
    if (horizons.empty()) {
        throw InvalidParams("at least one horizon is required");
    }
    for (int l : horizons) {
        if (l < 1) {
            throw InvalidParams("horizons must be >= 1");
        }
    }
}

int ComparisonConfig::max_horizon() const
{
    return horizons.empty() ? 1 : *std::max_element(horizons.begin(), horizons.end());
}

namespace {

BandParams comparison_band(const ComparisonConfig& cfg)
{
    return BandParams{cfg.omega, cfg.rho, cfg.n_trunc, cfg.max_horizon()};
}

SimConfig sim_config(int nu, int n_trunc, double switch_prob, std::uint64_t seed)
{
    SimConfig sim;
    sim.nu = nu;
    sim.n_trunc = n_trunc;
    sim.switch_prob = switch_prob;
    sim.seed = seed;
    return sim;
}

} // namespace

std::vector<TrialReport> comparison_trial(const ComparisonConfig& cfg, const PreparedExtrapolator& forecaster,
                                          std::uint64_t seed, std::uint64_t trial_id)
{
    const int lmax = cfg.max_horizon();
    const SimPath path = generate_path(sim_config(cfg.nu, cfg.n_trunc, cfg.switch_prob, seed), trial_id, lmax);
    const auto past = path.past();
    const auto truth = path.future();

    const auto bl = forecaster.forecast(past);
    const auto smoothed = moving_average(PastSignal(std::vector<double>(past.begin(), past.end())), cfg.window);
    const std::array<std::vector<double>, 3> baseline{
        spline_notaknot_extrapolate(smoothed, lmax),
        pchip_extrapolate(smoothed, lmax),
        linear_extrapolate(smoothed, lmax),
    };

    std::vector<TrialReport> reports;
    reports.reserve(cfg.horizons.size());
    for (int l : cfg.horizons) {
        TrialReport r;
        r.l = l;
        r.e_bl = horizon_error(truth, bl, l);
        for (std::size_t d = 0; d < 3; ++d) {
            r.e_spline[d] = horizon_error(truth, baseline[d], l);
        }
        if (!std::isfinite(r.e_bl) || !std::all_of(r.e_spline.begin(), r.e_spline.end(),
                                                    [](double e) { return std::isfinite(e); })) {
            throw Error("non-finite forecast error");
        }
        reports.push_back(r);
    }
    return reports;
}

BenchmarkTable run_comparison(const ComparisonConfig& cfg, std::size_t trials, std::uint64_t seed, unsigned jobs)
{
    cfg.validate();
    if (trials < 1) {
        throw InvalidParams("at least one trial is required");
    }
    const PreparedExtrapolator forecaster(comparison_band(cfg));
    std::vector<std::vector<TrialReport>> per_trial(trials);
    for_each_trial(trials, jobs, [&](std::uint64_t id) {
        per_trial[id] = comparison_trial(cfg, forecaster, seed, id);
    });
    std::vector<TrialReport> all;
    all.reserve(trials * cfg.horizons.size());
    for (const auto& reports : per_trial) {
        all.insert(all.end(), reports.begin(), reports.end());
    }
    return aggregate_ratios(all);
}

TruncationConfig TruncationConfig::standard()
{
    TruncationConfig cfg;
    cfg.omega = std::numbers::pi / 2.0;
    return cfg;
}

void TruncationConfig::validate() const
{
    BandParams{omega, rho, 1, horizon}.validate();
    if (nu < 1) {
        throw InvalidParams("state dimension nu must be >= 1");
    }
}

std::vector<std::pair<int, int>> standard_truncation_pairs()
{
    return {{25, 50}, {50, 100}, {100, 250}, {250, 500}, {500, 1000}};
}

std::vector<TruncationRow> run_truncation_table(const TruncationConfig& cfg, std::span<const std::pair<int, int>> pairs,
                                                std::size_t trials, std::uint64_t seed, unsigned jobs)
{
    cfg.validate();
    if (trials < 1) {
        throw InvalidParams("at least one trial is required");
    }
    for (const auto& [n1, n2] : pairs) {
        const bool ordered = n2 > n1 || (cfg.allow_equal_pairs && n2 == n1);
        if (n1 < 1 || !ordered) {
            throw InvalidParams("truncation pair " + std::to_string(n1) + ":" + std::to_string(n2) +
                                " must satisfy N2 > N1 >= 1");
        }
    }

    std::map<int, std::unique_ptr<PreparedExtrapolator>> forecasters;
    for (const auto& [n1, n2] : pairs) {
        for (int n : {n1, n2}) {
            if (!forecasters.contains(n)) {
                forecasters[n] = std::make_unique<PreparedExtrapolator>(BandParams{cfg.omega, cfg.rho, n, cfg.horizon});
            }
        }
    }

    std::vector<TruncationRow> rows;
    for (const auto& [n1, n2] : pairs) {
        const auto& short_fc = *forecasters.at(n1);
        const auto& long_fc = *forecasters.at(n2);
        std::vector<double> values(trials);
        for_each_trial(trials, jobs, [&](std::uint64_t id) {
            const SimConfig sim = sim_config(cfg.nu, n2, cfg.switch_prob, seed);
            std::vector<double> f1;
            std::vector<double> f2;
            if (n1 == n2) {
                const SimPath path = generate_path(sim, id, 0);
                f1 = short_fc.forecast(path.past());
                f2 = long_fc.forecast(path.past());
            } else {
                const auto [full, suffix] = nested_truncation_paths(sim, id, n1, n2, 0);
                f1 = short_fc.forecast(suffix.past());
                f2 = long_fc.forecast(full.past());
            }
            values[id] = truncation_discrepancy(f1, f2, cfg.horizon);
        });
        rows.push_back({n1, n2, mean_estimate(values)});
    }
    return rows;
}

FigureSpec FigureSpec::standard(int id)
{
    FigureSpec spec;
    spec.id = id;
    spec.nu = 8;
    spec.window = 10;
    switch (id) {
    case 1:
        spec.omega = std::numbers::pi / 2.0;
        spec.n_trunc = 50;
        spec.rho = 0.2;
        spec.horizon = 10;
        spec.spline = SplineKind::notaknot;
        break;
    case 2:
        spec.omega = std::numbers::pi / 5.0;
        spec.n_trunc = 100;
        spec.rho = 0.4;
        spec.horizon = 10;
        spec.spline = SplineKind::pchip;
        spec.note = "rho = 0.4; the same example is also run with rho = 0.2";
        break;
    case 3:
        spec.omega = std::numbers::pi / 2.0;
        spec.n_trunc = 50;
        spec.n_second = 100;
        spec.rho = 0.4;
        spec.horizon = 12;
        spec.spline = SplineKind::notaknot;
        spec.note = "bl_forecast uses the last 51 samples of the path, bl_forecast_N2 all 101";
        break;
    default:
        throw InvalidParams("unknown figure id " + std::to_string(id) + ", expected 1, 2 or 3");
    }
    return spec;
}

FigureData figure_data(const FigureSpec& spec, std::uint64_t seed, std::uint64_t trial_id)
{
    const int n_path = std::max(spec.n_trunc, spec.n_second.value_or(spec.n_trunc));
    const int l = spec.horizon;
    const SimPath path = generate_path(sim_config(spec.nu, n_path, 0.5, seed), trial_id, l);
    const SimPath window = truncate_path(path, spec.n_trunc);
    const auto past = window.past();

    const PreparedExtrapolator forecaster(BandParams{spec.omega, spec.rho, spec.n_trunc, l});
    const auto bl = forecaster.forecast(past);
    const auto smoothed = moving_average(PastSignal(std::vector<double>(past.begin(), past.end())), spec.window);
    std::vector<double> spline;
    switch (spec.spline) {
    case SplineKind::notaknot:
        spline = spline_notaknot_extrapolate(smoothed, l);
        break;
    case SplineKind::pchip:
        spline = pchip_extrapolate(smoothed, l);
        break;
    case SplineKind::linear:
        spline = linear_extrapolate(smoothed, l);
        break;
    }

    const double nan = std::numeric_limits<double>::quiet_NaN();
    FigureData fig;
    fig.spec = spec;
    const auto rows = static_cast<std::size_t>(n_path + l) + 1;
    fig.t.resize(rows);
    fig.x = path.x;
    fig.bl_forecast.assign(rows, nan);
    fig.moving_avg.assign(rows, nan);
    fig.spline_forecast.assign(rows, nan);
    for (std::size_t i = 0; i < rows; ++i) {
        fig.t[i] = static_cast<int>(i) - n_path;
    }
    const auto zero = static_cast<std::size_t>(n_path);
    for (int k = 0; k <= spec.n_trunc; ++k) {
        fig.moving_avg[zero - static_cast<std::size_t>(spec.n_trunc - k)] = smoothed.values[static_cast<std::size_t>(k)];
    }
    for (int t = 1; t <= l; ++t) {
        fig.bl_forecast[zero + static_cast<std::size_t>(t)] = bl[static_cast<std::size_t>(t - 1)];
        fig.spline_forecast[zero + static_cast<std::size_t>(t)] = spline[static_cast<std::size_t>(t - 1)];
    }
    if (spec.n_second) {
        const PreparedExtrapolator second(BandParams{spec.omega, spec.rho, *spec.n_second, l});
        const auto bl2 = second.forecast(path.past());
        fig.bl_forecast_second.assign(rows, nan);
        for (int t = 1; t <= l; ++t) {
            fig.bl_forecast_second[zero + static_cast<std::size_t>(t)] = bl2[static_cast<std::size_t>(t - 1)];
        }
    }
    return fig;
}

} // namespace bandext
