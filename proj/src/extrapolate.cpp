#include "bandext/extrapolate.hpp"

#include "bandext/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace bandext {

namespace {

void check_method(const BandParams& p, const ExtrapolateOptions& options)
{
    p.validate();
    if (options.method.kind == SolveMethod::Kind::neumann) {
        if (!(p.rho > 0.0)) {
            throw InvalidParams("Neumann method requires rho > 0");
        }
        if (options.method.depth < 0) {
            throw InvalidParams("Neumann depth must be >= 0");
        }
    }
}

double effective_threshold(const ExtrapolateOptions& options)
{
    return options.allow_unregularized ? std::numeric_limits<double>::infinity() : options.near_singular_threshold;
}

std::span<const double> recent(std::span<const double> x, int n_trunc)
{
    const auto keep = std::min(x.size(), static_cast<std::size_t>(n_trunc) + 1);
    return x.last(keep);
}

} // namespace

Extension extrapolate(const PastSignal& x, const BandParams& p, const ExtrapolateOptions& options)
{
    check_method(p, options);
    const PastSignal xs(std::vector<double>(recent(x.values(), p.n_trunc).begin(),
                                            recent(x.values(), p.n_trunc).end()));
    const int n = p.n_trunc;
    const int l = p.horizon;
    const auto op = build_operator(p.omega, n);
    const auto b = assemble_rhs(xs, p.omega, std::max(n, l));

    SolveReport report;
    if (options.method.kind == SolveMethod::Kind::direct) {
        report = solve_direct(op, b, p.rho, DirectSolveOptions{effective_threshold(options)});
    } else {
        report = solve_neumann(op, b, p.rho, options.method.depth);
    }

    Extension ext;
    ext.params = p;
    ext.diagnostics = {report.residual_norm, report.condition_estimate, report.method};
    ext.forecast.assign(report.y_head.begin(), report.y_head.begin() + std::min(n, l));
    if (l > n) {
        const auto tail = tail_extension(b, p.rho, n, l);
        ext.forecast.insert(ext.forecast.end(), tail.begin(), tail.end());
    }
    return ext;
}

std::vector<double> modulate_past(std::span<const double> x)
{
    std::vector<double> out(x.begin(), x.end());
    const std::size_t last = out.size() - 1;
    // t = k - last; (-1)^t depends only on the parity of last - k
    for (std::size_t k = 0; k < out.size(); ++k) {
        if ((last - k) % 2 == 1) {
            out[k] = -out[k];
        }
    }
    return out;
}

std::vector<double> modulate_future(std::span<const double> y)
{
    std::vector<double> out(y.begin(), y.end());
    for (std::size_t i = 0; i < out.size(); i += 2) {
        out[i] = -out[i];  // t = i + 1 is odd
    }
    return out;
}

Extension extrapolate_highband(const PastSignal& x, const BandParams& p, const ExtrapolateOptions& options)
{
    Extension ext = extrapolate(PastSignal(modulate_past(x.values())), p, options);
    ext.forecast = modulate_future(ext.forecast);
    return ext;
}

PastSignal truncate_input(std::span<const double> x, int n)
{
    if (n < 0) {
        throw InvalidParams("truncation horizon must be >= 0");
    }
    if (x.empty()) {
        throw InvalidParams("cannot truncate an empty record");
    }
    const auto keep = recent(x, n);
    return PastSignal(std::vector<double>(keep.begin(), keep.end()));
}

double discarded_norm(std::span<const double> x, int n)
{
    if (n < 0) {
        throw InvalidParams("truncation horizon must be >= 0");
    }
    const auto keep = std::min(x.size(), static_cast<std::size_t>(n) + 1);
    double acc = 0.0;
    for (std::size_t k = 0; k + keep < x.size(); ++k) {
        acc += x[k] * x[k];
    }
    return std::sqrt(acc);
}

PreparedExtrapolator::PreparedExtrapolator(const BandParams& p, const ExtrapolateOptions& options) : params_(p)
{
    p.validate();
    if (options.method.kind != SolveMethod::Kind::direct) {
        throw InvalidParams("prepared extrapolator supports the direct method only");
    }
    const int n = p.n_trunc;
    const int l = p.horizon;
    const int solved_rows = std::min(n, l);
    const auto op = build_operator(p.omega, n);
    const ShiftedSystem system(op, p.rho);
    condition_ = system.condition_estimate();
    const double threshold = effective_threshold(options);
    if (p.rho == 0.0 && !(condition_ <= threshold)) {
        throw NearSingular(condition_, threshold);
    }

    const auto cols = static_cast<std::size_t>(n) + 1;
    // S(t, k) = h(t + n - k) for t = 1..max(n, l), k = 0..n.
    const auto taps = lowpass_taps(p.omega, static_cast<std::size_t>(std::max(n, l) + n) + 1);
    weights_.assign(static_cast<std::size_t>(l) * cols, 0.0);

    std::vector<double> unit(static_cast<std::size_t>(n), 0.0);
    for (int r = 0; r < solved_rows; ++r) {
        // M is symmetric, so row r of M^{-1} is the solution for the r-th unit vector.
        unit[static_cast<std::size_t>(r)] = 1.0;
        const auto g = system.solve(unit);
        unit[static_cast<std::size_t>(r)] = 0.0;
        double* row = weights_.data() + static_cast<std::size_t>(r) * cols;
        for (int i = 0; i < n; ++i) {
            const double gi = g[static_cast<std::size_t>(i)];
            const int t = i + 1;
            for (std::size_t k = 0; k < cols; ++k) {
                row[k] += gi * taps[static_cast<std::size_t>(t + n) - k];
            }
        }
    }
    for (int t = n + 1; t <= l; ++t) {
        double* row = weights_.data() + static_cast<std::size_t>(t - 1) * cols;
        for (std::size_t k = 0; k < cols; ++k) {
            row[k] = taps[static_cast<std::size_t>(t + n) - k] / (1.0 + p.rho);
        }
    }
}

std::vector<double> PreparedExtrapolator::forecast(std::span<const double> x) const
{
    if (x.empty()) {
        throw InvalidParams("past signal must contain at least one observation");
    }
    const auto xs = recent(x, params_.n_trunc);
    const auto cols = static_cast<std::size_t>(params_.n_trunc) + 1;
    const std::size_t offset = cols - xs.size();
    std::vector<double> y(static_cast<std::size_t>(params_.horizon));
    for (std::size_t r = 0; r < y.size(); ++r) {
        const double* row = weights_.data() + r * cols + offset;
        double acc = 0.0;
        for (std::size_t k = 0; k < xs.size(); ++k) {
            acc += row[k] * xs[k];
        }
        y[r] = acc;
    }
    return y;
}

std::vector<double> PreparedExtrapolator::forecast_highband(std::span<const double> x) const
{
    return modulate_future(forecast(modulate_past(x)));
}

} // namespace bandext
