#pragma once

#include "bandext/kernel.hpp"
#include "bandext/solver.hpp"

#include <span>
#include <vector>

namespace bandext {

struct ExtrapolateOptions {
    SolveMethod method = SolveMethod::direct();
    /// Skip the NearSingular check at rho = 0 and return whatever the
    /// factorization produces. Without it an ill-conditioned unregularized
    /// system is refused.
    bool allow_unregularized = false;
    double near_singular_threshold = 1e12;
};

struct ExtensionDiagnostics {
    double residual_norm = 0.0;
    double condition_estimate = 0.0;
    SolveMethod method;
};

/// Band-limited forecast on t = 1..L.
struct Extension {
    std::vector<double> forecast;  ///< forecast[t - 1] = y(t)
    BandParams params;
    ExtensionDiagnostics diagnostics;
};

/// Band-limited extension of x onto t = 1..p.horizon.
///
/// Only the most recent p.n_trunc + 1 samples of x are used. Values beyond
/// the truncation horizon (L > N) come from the tail formula and are less
/// accurate than the solved block.
Extension extrapolate(const PastSignal& x, const BandParams& p, const ExtrapolateOptions& options = {});

/// High-band variant: the approximant's spectrum sits on [-pi, -pi+omega] U [pi-omega, pi].
/// Computed as (-1)^t extrapolate((-1)^t x)(t).
Extension extrapolate_highband(const PastSignal& x, const BandParams& p, const ExtrapolateOptions& options = {});

/// Keep samples with t >= -n. Returns min(x.size(), n+1) values.
PastSignal truncate_input(std::span<const double> x, int n);

/// l2 norm of the samples truncate_input drops.
double discarded_norm(std::span<const double> x, int n);

/// Multiply sample k of a past record by (-1)^t where t = k - (size-1).
std::vector<double> modulate_past(std::span<const double> x);

/// Multiply forecast element t-1 by (-1)^t.
std::vector<double> modulate_future(std::span<const double> y);

/// Linear map from the last N+1 samples to the first L forecast values,
/// precomputed once per (omega, N, rho, L).
///
/// The forecast is linear in x, y[0..L) = W x, with W = rows 0..L of
/// M^{-1} S where M = (1+rho) I - A_N and S is the sinc matrix that builds
/// the right-hand side. Used by the Monte-Carlo drivers where thousands of
/// records share one operator. Immutable after construction and safe to
/// share between threads.
class PreparedExtrapolator {
public:
    explicit PreparedExtrapolator(const BandParams& p, const ExtrapolateOptions& options = {});

    const BandParams& params() const noexcept { return params_; }
    double condition_estimate() const noexcept { return condition_; }

    /// Forecast from a record of length >= 1; uses the last min(size, N+1) samples.
    std::vector<double> forecast(std::span<const double> x) const;
    std::vector<double> forecast_highband(std::span<const double> x) const;

private:
    BandParams params_;
    double condition_ = 0.0;
    std::vector<double> weights_;  // L x (N+1), row-major; column k multiplies time k - N
};

} // namespace bandext
