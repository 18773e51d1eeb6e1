#pragma once

#include "bandext/kernel.hpp"

#include <array>
#include <span>
#include <vector>

namespace bandext {

/// Causal moving average of a past record, indexed like PastSignal.
struct SmoothedSignal {
    std::vector<double> values;  ///< values[k] = xbar(k - N)
    int window = 1;

    int history() const noexcept { return static_cast<int>(values.size()) - 1; }
};

/// xbar(t) = 1/min(w, t+N+1) * sum_{k=max(t-w,-N)}^{t} x(k), evaluated as written.
///
/// Note the divisor is w while the sum has w+1 terms once the window is
/// full; the formula is kept literally rather than renormalized.
SmoothedSignal moving_average(const PastSignal& x, int w);

/// Piecewise cubic on increasing knots. Interval i holds
/// c0 + c1 d + c2 d^2 + c3 d^3 with d = t - knot[i]. Evaluation outside the
/// knot range continues the nearest end piece.
class PiecewiseCubic {
public:
    using Coeffs = std::array<double, 4>;

    PiecewiseCubic(std::vector<double> knots, std::vector<Coeffs> pieces);

    /// Build from values and slopes at every knot.
    static PiecewiseCubic from_hermite(std::span<const double> knots, std::span<const double> values,
                                       std::span<const double> slopes);

    double operator()(double t) const;
    std::vector<double> operator()(std::span<const double> ts) const;
    double derivative(double t) const;

    std::span<const double> knots() const noexcept { return knots_; }
    std::span<const Coeffs> pieces() const noexcept { return pieces_; }

private:
    std::size_t interval(double t) const;

    std::vector<double> knots_;
    std::vector<Coeffs> pieces_;
};

/// Cubic spline with not-a-knot end conditions (third derivative continuous
/// across the second and second-to-last knots). Needs at least 4 knots.
PiecewiseCubic fit_notaknot(std::span<const double> knots, std::span<const double> values);

/// Shape-preserving piecewise cubic Hermite (Fritsch-Carlson). Needs at least 3 knots.
PiecewiseCubic fit_pchip(std::span<const double> knots, std::span<const double> values);

/// Piecewise linear interpolant. Needs at least 2 knots.
PiecewiseCubic fit_linear(std::span<const double> knots, std::span<const double> values);

/// Knot abscissae -N..0 for a smoothed record.
std::vector<double> time_knots(int history);

std::vector<double> spline_notaknot_extrapolate(const SmoothedSignal& xs, int l);
std::vector<double> pchip_extrapolate(const SmoothedSignal& xs, int l);
std::vector<double> linear_extrapolate(const SmoothedSignal& xs, int l);

} // namespace bandext
