#include "bandext/baselines.hpp"

#include "bandext/errors.hpp"

#include <algorithm>
#include <cmath>

namespace bandext {

SmoothedSignal moving_average(const PastSignal& x, int w)
{
    if (w < 1) {
        throw InvalidParams("moving-average window must be >= 1, got " + std::to_string(w));
    }
    const auto values = x.values();
    SmoothedSignal out;
    out.window = w;
    out.values.resize(values.size());
    // storage index i corresponds to t = i - N, so t + N + 1 = i + 1 and max(t - w, -N) maps to max(i - w, 0)
    for (std::size_t i = 0; i < values.size(); ++i) {
        const std::size_t first = i >= static_cast<std::size_t>(w) ? i - static_cast<std::size_t>(w) : 0;
        double sum = 0.0;
        for (std::size_t k = first; k <= i; ++k) {
            sum += values[k];
        }
        const auto divisor = std::min(static_cast<std::size_t>(w), i + 1);
        out.values[i] = sum / static_cast<double>(divisor);
    }
    return out;
}

PiecewiseCubic::PiecewiseCubic(std::vector<double> knots, std::vector<Coeffs> pieces)
    : knots_(std::move(knots)), pieces_(std::move(pieces))
{
    if (knots_.size() < 2 || pieces_.size() + 1 != knots_.size()) {
        throw InvalidParams("piecewise cubic needs n >= 2 knots and n - 1 pieces");
    }
    for (std::size_t i = 1; i < knots_.size(); ++i) {
        if (!(knots_[i] > knots_[i - 1])) {
            throw InvalidParams("knots must be strictly increasing");
        }
    }
}

PiecewiseCubic PiecewiseCubic::from_hermite(std::span<const double> knots, std::span<const double> values,
                                            std::span<const double> slopes)
{
    if (knots.size() != values.size() || knots.size() != slopes.size()) {
        throw LengthMismatch("Hermite data: knots, values and slopes must have equal length");
    }
    std::vector<Coeffs> pieces;
    for (std::size_t i = 0; i + 1 < knots.size(); ++i) {
        const double h = knots[i + 1] - knots[i];
        const double delta = (values[i + 1] - values[i]) / h;
        const double c2 = (3.0 * delta - 2.0 * slopes[i] - slopes[i + 1]) / h;
        const double c3 = (slopes[i] + slopes[i + 1] - 2.0 * delta) / (h * h);
        pieces.push_back({values[i], slopes[i], c2, c3});
    }
    return PiecewiseCubic(std::vector<double>(knots.begin(), knots.end()), std::move(pieces));
}

std::size_t PiecewiseCubic::interval(double t) const
{
    const auto it = std::upper_bound(knots_.begin(), knots_.end(), t);
    const auto idx = static_cast<std::size_t>(std::distance(knots_.begin(), it));
    if (idx == 0) {
        return 0;
    }
    return std::min(idx - 1, pieces_.size() - 1);
}

double PiecewiseCubic::operator()(double t) const
{
    const std::size_t i = interval(t);
    const auto& c = pieces_[i];
    const double d = t - knots_[i];
    return c[0] + d * (c[1] + d * (c[2] + d * c[3]));
}

std::vector<double> PiecewiseCubic::operator()(std::span<const double> ts) const
{
    std::vector<double> out;
    out.reserve(ts.size());
    for (double t : ts) {
        out.push_back((*this)(t));
    }
    return out;
}

double PiecewiseCubic::derivative(double t) const
{
    const std::size_t i = interval(t);
    const auto& c = pieces_[i];
    const double d = t - knots_[i];
    return c[1] + d * (2.0 * c[2] + 3.0 * d * c[3]);
}

namespace {

void check_knots(std::span<const double> knots, std::span<const double> values, std::size_t need)
{
    if (knots.size() != values.size()) {
        throw LengthMismatch("knots and values must have equal length");
    }
    if (knots.size() < need) {
        throw TooFewKnots(knots.size(), need);
    }
}

int sign(double v) { return (v > 0.0) - (v < 0.0); }

} // namespace

PiecewiseCubic fit_notaknot(std::span<const double> knots, std::span<const double> values)
{
    check_knots(knots, values, 4);
    const std::size_t n = knots.size();
    std::vector<double> h(n - 1), delta(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        h[i] = knots[i + 1] - knots[i];
        delta[i] = (values[i + 1] - values[i]) / h[i];
    }

    // Tridiagonal system for the knot slopes s: sub[i] s[i-1] + diag[i] s[i] + sup[i] s[i+1] = rhs[i].
    std::vector<double> sub(n, 0.0), diag(n), sup(n, 0.0), rhs(n);
    for (std::size_t i = 1; i + 1 < n; ++i) {
        sub[i] = h[i];
        diag[i] = 2.0 * (h[i - 1] + h[i]);
        sup[i] = h[i - 1];
        rhs[i] = 3.0 * (h[i] * delta[i - 1] + h[i - 1] * delta[i]);
    }
    // Not-a-knot rows: the third derivative is continuous at knots 1 and n-2.
    {
        const double s01 = h[0] + h[1];
        diag[0] = h[1];
        sup[0] = s01;
        rhs[0] = ((h[0] + 2.0 * s01) * h[1] * delta[0] + h[0] * h[0] * delta[1]) / s01;
    }
    {
        const double a = h[n - 3];
        const double b = h[n - 2];
        const double s = a + b;
        sub[n - 1] = s;
        diag[n - 1] = a;
        rhs[n - 1] = (b * b * delta[n - 3] + (2.0 * s + b) * a * delta[n - 2]) / s;
    }

    // Thomas algorithm.
    for (std::size_t i = 1; i < n; ++i) {
        const double m = sub[i] / diag[i - 1];
        diag[i] -= m * sup[i - 1];
        rhs[i] -= m * rhs[i - 1];
    }
    std::vector<double> slopes(n);
    slopes[n - 1] = rhs[n - 1] / diag[n - 1];
    for (std::size_t i = n - 1; i-- > 0;) {
        slopes[i] = (rhs[i] - sup[i] * slopes[i + 1]) / diag[i];
    }
    return PiecewiseCubic::from_hermite(knots, values, slopes);
}

namespace {

// Three-point one-sided slope at an end knot, clamped so the end piece keeps
// the shape of the data:
//   d = ((2 h0 + h1) delta0 - h0 delta1) / (h0 + h1)
//   d = 0        if sign(d) != sign(delta0)
//   d = 3 delta0 if sign(delta0) != sign(delta1) and |d| > 3 |delta0|
double pchip_end_slope(double h0, double h1, double delta0, double delta1)
{
    double d = ((2.0 * h0 + h1) * delta0 - h0 * delta1) / (h0 + h1);
    if (sign(d) != sign(delta0)) {
        d = 0.0;
    } else if (sign(delta0) != sign(delta1) && std::abs(d) > std::abs(3.0 * delta0)) {
        d = 3.0 * delta0;
    }
    return d;
}

} // namespace

PiecewiseCubic fit_pchip(std::span<const double> knots, std::span<const double> values)
{
    check_knots(knots, values, 3);
    const std::size_t n = knots.size();
    std::vector<double> h(n - 1), delta(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        h[i] = knots[i + 1] - knots[i];
        delta[i] = (values[i + 1] - values[i]) / h[i];
    }
    std::vector<double> slopes(n, 0.0);
    for (std::size_t k = 1; k + 1 < n; ++k) {
        if (sign(delta[k - 1]) * sign(delta[k]) > 0) {
            // weighted harmonic mean of the adjacent secants
            const double w1 = 2.0 * h[k] + h[k - 1];
            const double w2 = h[k] + 2.0 * h[k - 1];
            slopes[k] = (w1 + w2) / (w1 / delta[k - 1] + w2 / delta[k]);
        }
    }
    slopes[0] = pchip_end_slope(h[0], h[1], delta[0], delta[1]);
    slopes[n - 1] = pchip_end_slope(h[n - 2], h[n - 3], delta[n - 2], delta[n - 3]);
    return PiecewiseCubic::from_hermite(knots, values, slopes);
}

PiecewiseCubic fit_linear(std::span<const double> knots, std::span<const double> values)
{
    check_knots(knots, values, 2);
    std::vector<PiecewiseCubic::Coeffs> pieces;
    for (std::size_t i = 0; i + 1 < knots.size(); ++i) {
        const double slope = (values[i + 1] - values[i]) / (knots[i + 1] - knots[i]);
        pieces.push_back({values[i], slope, 0.0, 0.0});
    }
    return PiecewiseCubic(std::vector<double>(knots.begin(), knots.end()), std::move(pieces));
}

std::vector<double> time_knots(int history)
{
    std::vector<double> t(static_cast<std::size_t>(history) + 1);
    for (int k = 0; k <= history; ++k) {
        t[static_cast<std::size_t>(k)] = static_cast<double>(k - history);
    }
    return t;
}

namespace {

std::vector<double> future_times(int l)
{
    if (l < 1) {
        throw InvalidParams("extrapolation horizon must be >= 1");
    }
    std::vector<double> t(static_cast<std::size_t>(l));
    for (int i = 0; i < l; ++i) {
        t[static_cast<std::size_t>(i)] = static_cast<double>(i + 1);
    }
    return t;
}

} // namespace

std::vector<double> spline_notaknot_extrapolate(const SmoothedSignal& xs, int l)
{
    const auto t = future_times(l);
    return fit_notaknot(time_knots(xs.history()), xs.values)(t);
}

std::vector<double> pchip_extrapolate(const SmoothedSignal& xs, int l)
{
    const auto t = future_times(l);
    return fit_pchip(time_knots(xs.history()), xs.values)(t);
}

std::vector<double> linear_extrapolate(const SmoothedSignal& xs, int l)
{
    if (xs.values.size() < 2) {
        throw TooFewKnots(xs.values.size(), 2);
    }
    if (l < 1) {
        throw InvalidParams("extrapolation horizon must be >= 1");
    }
    const double last = xs.values.back();
    const double step = last - xs.values[xs.values.size() - 2];
    std::vector<double> out(static_cast<std::size_t>(l));
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] = last + static_cast<double>(i + 1) * step;
    }
    return out;
}

} // namespace bandext
