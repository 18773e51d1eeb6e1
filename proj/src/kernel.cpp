#include "bandext/kernel.hpp"

#include "bandext/errors.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace bandext {

void validate_omega(double omega)
{
    if (!(omega > 0.0 && omega < std::numbers::pi)) {
        throw InvalidParams("omega must lie in the open interval (0, pi), got " + std::to_string(omega));
    }
}

void BandParams::validate() const
{
    validate_omega(omega);
    if (!(rho >= 0.0) || !std::isfinite(rho)) {
        throw InvalidParams("rho must be a finite nonnegative number, got " + std::to_string(rho));
    }
    if (n_trunc < 1) {
        throw InvalidParams("truncation horizon must be >= 1, got " + std::to_string(n_trunc));
    }
    if (horizon < 1) {
        throw InvalidParams("forecast horizon must be >= 1, got " + std::to_string(horizon));
    }
}

PastSignal::PastSignal(std::vector<double> values) : values_(std::move(values))
{
    if (values_.empty()) {
        throw InvalidParams("past signal must contain at least one observation");
    }
    for (std::size_t k = 0; k < values_.size(); ++k) {
        if (!std::isfinite(values_[k])) {
            throw InvalidParams("past signal entry " + std::to_string(k) + " is not finite");
        }
    }
}

double sinc(double u) noexcept
{
    if (u == 0.0) {
        return 1.0;
    }
    return std::sin(u) / u;
}

double lowpass_coeff(double omega, long t)
{
    validate_omega(omega);
    return omega / std::numbers::pi * sinc(omega * static_cast<double>(t));
}

std::vector<double> lowpass_taps(double omega, std::size_t count)
{
    validate_omega(omega);
    std::vector<double> taps(count);
    const double scale = omega / std::numbers::pi;
    for (std::size_t k = 0; k < count; ++k) {
        taps[k] = scale * sinc(omega * static_cast<double>(k));
    }
    return taps;
}

TruncatedOperator::TruncatedOperator(double omega, std::vector<double> first_row)
    : omega_(omega), first_row_(std::move(first_row))
{
    if (first_row_.empty()) {
        throw InvalidParams("operator dimension must be >= 1");
    }
}

std::vector<double> TruncatedOperator::dense() const
{
    const std::size_t n = first_row_.size();
    std::vector<double> out(n * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            out[i * n + j] = first_row_[i > j ? i - j : j - i];
        }
    }
    return out;
}

void TruncatedOperator::apply(std::span<const double> v, std::span<double> out) const
{
    const std::size_t n = first_row_.size();
    if (v.size() != n || out.size() != n) {
        throw LengthMismatch("operator apply: vector length does not match dimension");
    }
    for (std::size_t i = 0; i < n; ++i) {
        double acc = 0.0;
        for (std::size_t j = 0; j < i; ++j) {
            acc += first_row_[i - j] * v[j];
        }
        for (std::size_t j = i; j < n; ++j) {
            acc += first_row_[j - i] * v[j];
        }
        out[i] = acc;
    }
}

std::vector<double> TruncatedOperator::apply(std::span<const double> v) const
{
    std::vector<double> out(first_row_.size());
    apply(v, out);
    return out;
}

TruncatedOperator build_operator(double omega, int n)
{
    validate_omega(omega);
    if (n < 1) {
        throw InvalidParams("operator dimension must be >= 1, got " + std::to_string(n));
    }
    return TruncatedOperator(omega, lowpass_taps(omega, static_cast<std::size_t>(n)));
}

RhsVector assemble_rhs(const PastSignal& x, double omega, int t_max)
{
    validate_omega(omega);
    if (t_max < 1) {
        throw InvalidParams("t_max must be >= 1, got " + std::to_string(t_max));
    }
    const auto values = x.values();
    const int history = x.history();
    // b(t) needs h(t - m) for m = -history..0, i.e. lags 1..t_max + history.
    const auto taps = lowpass_taps(omega, static_cast<std::size_t>(t_max + history) + 1);

    RhsVector b;
    b.entries.resize(static_cast<std::size_t>(t_max));
    for (int t = 1; t <= t_max; ++t) {
        double acc = 0.0;
        for (int k = 0; k <= history; ++k) {
            // storage k holds time m = k - history, so t - m = t + history - k
            acc += values[static_cast<std::size_t>(k)] * taps[static_cast<std::size_t>(t + history - k)];
        }
        b.entries[static_cast<std::size_t>(t - 1)] = acc;
    }
    return b;
}

} // namespace bandext
