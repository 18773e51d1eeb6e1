#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace bandext {

/// Band edge, regularization weight, truncation horizon and forecast horizon.
struct BandParams {
    double omega = 0.0;   ///< band edge in radians, 0 < omega < pi
    double rho = 0.4;     ///< Tikhonov weight, rho >= 0
    int n_trunc = 1;      ///< truncation horizon N (operator dimension)
    int horizon = 1;      ///< forecast horizon L

    /// Throws InvalidParams when any invariant is violated.
    void validate() const;
};

void validate_omega(double omega);

/// Finite record of observations x(t), t = -N..0.
///
/// Storage element k corresponds to time t = k - N, so the last element is the
/// most recent observation x(0).
class PastSignal {
public:
    PastSignal() = default;
    explicit PastSignal(std::vector<double> values);

    std::span<const double> values() const noexcept { return values_; }
    std::size_t size() const noexcept { return values_.size(); }
    /// Number of samples before t = 0, i.e. N.
    int history() const noexcept { return static_cast<int>(values_.size()) - 1; }
    /// Value at time t, -history() <= t <= 0.
    double at(int t) const { return values_.at(static_cast<std::size_t>(t + history())); }

private:
    std::vector<double> values_;
};

/// sin(u)/u with the removable singularity filled in.
double sinc(double u) noexcept;

/// Ideal low-pass impulse response h(t) = (omega/pi) sinc(omega t).
double lowpass_coeff(double omega, long t);

/// Low-pass taps h(0..count-1).
std::vector<double> lowpass_taps(double omega, std::size_t count);

/// The N x N symmetric Toeplitz matrix with entries h(t - m), 1 <= t,m <= N.
///
/// Only the first row is stored; every entry is read back from it, so symmetry
/// and the Toeplitz property hold exactly.
class TruncatedOperator {
public:
    TruncatedOperator(double omega, std::vector<double> first_row);

    int size() const noexcept { return static_cast<int>(first_row_.size()); }
    double omega() const noexcept { return omega_; }
    std::span<const double> first_row() const noexcept { return first_row_; }

    /// Entry (t, m) with 1-based indices.
    double operator()(int t, int m) const
    {
        const int d = t > m ? t - m : m - t;
        return first_row_[static_cast<std::size_t>(d)];
    }

    /// Row-major dense copy.
    std::vector<double> dense() const;

    /// out = A v; both spans have length size().
    void apply(std::span<const double> v, std::span<double> out) const;
    std::vector<double> apply(std::span<const double> v) const;

private:
    double omega_;
    std::vector<double> first_row_;
};

TruncatedOperator build_operator(double omega, int n);

/// Right-hand side b(t) = (omega/pi) sum_{m=-N..0} x(m) sinc(omega (t - m)), t = 1..t_max.
struct RhsVector {
    std::vector<double> entries;  ///< entries[t - 1] = b(t)

    int t_max() const noexcept { return static_cast<int>(entries.size()); }
    double at(int t) const { return entries.at(static_cast<std::size_t>(t - 1)); }
    std::span<const double> head(int n) const
    {
        return std::span<const double>(entries).first(static_cast<std::size_t>(n));
    }
};

RhsVector assemble_rhs(const PastSignal& x, double omega, int t_max);

} // namespace bandext
