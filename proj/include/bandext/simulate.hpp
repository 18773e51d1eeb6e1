#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace bandext {

/// SplitMix64 output function (Stafford mix 13). A bijection on 64-bit words.
std::uint64_t mix64(std::uint64_t z) noexcept;

/// xoshiro256** 1.0 (Blackman and Vigna). State is seeded from a SplitMix64
/// sequence so that no seed yields the all-zero state.
class Xoshiro256 {
public:
    explicit Xoshiro256(std::uint64_t seed) noexcept;

    std::uint64_t next() noexcept;

    /// Uniform on [0, 1) with 53 random bits.
    double uniform() noexcept;

    /// Standard normal pair by Box-Muller: with u1 = 1 - uniform() in (0,1]
    /// and u2 = uniform(), returns (r cos(2 pi u2), r sin(2 pi u2)) with
    /// r = sqrt(-2 ln u1). Consumes exactly two uniforms, u1 first.
    std::pair<double, double> normal_pair() noexcept;

    const std::array<std::uint64_t, 4>& state() const noexcept { return s_; }
    bool operator==(const Xoshiro256&) const = default;

private:
    std::array<std::uint64_t, 4> s_{};
};

/// Seed of the stream owned by one Monte-Carlo trial:
/// mix64(seed + 0x9E3779B97F4A7C15 * (trial_id + 1)).
/// For a fixed master seed distinct trial ids map to distinct stream seeds.
std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t trial_id) noexcept;

Xoshiro256 derive_trial_stream(std::uint64_t seed, std::uint64_t trial_id) noexcept;

/// Randomly switching vector autoregression
///   z(t) = A(t) z(t-1) + eta(t),  x(t) = c . z(t).
struct SimConfig {
    int nu = 1;
    std::vector<double> c;  ///< weights; empty means all ones
    int n_trunc = 50;       ///< path starts at t = -N
    double switch_prob = 0.5;
    std::uint64_t seed = 0;
    /// Test hook: fixed A(-N) (row-major nu x nu) instead of a random draw.
    std::optional<std::vector<double>> initial_transition;

    void validate() const;
    std::vector<double> weights() const;
};

struct SimPath {
    std::vector<double> x;  ///< x[k] = x(k - N) for t = -N..t_end
    int n_trunc = 0;
    int t_end = 0;
    std::uint64_t trial_id = 0;
    std::uint64_t seed_used = 0;

    double at(int t) const { return x.at(static_cast<std::size_t>(t + n_trunc)); }
    /// Observations t = -N..0.
    std::span<const double> past() const
    {
        return std::span<const double>(x).first(static_cast<std::size_t>(n_trunc) + 1);
    }
    /// Hidden values t = 1..t_end.
    std::span<const double> future() const
    {
        return std::span<const double>(x).subspan(static_cast<std::size_t>(n_trunc) + 1);
    }
};

/// Simulate t = -N..t_end. Draw order per trial stream:
///   z(-N): nu uniforms on (0,1); A(-N): nu*nu uniforms scaled to (0,1/nu), row-major
///   (skipped when the test hook fixes A(-N)); then for each t > -N:
///   xi (one uniform); if xi >= 1 - switch_prob a fresh A(t) (nu*nu uniforms),
///   else A(t) = A(t-1); eta(t) from ceil(nu/2) normal pairs, component 2j taking
///   the cosine and 2j+1 the sine value, an unused sine value being discarded.
SimPath generate_path(const SimConfig& cfg, std::uint64_t trial_id, int t_end);

/// One path from -n2 and its suffix from -n1 (shared samples, not re-simulated).
std::pair<SimPath, SimPath> nested_truncation_paths(const SimConfig& cfg, std::uint64_t trial_id, int n1, int n2,
                                                    int t_end);

/// Suffix t = -n..t_end of an existing path.
SimPath truncate_path(const SimPath& path, int n);

} // namespace bandext
