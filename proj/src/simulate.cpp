#include "bandext/simulate.hpp"

#include "bandext/errors.hpp"

#include <bit>
#include <cmath>
#include <numbers>
#include <string>

namespace bandext {

std::uint64_t mix64(std::uint64_t z) noexcept
{
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

} // namespace

Xoshiro256::Xoshiro256(std::uint64_t seed) noexcept
{
    std::uint64_t x = seed;
    for (auto& word : s_) {
        x += kGolden;
        word = mix64(x);
    }
}

std::uint64_t Xoshiro256::next() noexcept
{
    const std::uint64_t result = std::rotl(s_[1] * 5, 7) * 9;
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = std::rotl(s_[3], 45);
    return result;
}

double Xoshiro256::uniform() noexcept
{
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
}

std::pair<double, double> Xoshiro256::normal_pair() noexcept
{
    const double u1 = 1.0 - uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double phase = 2.0 * std::numbers::pi * u2;
    return {r * std::cos(phase), r * std::sin(phase)};
}

std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t trial_id) noexcept
{
    return mix64(seed + kGolden * (trial_id + 1));
}

Xoshiro256 derive_trial_stream(std::uint64_t seed, std::uint64_t trial_id) noexcept
{
    return Xoshiro256(trial_seed(seed, trial_id));
}

void SimConfig::validate() const
{
    if (nu < 1) {
        throw InvalidParams("state dimension nu must be >= 1");
    }
    if (!c.empty() && c.size() != static_cast<std::size_t>(nu)) {
        throw InvalidParams("weight vector c must have nu entries");
    }
    if (n_trunc < 0) {
        throw InvalidParams("path start -N requires N >= 0");
    }
    if (!(switch_prob >= 0.0 && switch_prob <= 1.0)) {
        throw InvalidParams("switch probability must lie in [0, 1]");
    }
    if (initial_transition && initial_transition->size() != static_cast<std::size_t>(nu) * nu) {
        throw InvalidParams("initial transition matrix must have nu*nu entries");
    }
}

std::vector<double> SimConfig::weights() const
{
    if (c.empty()) {
        return std::vector<double>(static_cast<std::size_t>(nu), 1.0);
    }
    return c;
}

namespace {

void draw_transition(Xoshiro256& rng, std::vector<double>& a, int nu)
{
    const double scale = 1.0 / nu;
    for (double& v : a) {
        v = scale * rng.uniform();
    }
}

} // namespace

SimPath generate_path(const SimConfig& cfg, std::uint64_t trial_id, int t_end)
{
    cfg.validate();
    if (t_end < -cfg.n_trunc) {
        throw InvalidParams("t_end must be >= -N");
    }
    const auto nu = static_cast<std::size_t>(cfg.nu);
    const auto c = cfg.weights();

    SimPath path;
    path.n_trunc = cfg.n_trunc;
    path.t_end = t_end;
    path.trial_id = trial_id;
    path.seed_used = trial_seed(cfg.seed, trial_id);
    Xoshiro256 rng(path.seed_used);

    std::vector<double> z(nu), next(nu), eta(nu + 1);
    for (double& v : z) {
        v = rng.uniform();
    }
    std::vector<double> a(nu * nu);
    if (cfg.initial_transition) {
        a = *cfg.initial_transition;
    } else {
        draw_transition(rng, a, cfg.nu);
    }

    auto observe = [&] {
        double acc = 0.0;
        for (std::size_t i = 0; i < nu; ++i) {
            acc += c[i] * z[i];
        }
        return acc;
    };

    path.x.reserve(static_cast<std::size_t>(t_end + cfg.n_trunc) + 1);
    path.x.push_back(observe());
    const double resample_at = 1.0 - cfg.switch_prob;
    for (int t = -cfg.n_trunc + 1; t <= t_end; ++t) {
        const double xi = rng.uniform();
        if (xi >= resample_at) {
            draw_transition(rng, a, cfg.nu);
        }
        for (std::size_t j = 0; j < nu; j += 2) {
            const auto [g0, g1] = rng.normal_pair();
            eta[j] = g0;
            eta[j + 1] = g1;
        }
        for (std::size_t i = 0; i < nu; ++i) {
            double acc = eta[i];
            for (std::size_t j = 0; j < nu; ++j) {
                acc += a[i * nu + j] * z[j];
            }
            next[i] = acc;
        }
        z.swap(next);
        path.x.push_back(observe());
    }
    return path;
}

SimPath truncate_path(const SimPath& path, int n)
{
    if (n < 0 || n > path.n_trunc) {
        throw InvalidParams("suffix start must satisfy 0 <= n <= N of the source path");
    }
    SimPath out;
    out.n_trunc = n;
    out.t_end = path.t_end;
    out.trial_id = path.trial_id;
    out.seed_used = path.seed_used;
    out.x.assign(path.x.begin() + (path.n_trunc - n), path.x.end());
    return out;
}

std::pair<SimPath, SimPath> nested_truncation_paths(const SimConfig& cfg, std::uint64_t trial_id, int n1, int n2,
                                                    int t_end)
{
    if (!(n2 > n1 && n1 >= 0)) {
        throw InvalidParams("nested truncation requires n2 > n1 >= 0, got n1 = " + std::to_string(n1) +
                            ", n2 = " + std::to_string(n2));
    }
    SimConfig long_cfg = cfg;
    long_cfg.n_trunc = n2;
    SimPath full = generate_path(long_cfg, trial_id, t_end);
    SimPath suffix = truncate_path(full, n1);
    return {std::move(full), std::move(suffix)};
}

} // namespace bandext
