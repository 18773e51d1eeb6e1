#include "gen.hpp"
#include "oracles/highprec.hpp"
#include "oracles/jacobi.hpp"
#include "oracles/summation.hpp"

#include <bandext/errors.hpp>
#include <bandext/kernel.hpp>

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace bandext;
using std::numbers::pi;

TEST_CASE("sinc")
{
    CHECK(sinc(0.0) == 1.0);
    CHECK(std::abs(sinc(pi)) <= 1e-15);
    CHECK(sinc(pi / 2) == doctest::Approx(2.0 / pi).epsilon(1e-15));
    CHECK(sinc(pi / 2) == doctest::Approx(0.636619772).epsilon(1e-9));
    gen::Source rng(11);
    for (int i = 0; i < 200; ++i) {
        const double u = rng.uniform(-50.0, 50.0);
        CHECK(sinc(u) == sinc(-u));
    }
}

TEST_CASE("lowpass_coeff values")
{
    CHECK(lowpass_coeff(pi / 2, 0) == 0.5);
    CHECK(std::abs(lowpass_coeff(pi / 2, 2)) <= 1e-15);
    CHECK(lowpass_coeff(pi / 2, 1) == doctest::Approx(1.0 / pi).epsilon(1e-15));
    CHECK(lowpass_coeff(pi / 2, 1) == doctest::Approx(0.318309886).epsilon(1e-9));
    CHECK(lowpass_coeff(pi / 3, -4) == lowpass_coeff(pi / 3, 4));
}

TEST_CASE("lowpass_coeff rejects band edges outside the open interval")
{
    CHECK_THROWS_AS(lowpass_coeff(0.0, 1), InvalidParams);
    CHECK_THROWS_AS(lowpass_coeff(pi, 1), InvalidParams);
    CHECK_THROWS_AS(lowpass_coeff(-1.0, 1), InvalidParams);
    CHECK_THROWS_AS(lowpass_coeff(std::nan(""), 1), InvalidParams);
}

TEST_CASE("BandParams validation")
{
    BandParams p{pi / 2, 0.4, 10, 5};
    CHECK_NOTHROW(p.validate());
    CHECK_THROWS_AS((BandParams{pi, 0.4, 10, 5}.validate()), InvalidParams);
    CHECK_THROWS_AS((BandParams{pi / 2, -0.1, 10, 5}.validate()), InvalidParams);
    CHECK_THROWS_AS((BandParams{pi / 2, 0.4, 0, 5}.validate()), InvalidParams);
    CHECK_THROWS_AS((BandParams{pi / 2, 0.4, 10, 0}.validate()), InvalidParams);
    CHECK_NOTHROW((BandParams{pi / 2, 0.0, 1, 1}.validate()));
}

TEST_CASE("PastSignal")
{
    CHECK_THROWS_AS(PastSignal(std::vector<double>{}), InvalidParams);
    CHECK_THROWS_AS(PastSignal(std::vector<double>{1.0, std::nan("")}), InvalidParams);
    CHECK_THROWS_AS(PastSignal(std::vector<double>{1.0, INFINITY}), InvalidParams);
    const PastSignal x({3.0, 4.0, 5.0});
    CHECK(x.history() == 2);
    CHECK(x.at(0) == 5.0);
    CHECK(x.at(-2) == 3.0);
}

TEST_CASE("build_operator small cases")
{
    const auto a1 = build_operator(pi / 2, 1);
    CHECK(a1.size() == 1);
    CHECK(a1(1, 1) == 0.5);

    const auto a3 = build_operator(pi / 2, 3);
    const auto row = a3.first_row();
    REQUIRE(row.size() == 3);
    CHECK(row[0] == 0.5);
    CHECK(row[1] == doctest::Approx(1.0 / pi).epsilon(1e-15));
    CHECK(std::abs(row[2]) <= 1e-15);

    CHECK_THROWS_AS(build_operator(pi / 2, 0), InvalidParams);
    CHECK_THROWS_AS(build_operator(4.0, 3), InvalidParams);
}

TEST_CASE("operator is exactly symmetric Toeplitz with constant diagonal")
{
    gen::Source rng(21);
    for (int trial = 0; trial < 20; ++trial) {
        const double omega = rng.omega();
        const int n = rng.integer(1, 40);
        const auto a = build_operator(omega, n);
        const auto dense = a.dense();
        for (int t = 1; t <= n; ++t) {
            CHECK(a(t, t) == lowpass_coeff(omega, 0));
            for (int m = 1; m <= n; ++m) {
                CHECK(a(t, m) == a(m, t));
                CHECK(dense[static_cast<std::size_t>((t - 1) * n + (m - 1))] == a(t, m));
                if (t < n && m < n) {
                    CHECK(a(t + 1, m + 1) == a(t, m));
                }
            }
        }
    }
}

TEST_CASE("spectrum of a small operator lies in (0,1) by Jacobi")
{
    const auto a = build_operator(pi / 5, 5);
    oracle::Matrix<double> m(5, std::vector<double>(5));
    for (int i = 0; i < 5; ++i) {
        for (int j = 0; j < 5; ++j) {
            m[i][j] = a(i + 1, j + 1);
        }
    }
    const auto ev = oracle::jacobi_eigenvalues(m, 1e-30);
    CHECK(ev.front() > 0.0);
    CHECK(ev.back() < 1.0);
}

TEST_CASE("centrosymmetric halves carry the full spectrum")
{
    const oracle::mp_real tol("1e-220");
    for (int n : {2, 8, 12}) {
        CAPTURE(n);
        const auto omega = oracle::mp_omega(2, 7);
        const auto full = oracle::jacobi_eigenvalues(oracle::mp_operator(omega, n), tol);
        const auto split = oracle::mp_operator_spectrum(omega, n, tol);
        REQUIRE(split.size() == full.size());
        for (std::size_t i = 0; i < full.size(); ++i) {
            CHECK(abs(full[i] - split[i]) < oracle::mp_real("1e-150"));
        }
    }
}

TEST_CASE("operator and its complement are positive definite (extended precision)")
{
    const int fractions[4][2] = {{1, 5}, {1, 3}, {1, 2}, {3, 4}};
    for (const auto& f : fractions) {
        const auto omega = oracle::mp_omega(f[0], f[1]);
        for (int n : {1, 2, 8, 32, 64}) {
            CAPTURE(f[0]);
            CAPTURE(f[1]);
            CAPTURE(n);
            CHECK(oracle::cholesky_succeeds(oracle::mp_operator(omega, n)));
            CHECK(oracle::cholesky_succeeds(oracle::mp_shifted_operator(omega, n, oracle::mp_real(1), -1)));
        }
    }
}

TEST_CASE("double-precision operator agrees with extended-precision entries")
{
    const auto omega_mp = oracle::mp_omega(1, 3);
    const auto a = build_operator(pi / 3, 64);
    for (int k = 0; k < 64; ++k) {
        const double exact = static_cast<double>(oracle::mp_kernel(omega_mp, k));
        CHECK(std::abs(a.first_row()[static_cast<std::size_t>(k)] - exact) <= 1e-16);
    }
}

TEST_CASE("operator is a strict contraction on random vectors")
{
    gen::Source rng(31);
    const double omegas[] = {pi / 5, pi / 3, pi / 2, 3 * pi / 4};
    for (int trial = 0; trial < 1000; ++trial) {
        const double omega = omegas[trial % 4];
        const int n = rng.integer(1, 64);
        const auto a = build_operator(omega, n);
        const auto v = rng.normals(static_cast<std::size_t>(n));
        const auto av = a.apply(v);
        const double nv = gen::norm2(v);
        CHECK(gen::norm2(av) < nv - 1e-16 * nv);
    }
}

TEST_CASE("assemble_rhs impulse and zero input")
{
    PastSignal impulse({0.0, 0.0, 0.0, 1.0});
    const auto b = assemble_rhs(impulse, pi / 2, 3);
    CHECK(b.t_max() == 3);
    CHECK(b.at(1) == doctest::Approx(1.0 / pi).epsilon(1e-15));
    CHECK(std::abs(b.at(2)) <= 1e-15);
    CHECK(b.at(3) == doctest::Approx(-1.0 / (3.0 * pi)).epsilon(1e-14));

    const auto z = assemble_rhs(PastSignal(std::vector<double>(9, 0.0)), pi / 3, 7);
    for (double v : z.entries) {
        CHECK(v == 0.0);
    }
    CHECK_THROWS_AS(assemble_rhs(impulse, pi / 2, 0), InvalidParams);
}

TEST_CASE("assemble_rhs matches a long-double brute-force sum")
{
    gen::Source rng(41);
    for (int trial = 0; trial < 10; ++trial) {
        const auto xs = rng.normals(8);
        const auto b = assemble_rhs(PastSignal(xs), pi / 3, 6);
        const auto ref = oracle::brute_force_rhs(xs, std::numbers::pi_v<long double> / 3, 6);
        for (int t = 1; t <= 6; ++t) {
            CHECK(std::abs(b.at(t) - static_cast<double>(ref[t - 1])) <= 1e-12);
        }
    }
}

TEST_CASE("assemble_rhs is linear and bounded")
{
    gen::Source rng(51);
    for (int trial = 0; trial < 100; ++trial) {
        const double omega = rng.omega();
        const int n = rng.integer(0, 60);
        const int t_max = rng.integer(1, 80);
        const auto x1 = rng.normals(static_cast<std::size_t>(n) + 1);
        const auto x2 = rng.normals(static_cast<std::size_t>(n) + 1);
        const double alpha = rng.uniform(-3, 3);
        const double beta = rng.uniform(-3, 3);
        std::vector<double> mix(x1.size());
        double l1 = 0.0;
        for (std::size_t k = 0; k < mix.size(); ++k) {
            mix[k] = alpha * x1[k] + beta * x2[k];
            l1 += std::abs(mix[k]);
        }
        const auto b1 = assemble_rhs(PastSignal(x1), omega, t_max);
        const auto b2 = assemble_rhs(PastSignal(x2), omega, t_max);
        const auto bm = assemble_rhs(PastSignal(mix), omega, t_max);
        for (int t = 1; t <= t_max; ++t) {
            const double combo = alpha * b1.at(t) + beta * b2.at(t);
            const double scale = std::abs(alpha * b1.at(t)) + std::abs(beta * b2.at(t)) + 1e-300;
            CHECK(std::abs(bm.at(t) - combo) <= 1e-12 * std::max(scale, std::abs(bm.at(t))) + 1e-15);
            CHECK(std::abs(bm.at(t)) <= omega / pi * l1 * (1 + 1e-14));
            CHECK(std::isfinite(bm.at(t)));
        }
    }
}

TEST_CASE("impulse at t = -k reproduces the shifted kernel exactly")
{
    const double omega = pi / 3;
    for (int k = 0; k <= 6; ++k) {
        std::vector<double> xs(7, 0.0);
        xs[static_cast<std::size_t>(6 - k)] = 1.0;
        const auto b = assemble_rhs(PastSignal(xs), omega, 10);
        for (int t = 1; t <= 10; ++t) {
            CHECK(b.at(t) == lowpass_coeff(omega, t + k));
        }
    }
}
