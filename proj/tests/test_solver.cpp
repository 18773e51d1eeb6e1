#include "gen.hpp"
#include "oracles/highprec.hpp"

#include <bandext/errors.hpp>
#include <bandext/kernel.hpp>
#include <bandext/solver.hpp>

#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>

using namespace bandext;
using std::numbers::pi;

namespace {

RhsVector random_rhs(gen::Source& rng, int n)
{
    return RhsVector{rng.normals(static_cast<std::size_t>(n))};
}

// cond_2((1+rho) I - A) from extended-precision Jacobi eigenvalues.
double oracle_condition(int num, int den, int n, double rho)
{
    const auto omega = oracle::mp_omega(num, den);
    const auto m = oracle::mp_shifted_operator(omega, n, oracle::mp_real(1) + oracle::mp_real(rho), -1);
    const auto ev = oracle::jacobi_eigenvalues(m, oracle::mp_real("1e-300"));
    return static_cast<double>(ev.back() / ev.front());
}

} // namespace

TEST_CASE("solve_direct on a zero right-hand side")
{
    gen::Source rng(3);
    for (double rho : {0.0, 0.1, 0.4, 2.0}) {
        const int n = rng.integer(1, 30);
        const auto op = build_operator(rng.omega(), n);
        const auto r = solve_direct(op, RhsVector{std::vector<double>(static_cast<std::size_t>(n), 0.0)}, rho,
                                    {std::numeric_limits<double>::infinity()});
        for (double v : r.y_head) {
            CHECK(v == 0.0);
        }
        CHECK(r.residual_norm == 0.0);
        CHECK(r.method == SolveMethod::direct());
    }
}

TEST_CASE("solve_direct scalar system")
{
    const auto op = build_operator(pi / 2, 1);
    const auto r = solve_direct(op, RhsVector{{1.0}}, 0.0);
    REQUIRE(r.y_head.size() == 1);
    CHECK(r.y_head[0] == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(r.condition_estimate == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(condition_estimate(op, 0.0) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("solve_direct agrees with a deep Neumann sum")
{
    gen::Source rng(5);
    const auto op = build_operator(pi / 3, 32);
    for (int trial = 0; trial < 5; ++trial) {
        const auto b = random_rhs(rng, 32);
        const auto d = solve_direct(op, b, 0.4);
        const auto nm = solve_neumann(op, b, 0.4, 200);
        CHECK(gen::max_abs_diff(d.y_head, nm.y_head) <= 1e-9);
        CHECK(nm.method == SolveMethod::neumann(200));
        CHECK(nm.method.name() == "neumann(200)");
    }
}

TEST_CASE("solve_direct input validation")
{
    const auto op = build_operator(pi / 2, 4);
    CHECK_THROWS_AS(solve_direct(op, RhsVector{{1.0, 2.0}}, 0.4), LengthMismatch);
    CHECK_THROWS_AS(solve_direct(op, RhsVector{{1.0, 2.0, 3.0, 4.0}}, -0.1), InvalidParams);
    // A longer right-hand side is fine: only t = 1..N enters the system.
    CHECK(solve_direct(op, RhsVector{{1.0, 2.0, 3.0, 4.0, 5.0}}, 0.4).y_head.size() == 4);
}

TEST_CASE("NearSingular at rho = 0 for a large ill-conditioned operator")
{
    const auto op = build_operator(pi / 5, 64);
    gen::Source rng(7);
    const auto b = random_rhs(rng, 64);
    CHECK_THROWS_AS(solve_direct(op, b, 0.0), NearSingular);
    try {
        solve_direct(op, b, 0.0);
    } catch (const NearSingular& e) {
        CHECK(e.condition() > 1e12);
        CHECK(e.threshold() == 1e12);
    }
    // Regularized, the same system is benign.
    CHECK_NOTHROW(solve_direct(op, b, 0.4));
    // A threshold of infinity turns the check off.
    CHECK_NOTHROW(solve_direct(op, b, 0.0, {std::numeric_limits<double>::infinity()}));
}

TEST_CASE("solve_neumann basics")
{
    gen::Source rng(9);
    const auto op = build_operator(pi / 2, 12);
    const auto b = random_rhs(rng, 12);
    const auto r0 = solve_neumann(op, b, 0.4, 0);
    for (int t = 0; t < 12; ++t) {
        CHECK(r0.y_head[static_cast<std::size_t>(t)] == doctest::Approx(b.entries[static_cast<std::size_t>(t)] / 1.4).epsilon(1e-15));
    }
    const RhsVector zero{std::vector<double>(12, 0.0)};
    for (int depth : {0, 1, 5, 50}) {
        for (double v : solve_neumann(op, zero, 0.4, depth).y_head) {
            CHECK(v == 0.0);
        }
    }
    CHECK(solve_neumann(op, b, 0.4, 150).condition_estimate == doctest::Approx(3.5));
    CHECK_THROWS_AS(solve_neumann(op, b, 0.0, 10), InvalidParams);
    CHECK_THROWS_AS(solve_neumann(op, b, -1.0, 10), InvalidParams);
    CHECK_THROWS_AS(solve_neumann(op, b, 0.4, -1), InvalidParams);
}

TEST_CASE("Neumann error decays geometrically")
{
    gen::Source rng(13);
    const double rho = 0.4;
    const auto op = build_operator(pi / 2, 16);
    const auto b = random_rhs(rng, 16);
    const auto exact = solve_direct(op, b, rho).y_head;
    const double bound_ratio = 1.0 / (1.0 + rho);
    const double e0 = gen::norm2([&] {
        auto d = solve_neumann(op, b, rho, 0).y_head;
        for (std::size_t i = 0; i < d.size(); ++i) {
            d[i] -= exact[i];
        }
        return d;
    }());
    double previous_correction = std::numeric_limits<double>::infinity();
    for (int depth = 0; depth <= 60; ++depth) {
        const auto r = solve_neumann(op, b, rho, depth);
        std::vector<double> diff(r.y_head.size());
        for (std::size_t i = 0; i < diff.size(); ++i) {
            diff[i] = r.y_head[i] - exact[i];
        }
        const double err = gen::norm2(diff);
        CAPTURE(depth);
        CHECK(err <= e0 * std::pow(bound_ratio, depth) * (1 + 1e-9) + 1e-14);
        CHECK(r.last_correction_norm <= previous_correction);
        previous_correction = r.last_correction_norm;
    }
}

TEST_CASE("tail_extension")
{
    const RhsVector b{{1.0, 2.0, 3.0, 4.0, 5.0, 6.0}};
    const auto tail0 = tail_extension(b, 0.0, 2, 6);
    CHECK(tail0 == std::vector<double>{3.0, 4.0, 5.0, 6.0});
    const auto tail = tail_extension(b, 0.25, 4, 6);
    CHECK(tail == std::vector<double>{5.0 / 1.25, 6.0 / 1.25});
    const RhsVector zeros{{1.0, 1.0, 0.0, 0.0}};
    for (double v : tail_extension(zeros, 0.4, 2, 4)) {
        CHECK(v == 0.0);
    }
    CHECK_THROWS_AS(tail_extension(b, 0.4, 6, 6), InvalidParams);
    CHECK_THROWS_AS(tail_extension(b, 0.4, 2, 7), LengthMismatch);
}

TEST_CASE("head plus tail solves the zero-padded extended system")
{
    gen::Source rng(17);
    const double rho = 0.4;
    const int n = 8;
    const int l = 12;
    const double omega = rng.omega();
    const PastSignal x(rng.normals(n + 1));
    const auto op = build_operator(omega, n);
    const auto b = assemble_rhs(x, omega, l);
    auto y = solve_direct(op, b, rho).y_head;
    const auto tail = tail_extension(b, rho, n, l);
    y.insert(y.end(), tail.begin(), tail.end());
    REQUIRE(y.size() == static_cast<std::size_t>(l));
    for (int t = 1; t <= l; ++t) {
        double ay = 0.0;
        if (t <= n) {
            for (int m = 1; m <= n; ++m) {
                ay += op(t, m) * y[static_cast<std::size_t>(m - 1)];
            }
        }
        const double r = (1 + rho) * y[static_cast<std::size_t>(t - 1)] - ay - b.at(t);
        CHECK(std::abs(r) <= 1e-12);
    }
}

TEST_CASE("condition estimate bounds")
{
    gen::Source rng(19);
    for (int trial = 0; trial < 30; ++trial) {
        const auto op = build_operator(rng.omega(), rng.integer(1, 80));
        const double rho = rng.uniform(0.01, 2.0);
        const double c = condition_estimate(op, rho);
        CHECK(c >= 1.0);
        CHECK(c <= (1 + rho) / rho);
        CHECK(condition_estimate(op, 0.4) <= 3.5);
    }
}

TEST_CASE("condition estimate against extended-precision eigenvalues")
{
    for (int n : {4, 8, 16}) {
        for (double rho : {0.0, 0.1, 0.4}) {
            const double ref = oracle_condition(1, 2, n, rho);
            const double est = condition_estimate(build_operator(pi / 2, n), rho);
            CAPTURE(n);
            CAPTURE(rho);
            // Absolute eigenvalue error in double is about n * eps * lambda_max,
            // so the attainable relative accuracy degrades like cond * n * eps.
            const double tol = std::max(1e-10, 10.0 * n * ref * std::numeric_limits<double>::epsilon());
            CHECK(est == doctest::Approx(ref).epsilon(tol));
        }
    }
}

TEST_CASE("unregularized condition grows with N")
{
    double previous = 0.0;
    for (int n : {8, 16, 32, 64}) {
        const double c = condition_estimate(build_operator(pi / 2, n), 0.0);
        CAPTURE(n);
        CHECK(c >= previous);
        previous = c;
    }
    CHECK(std::isinf(previous));
}

TEST_CASE("ShiftedSystem reuse")
{
    const auto op = build_operator(pi / 3, 10);
    const ShiftedSystem sys(op, 0.4);
    CHECK(sys.size() == 10);
    CHECK(sys.rho() == 0.4);
    CHECK(sys.uses_cholesky());
    CHECK_THROWS_AS(sys.solve(std::vector<double>(3, 1.0)), LengthMismatch);
    CHECK_THROWS_AS(ShiftedSystem(op, -1.0), InvalidParams);
}

TEST_CASE("residual contract, norm estimate and perturbation bound on random systems")
{
    gen::Source rng(23);
    for (int trial = 0; trial < 200; ++trial) {
        const double omega = rng.omega();
        const int n = rng.integer(1, 128);
        const double rho = trial % 5 == 0 ? 0.0 : rng.uniform(0.01, 3.0);
        const auto op = build_operator(omega, n);
        const PastSignal x(rng.normals(static_cast<std::size_t>(n) + 1));
        const auto b = assemble_rhs(x, omega, n);
        SolveReport r;
        try {
            r = solve_direct(op, b, rho);
        } catch (const NearSingular&) {
            CHECK(rho == 0.0);
            continue;
        }
        CAPTURE(n);
        CAPTURE(rho);
        const double bn = gen::norm2(b.entries);
        CHECK(r.residual_norm <= 1e-8 * std::max(1.0, bn));
        CHECK(residual_norm(op, r.y_head, b.head(n), rho) == doctest::Approx(r.residual_norm).epsilon(1e-6).scale(1e-12));
        if (rho > 0.0) {
            const std::vector<double> xs(x.values().begin(), x.values().end());
            CHECK(gen::norm2(r.y_head) <= (1 + rho) / rho * gen::norm2(xs));

            auto eta = rng.normals(xs.size());
            const double scale = rng.uniform(1e-6, 2.0);
            std::vector<double> xp(xs.size());
            for (std::size_t k = 0; k < xs.size(); ++k) {
                eta[k] *= scale;
                xp[k] = xs[k] + eta[k];
            }
            const auto rp = solve_direct(op, assemble_rhs(PastSignal(xp), omega, n), rho);
            std::vector<double> dy(r.y_head.size());
            for (std::size_t i = 0; i < dy.size(); ++i) {
                dy[i] = rp.y_head[i] - r.y_head[i];
            }
            CHECK(gen::norm2(dy) <= (1 + rho) / rho * gen::norm2(eta));
        }
    }
}

TEST_CASE("direct and Neumann converge to the same vector")
{
    gen::Source rng(29);
    for (int trial = 0; trial < 40; ++trial) {
        const double rho = rng.uniform(0.2, 2.0);
        const int n = rng.integer(1, 64);
        const auto op = build_operator(rng.omega(), n);
        const auto b = random_rhs(rng, n);
        const int depth = static_cast<int>(std::ceil(100 * (1 + 1 / rho)));
        const auto d = solve_direct(op, b, rho);
        const auto nm = solve_neumann(op, b, rho, depth);
        CHECK(gen::max_abs_diff(d.y_head, nm.y_head) <= 1e-8);
    }
}
