#pragma once

#include "bandext/kernel.hpp"

#include <memory>
#include <span>
#include <string>
#include <vector>

namespace bandext {

/// How a truncated system was solved: a dense factorization or a Neumann partial sum.
struct SolveMethod {
    enum class Kind { direct, neumann };

    Kind kind = Kind::direct;
    int depth = 0;  ///< number of Neumann correction terms; unused for direct

    static SolveMethod direct() { return {Kind::direct, 0}; }
    static SolveMethod neumann(int depth) { return {Kind::neumann, depth}; }

    std::string name() const;
    bool operator==(const SolveMethod&) const = default;
};

struct SolveReport {
    std::vector<double> y_head;       ///< y(t), t = 1..N
    double residual_norm = 0.0;       ///< ||(1+rho) y - A y - b||_2 over t = 1..N
    double condition_estimate = 0.0;  ///< cond_2((1+rho) I - A); Neumann reports the bound (1+rho)/rho
    SolveMethod method;
    double last_correction_norm = 0.0;  ///< Neumann only: norm of the final term added
    bool lu_fallback = false;           ///< direct only: Cholesky was rejected
};

/// Factorization of M = (1+rho) I - A for repeated solves.
///
/// Cholesky is attempted first. If it breaks down (which happens at rho = 0
/// once the operator has eigenvalues within rounding of 1) LU with partial
/// pivoting is used instead.
class ShiftedSystem {
public:
    ShiftedSystem(const TruncatedOperator& op, double rho);
    ~ShiftedSystem();
    ShiftedSystem(ShiftedSystem&&) noexcept;
    ShiftedSystem& operator=(ShiftedSystem&&) noexcept;

    int size() const noexcept;
    double rho() const noexcept;
    bool uses_cholesky() const noexcept;

    std::vector<double> solve(std::span<const double> rhs) const;

    /// cond_2(M) from the extreme eigenvalues of the dense matrix. Returns
    /// +infinity when the smallest eigenvalue is below what double precision
    /// can resolve.
    double condition_estimate() const;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

struct DirectSolveOptions {
    /// NearSingular is raised above this condition estimate when rho == 0.
    double near_singular_threshold = 1e12;
};

SolveReport solve_direct(const TruncatedOperator& op, const RhsVector& b, double rho,
                         const DirectSolveOptions& options = {});

/// Partial sum sum_{k=0}^{depth} A_rho^k a_rho with A_rho = A/(1+rho), a_rho = b/(1+rho).
SolveReport solve_neumann(const TruncatedOperator& op, const RhsVector& b, double rho, int depth);

/// y(t) = b(t)/(1+rho) for t = n+1..l: the truncated operator annihilates
/// coordinates beyond n, so the extended equation reduces to this there.
std::vector<double> tail_extension(const RhsVector& b, double rho, int n, int l);

double condition_estimate(const TruncatedOperator& op, double rho);

/// ||(1+rho) y - A y - b_head||_2.
double residual_norm(const TruncatedOperator& op, std::span<const double> y, std::span<const double> b_head,
                     double rho);

} // namespace bandext
