#include "bandext/solver.hpp"

#include "bandext/errors.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <Eigen/LU>

#include <cmath>
#include <limits>
#include <optional>

namespace bandext {

std::string SolveMethod::name() const
{
    if (kind == Kind::direct) {
        return "direct";
    }
    return "neumann(" + std::to_string(depth) + ")";
}

namespace {

Eigen::MatrixXd shifted_matrix(const TruncatedOperator& op, double rho)
{
    const int n = op.size();
    Eigen::MatrixXd m(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            m(i, j) = -op(i + 1, j + 1);
        }
        m(i, i) += 1.0 + rho;
    }
    return m;
}

} // namespace

struct ShiftedSystem::Impl {
    Eigen::MatrixXd matrix;
    double rho = 0.0;
    std::optional<Eigen::LLT<Eigen::MatrixXd>> llt;
    std::optional<Eigen::PartialPivLU<Eigen::MatrixXd>> lu;

    Eigen::VectorXd solve(const Eigen::VectorXd& rhs) const
    {
        if (llt) {
            return llt->solve(rhs);
        }
        return lu->solve(rhs);
    }
};

ShiftedSystem::ShiftedSystem(const TruncatedOperator& op, double rho) : impl_(std::make_unique<Impl>())
{
    if (!(rho >= 0.0) || !std::isfinite(rho)) {
        throw InvalidParams("rho must be a finite nonnegative number");
    }
    impl_->rho = rho;
    impl_->matrix = shifted_matrix(op, rho);
    Eigen::LLT<Eigen::MatrixXd> llt(impl_->matrix);
    if (llt.info() == Eigen::Success) {
        impl_->llt.emplace(std::move(llt));
    } else {
        impl_->lu.emplace(impl_->matrix);
    }
}

ShiftedSystem::~ShiftedSystem() = default;
ShiftedSystem::ShiftedSystem(ShiftedSystem&&) noexcept = default;
ShiftedSystem& ShiftedSystem::operator=(ShiftedSystem&&) noexcept = default;

int ShiftedSystem::size() const noexcept { return static_cast<int>(impl_->matrix.rows()); }
double ShiftedSystem::rho() const noexcept { return impl_->rho; }
bool ShiftedSystem::uses_cholesky() const noexcept { return impl_->llt.has_value(); }

std::vector<double> ShiftedSystem::solve(std::span<const double> rhs) const
{
    if (static_cast<int>(rhs.size()) != size()) {
        throw LengthMismatch("shifted system solve: right-hand side length does not match dimension");
    }
    const Eigen::VectorXd b = Eigen::Map<const Eigen::VectorXd>(rhs.data(), size());
    const Eigen::VectorXd y = impl_->solve(b);
    return {y.data(), y.data() + y.size()};
}

double ShiftedSystem::condition_estimate() const
{
    const int n = size();
    // Eigenvalues of the symmetric matrix, ascending. Dense and exact to
    // rounding; iteration on the extremes converges too slowly when the
    // operator's eigenvalues cluster near 0 or 1.
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(impl_->matrix, Eigen::EigenvaluesOnly);
    if (eig.info() != Eigen::Success) {
        return std::numeric_limits<double>::infinity();
    }
    const double lambda_min = eig.eigenvalues()(0);
    const double lambda_max = eig.eigenvalues()(n - 1);
    const double resolution = n * std::numeric_limits<double>::epsilon() * std::abs(lambda_max);
    if (lambda_min <= resolution) {
        return std::numeric_limits<double>::infinity();
    }

    double cond = std::max(1.0, lambda_max / lambda_min);
    // The eigenvalues of A lie in (0,1), so those of M lie in (rho, 1+rho).
    if (impl_->rho > 0.0) {
        cond = std::min(cond, (1.0 + impl_->rho) / impl_->rho);
    }
    return cond;
}

double residual_norm(const TruncatedOperator& op, std::span<const double> y, std::span<const double> b_head,
                     double rho)
{
    const auto ay = op.apply(y);
    double acc = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) {
        const double r = (1.0 + rho) * y[i] - ay[i] - b_head[i];
        acc += r * r;
    }
    return std::sqrt(acc);
}

SolveReport solve_direct(const TruncatedOperator& op, const RhsVector& b, double rho,
                         const DirectSolveOptions& options)
{
    if (b.t_max() < op.size()) {
        throw LengthMismatch("right-hand side shorter than the operator dimension");
    }
    const ShiftedSystem system(op, rho);
    SolveReport report;
    report.method = SolveMethod::direct();
    report.lu_fallback = !system.uses_cholesky();
    report.condition_estimate = system.condition_estimate();
    if (rho == 0.0 && !(report.condition_estimate <= options.near_singular_threshold)) {
        throw NearSingular(report.condition_estimate, options.near_singular_threshold);
    }
    const auto head = b.head(op.size());
    report.y_head = system.solve(head);
    report.residual_norm = residual_norm(op, report.y_head, head, rho);
    return report;
}

SolveReport solve_neumann(const TruncatedOperator& op, const RhsVector& b, double rho, int depth)
{
    if (!(rho > 0.0) || !std::isfinite(rho)) {
        throw InvalidParams("Neumann iteration requires rho > 0 (the series need not converge at rho = 0)");
    }
    if (depth < 0) {
        throw InvalidParams("Neumann depth must be >= 0");
    }
    if (b.t_max() < op.size()) {
        throw LengthMismatch("right-hand side shorter than the operator dimension");
    }
    const auto n = static_cast<std::size_t>(op.size());
    const auto head = b.head(op.size());
    const double scale = 1.0 / (1.0 + rho);

    std::vector<double> term(n);
    for (std::size_t i = 0; i < n; ++i) {
        term[i] = scale * head[i];
    }
    std::vector<double> sum = term;
    std::vector<double> next(n);
    for (int k = 1; k <= depth; ++k) {
        op.apply(term, next);
        for (std::size_t i = 0; i < n; ++i) {
            term[i] = scale * next[i];
            sum[i] += term[i];
        }
    }
    double last = 0.0;
    for (double v : term) {
        last += v * v;
    }

    SolveReport report;
    report.method = SolveMethod::neumann(depth);
    report.last_correction_norm = std::sqrt(last);
    report.condition_estimate = (1.0 + rho) / rho;
    report.residual_norm = residual_norm(op, sum, head, rho);
    report.y_head = std::move(sum);
    return report;
}

std::vector<double> tail_extension(const RhsVector& b, double rho, int n, int l)
{
    if (l <= n) {
        throw InvalidParams("tail extension requires l > n");
    }
    if (b.t_max() < l) {
        throw LengthMismatch("right-hand side does not reach the requested horizon");
    }
    std::vector<double> tail;
    tail.reserve(static_cast<std::size_t>(l - n));
    for (int t = n + 1; t <= l; ++t) {
        tail.push_back(b.at(t) / (1.0 + rho));
    }
    return tail;
}

double condition_estimate(const TruncatedOperator& op, double rho)
{
    return ShiftedSystem(op, rho).condition_estimate();
}

} // namespace bandext
