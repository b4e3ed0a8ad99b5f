#include "omegabw/linalg.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

namespace omegabw {

namespace {

void check_square(const CMatrix& A, const char* who) {
    if (A.rows() < 1 || A.rows() != A.cols())
        throw std::invalid_argument(std::string(who) + ": matrix must be square and non-empty");
}

void check_same_dim(const CMatrix& A, const CMatrix& B, const char* who) {
    if (A.rows() != B.rows() || A.cols() != B.cols())
        throw std::invalid_argument(std::string(who) + ": dimension mismatch");
}

}  // namespace

bool all_finite(const CMatrix& A) { return A.allFinite(); }

double frobenius_norm(const CMatrix& A) { return A.norm(); }

CMatrix commutator(const CMatrix& A, const CMatrix& B) {
    check_square(A, "commutator");
    check_same_dim(A, B, "commutator");
    return A * B - B * A;
}

CMatrix center_trace(const CMatrix& A) {
    check_square(A, "center_trace");
    const Complex mean = A.trace() / static_cast<double>(A.rows());
    return A - mean * CMatrix::Identity(A.rows(), A.cols());
}

HermitianEig eig_hermitian(const CMatrix& M) {
    check_square(M, "eig_hermitian");
    if (!all_finite(M)) throw std::invalid_argument("eig_hermitian: non-finite entries");
    const double scale = std::max(1.0, M.norm());
    if ((M - M.adjoint()).norm() > 1e-10 * scale)
        throw std::invalid_argument("eig_hermitian: input is not Hermitian");
    const CMatrix sym = 0.5 * (M + M.adjoint());
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(sym);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("eig_hermitian: eigensolver did not converge");
    return {solver.eigenvalues(), solver.eigenvectors()};
}

Weight::Weight(CMatrix m, RVector evals, CMatrix evecs)
    : matrix_(std::move(m)), eigenvalues_(std::move(evals)), eigenvectors_(std::move(evecs)) {
    trace_ = eigenvalues_.sum();
    sqrt_ = eigenvectors_ * eigenvalues_.cwiseSqrt().asDiagonal() * eigenvectors_.adjoint();
}

Weight Weight::from_matrix(const CMatrix& m) {
    HermitianEig eig = eig_hermitian(m);
    if (eig.eigenvalues(0) <= 0.0)
        throw std::invalid_argument("Weight: matrix is not positive definite");
    return Weight(0.5 * (m + m.adjoint()), std::move(eig.eigenvalues), std::move(eig.eigenvectors));
}

Weight Weight::diagonal(const std::vector<double>& entries) {
    if (entries.empty()) throw std::invalid_argument("Weight: empty diagonal");
    const auto n = static_cast<Eigen::Index>(entries.size());
    CMatrix m = CMatrix::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) m(i, i) = entries[static_cast<std::size_t>(i)];
    return from_matrix(m);
}

Weight Weight::identity(Eigen::Index n) {
    if (n < 1) throw std::invalid_argument("Weight: dimension must be positive");
    return Weight(CMatrix::Identity(n, n), RVector::Ones(n), CMatrix::Identity(n, n));
}

double Weight::lambda_second_min() const {
    if (dim() < 2) throw std::invalid_argument("Weight: second smallest eigenvalue needs dim >= 2");
    return eigenvalues_(1);
}

Weight Weight::scaled(double p) const {
    if (!(p > 0.0) || !std::isfinite(p))
        throw std::invalid_argument("Weight: scale factor must be positive");
    return Weight(p * matrix_, p * eigenvalues_, eigenvectors_);
}

Complex omega_inner(const CMatrix& A, const CMatrix& B, const Weight& w) {
    check_same_dim(A, B, "omega_inner");
    if (A.rows() != w.dim() || A.cols() != w.dim())
        throw std::invalid_argument("omega_inner: dimension mismatch with weight");
    return (A.adjoint() * B * w.matrix()).trace();
}

double omega_norm(const CMatrix& A, const Weight& w) {
    const double sq = omega_inner(A, A, w).real();
    return std::sqrt(std::max(0.0, sq));
}

CMatrix center_omega(const CMatrix& A, const Weight& w) {
    check_square(A, "center_omega");
    if (A.rows() != w.dim())
        throw std::invalid_argument("center_omega: dimension mismatch with weight");
    const Complex alpha = (A * w.matrix()).trace() / w.trace();
    return A - alpha * CMatrix::Identity(A.rows(), A.cols());
}

}  // namespace omegabw
