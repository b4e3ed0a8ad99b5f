// linalg.hpp — dense complex matrix primitives: the ω-inner product and
// ω-weighted Frobenius norm, commutators, centering maps, and the Hermitian
// eigendecomposition contract everything else builds on.
#pragma once

#include <Eigen/Dense>

#include <complex>
#include <vector>

namespace omegabw {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;

// true iff every entry is finite (no NaN/Inf)
bool all_finite(const CMatrix& A);

// sqrt(tr(A* A))
double frobenius_norm(const CMatrix& A);

// [A, B] = AB - BA
CMatrix commutator(const CMatrix& A, const CMatrix& B);

// A - (tr A / n) I, the orthogonal projection onto traceless matrices
CMatrix center_trace(const CMatrix& A);

struct HermitianEig {
    RVector eigenvalues;   // ascending
    CMatrix eigenvectors;  // orthonormal columns, col(i) paired with eigenvalues(i)
};

// Eigendecomposition of a Hermitian matrix. The input is symmetrized as
// (M + M*)/2 before decomposition; inputs farther than 1e-10 (relative)
// from Hermitian are rejected.
HermitianEig eig_hermitian(const CMatrix& M);

// Positive-definite Hermitian weight with a cached ascending eigensystem and
// spectral square root. Weights are never normalized on construction; any
// rescaling is an explicit caller choice.
class Weight {
 public:
    static Weight from_matrix(const CMatrix& m);
    static Weight diagonal(const std::vector<double>& entries);
    static Weight identity(Eigen::Index n);

    Eigen::Index dim() const { return matrix_.rows(); }
    const CMatrix& matrix() const { return matrix_; }
    const RVector& eigenvalues() const { return eigenvalues_; }    // ascending
    const CMatrix& eigenvectors() const { return eigenvectors_; }  // columns
    CVector eigenvector(Eigen::Index i) const { return eigenvectors_.col(i); }
    double trace() const { return trace_; }

    double lambda_min() const { return eigenvalues_(0); }
    double lambda_second_min() const;  // requires dim >= 2
    double lambda_max() const { return eigenvalues_(dim() - 1); }
    double condition() const { return lambda_max() / lambda_min(); }

    // spectral square root, from the cached eigensystem
    const CMatrix& sqrt_matrix() const { return sqrt_; }

    Weight scaled(double p) const;  // p * omega, p > 0; eigenvectors unchanged
    Weight unit_trace() const { return scaled(1.0 / trace_); }

 private:
    Weight(CMatrix m, RVector evals, CMatrix evecs);

    CMatrix matrix_;
    RVector eigenvalues_;
    CMatrix eigenvectors_;
    CMatrix sqrt_;
    double trace_ = 0.0;
};

// tr(A* B ω); conjugate-symmetric in (A, B)
Complex omega_inner(const CMatrix& A, const CMatrix& B, const Weight& w);

// sqrt(tr(A* A ω)); zero only for the zero matrix
double omega_norm(const CMatrix& A, const Weight& w);

// A - (tr(Aω)/tr ω) I, the ω-orthogonal projection away from the identity
CMatrix center_omega(const CMatrix& A, const Weight& w);

}  // namespace omegabw
