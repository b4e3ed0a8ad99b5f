// quantum.hpp — physics applications of the weighted commutator bounds:
// state-dependent variance uncertainty relations, and relaxation-rate
// analysis of GKLS quantum dynamical semigroups.
#pragma once

#include "omegabw/linalg.hpp"

#include <vector>

namespace omegabw {

// Hermitian positive-semidefinite unit-trace state with cached ascending
// spectrum. Faithful iff the smallest eigenvalue exceeds 1e-12.
class DensityMatrix {
 public:
    static DensityMatrix from_matrix(const CMatrix& m);
    static DensityMatrix maximally_mixed(Eigen::Index n);

    Eigen::Index dim() const { return matrix_.rows(); }
    const CMatrix& matrix() const { return matrix_; }
    const RVector& eigenvalues() const { return eigenvalues_; }  // ascending
    double lambda_min() const { return eigenvalues_(0); }
    double lambda_second_min() const;
    double lambda_max() const { return eigenvalues_(dim() - 1); }
    bool faithful() const { return eigenvalues_(0) > 1e-12; }

 private:
    DensityMatrix(CMatrix m, RVector evals);
    CMatrix matrix_;
    RVector eigenvalues_;
};

// p I/2 + (1-p)|0><0| for p in (0,1]; eigenvalues {p/2, 1 - p/2}, always faithful
DensityMatrix qubit_mixture(double p);

// tr(ρ A) for a Hermitian observable
double expectation(const CMatrix& A, const DensityMatrix& rho);

// tr(ρ A²) − (tr ρ A)²; also evaluated as the ρ-weighted norm of the centered
// observable, and the two routes are required to agree to 1e-12.
double variance(const CMatrix& A, const DensityMatrix& rho);

// (1/4)|tr(ρ [A,B])|²
double robertson_bound(const CMatrix& A, const CMatrix& B, const DensityMatrix& rho);

// (λm λsm / (λm + λsm)) ||[A,B]||²_ρ for faithful ρ. Conjectured lower bound
// on the variance product; violations are reported by callers, never thrown.
double new_uncertainty_bound(const CMatrix& A, const CMatrix& B, const DensityMatrix& rho);

// (λm² / (2 λM)) ||[A,B]||²_ρ — proven, always <= the conjectured bound
double loose_uncertainty_bound(const CMatrix& A, const CMatrix& B, const DensityMatrix& rho);

// (1/(2n²)) ||[A,B]||² — the maximally-mixed-state bound (proven)
double maxmixed_bound(const CMatrix& A, const CMatrix& B, Eigen::Index n);

// ---------------------------------------------------------------------------
// GKLS dynamical semigroups
// ---------------------------------------------------------------------------

struct Jump {
    CMatrix op;     // unit Frobenius norm
    double rate;    // γ >= 0
};

// dρ/dt = −i[H,ρ] + (1/2) Σ_k γ_k (2 L_k ρ L_k* − L_k*L_k ρ − ρ L_k*L_k)
struct GKLSModel {
    Eigen::Index dim = 0;
    CMatrix hamiltonian;
    std::vector<Jump> jumps;

    // validates: H Hermitian (1e-12 rel), each ||L_k|| = 1 within 1e-10, γ_k >= 0
    static GKLSModel make(CMatrix hamiltonian, std::vector<Jump> jumps);
};

// generator applied to a state; trace-annihilating and Hermiticity-preserving
CMatrix gkls_apply(const GKLSModel& m, const CMatrix& rho);

// dual generator applied to an observable: i[H,X] + (1/2)Σγ_k(2L_k*XL_k − L_k*L_kX − XL_k*L_k)
CMatrix gkls_dual_apply(const GKLSModel& m, const CMatrix& X);

// column-stacked superoperator matrices of the primal and dual generators,
// related by the trace pairing tr(X L(Y)) = tr(L‡(X) Y)
CMatrix gkls_superop(const GKLSModel& m);
CMatrix gkls_dual_superop(const GKLSModel& m);

struct RateSpectrum {
    CVector eigenvalues;                  // all n² dual eigenvalues ℓ_α
    std::vector<CMatrix> eigenmatrices;   // Y_α, unit Frobenius norm
    Eigen::Index identity_index = 0;      // the trivial L‡(I) = 0 mode
    std::vector<double> rates;            // Γ_α = −Re(ℓ_α), identity mode excluded
    Weight stationary;                    // faithful stationary state ω
};

// Spectral decomposition of the dual generator, with the stationary state
// recovered from the nullspace of the primal superoperator. Errors on
// defective spectra (eigenvector condition > 1e8), on non-faithful stationary
// states, and on stationary degeneracy that does not include the maximally
// mixed state.
RateSpectrum rate_spectrum(const GKLSModel& m);

// max_α |Γ_α − (1/(2||Y_α||²_ω)) Σ_k γ_k ||[L_k, Y_α]||²_ω| over non-identity modes
double rate_formula_residual(const GKLSModel& m, const RateSpectrum& s);

struct SumRule {
    double lhs = 0.0;  // Σ_k γ_k
    double rhs = 0.0;  // (1/n) Σ_β Γ_β
};

SumRule sum_rule_check(const GKLSModel& m, const RateSpectrum& s);

struct RateConstraint {
    double max_rate = 0.0;
    double bound = 0.0;    // (1/(2n))(1 + λM/λm) Σ_β Γ_β, conjectured
    bool satisfied = true;
};

RateConstraint rate_constraint_check(const GKLSModel& m, const RateSpectrum& s);

}  // namespace omegabw
