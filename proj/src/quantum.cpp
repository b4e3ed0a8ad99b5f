#include "omegabw/quantum.hpp"

#include "omegabw/optimizer.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

namespace omegabw {

namespace {

void check_hermitian(const CMatrix& A, double tol, const char* who) {
    if (A.rows() != A.cols() || A.rows() < 1)
        throw std::invalid_argument(std::string(who) + ": matrix must be square");
    if ((A - A.adjoint()).norm() > tol * std::max(1.0, A.norm()))
        throw std::invalid_argument(std::string(who) + ": matrix is not Hermitian");
}

// tr(X* X ρ) without requiring ρ to be positive definite
double state_norm_sq(const CMatrix& X, const CMatrix& rho) {
    return (X.adjoint() * X * rho).trace().real();
}

void require_faithful(const DensityMatrix& rho, const char* who) {
    if (!rho.faithful())
        throw std::invalid_argument(std::string(who) + ": state must be faithful");
}

}  // namespace

DensityMatrix::DensityMatrix(CMatrix m, RVector evals)
    : matrix_(std::move(m)), eigenvalues_(std::move(evals)) {}

DensityMatrix DensityMatrix::from_matrix(const CMatrix& m) {
    check_hermitian(m, 1e-12, "DensityMatrix");
    HermitianEig eig = eig_hermitian(m);
    if (eig.eigenvalues(0) < -1e-12)
        throw std::invalid_argument("DensityMatrix: matrix has a negative eigenvalue");
    if (std::abs(eig.eigenvalues.sum() - 1.0) > 1e-12)
        throw std::invalid_argument("DensityMatrix: trace must be 1");
    return DensityMatrix(0.5 * (m + m.adjoint()), std::move(eig.eigenvalues));
}

DensityMatrix DensityMatrix::maximally_mixed(Eigen::Index n) {
    if (n < 1) throw std::invalid_argument("DensityMatrix: dimension must be positive");
    return DensityMatrix(CMatrix::Identity(n, n) / static_cast<double>(n),
                         RVector::Constant(n, 1.0 / static_cast<double>(n)));
}

double DensityMatrix::lambda_second_min() const {
    if (dim() < 2)
        throw std::invalid_argument("DensityMatrix: second smallest eigenvalue needs dim >= 2");
    return eigenvalues_(1);
}

DensityMatrix qubit_mixture(double p) {
    if (!(p > 0.0) || !(p <= 1.0))
        throw std::invalid_argument("qubit_mixture: p must lie in (0, 1]");
    CMatrix rho = CMatrix::Zero(2, 2);
    rho(0, 0) = 1.0 - 0.5 * p;
    rho(1, 1) = 0.5 * p;
    return DensityMatrix::from_matrix(rho);
}

double expectation(const CMatrix& A, const DensityMatrix& rho) {
    check_hermitian(A, 1e-12, "expectation");
    if (A.rows() != rho.dim())
        throw std::invalid_argument("expectation: dimension mismatch with state");
    const Complex value = (rho.matrix() * A).trace();
    if (std::abs(value.imag()) > 1e-12 * std::max(1.0, std::abs(value.real())))
        throw std::runtime_error("expectation: trace has a non-negligible imaginary part");
    return value.real();
}

double variance(const CMatrix& A, const DensityMatrix& rho) {
    check_hermitian(A, 1e-12, "variance");
    if (A.rows() != rho.dim())
        throw std::invalid_argument("variance: dimension mismatch with state");
    const double mean = expectation(A, rho);
    const double moment = (rho.matrix() * A * A).trace().real();
    const double direct = moment - mean * mean;

    const CMatrix centered = A - mean * CMatrix::Identity(A.rows(), A.cols());
    const double via_norm = state_norm_sq(centered, rho.matrix());
    if (std::abs(direct - via_norm) > 1e-12 * std::max(1.0, std::abs(moment)))
        throw std::runtime_error("variance: evaluation routes disagree beyond tolerance");
    return std::max(0.0, via_norm);
}

double robertson_bound(const CMatrix& A, const CMatrix& B, const DensityMatrix& rho) {
    check_hermitian(A, 1e-12, "robertson_bound");
    check_hermitian(B, 1e-12, "robertson_bound");
    const Complex t = (rho.matrix() * commutator(A, B)).trace();
    return 0.25 * std::norm(t);
}

double new_uncertainty_bound(const CMatrix& A, const CMatrix& B, const DensityMatrix& rho) {
    check_hermitian(A, 1e-12, "new_uncertainty_bound");
    check_hermitian(B, 1e-12, "new_uncertainty_bound");
    require_faithful(rho, "new_uncertainty_bound");
    const double lm = rho.lambda_min();
    const double lsm = rho.lambda_second_min();
    const double comm_sq = state_norm_sq(commutator(A, B), rho.matrix());
    return lm * lsm / (lm + lsm) * comm_sq;
}

double loose_uncertainty_bound(const CMatrix& A, const CMatrix& B, const DensityMatrix& rho) {
    check_hermitian(A, 1e-12, "loose_uncertainty_bound");
    check_hermitian(B, 1e-12, "loose_uncertainty_bound");
    require_faithful(rho, "loose_uncertainty_bound");
    const double lm = rho.lambda_min();
    const double lM = rho.lambda_max();
    const double comm_sq = state_norm_sq(commutator(A, B), rho.matrix());
    return lm * lm / (2.0 * lM) * comm_sq;
}

double maxmixed_bound(const CMatrix& A, const CMatrix& B, Eigen::Index n) {
    check_hermitian(A, 1e-12, "maxmixed_bound");
    check_hermitian(B, 1e-12, "maxmixed_bound");
    if (A.rows() != n) throw std::invalid_argument("maxmixed_bound: dimension mismatch");
    const double c = frobenius_norm(commutator(A, B));
    return c * c / (2.0 * static_cast<double>(n * n));
}

// ---------------------------------------------------------------------------
// GKLS
// ---------------------------------------------------------------------------

GKLSModel GKLSModel::make(CMatrix hamiltonian, std::vector<Jump> jumps) {
    check_hermitian(hamiltonian, 1e-12, "GKLSModel");
    const Eigen::Index n = hamiltonian.rows();
    for (const Jump& j : jumps) {
        if (j.op.rows() != n || j.op.cols() != n)
            throw std::invalid_argument("GKLSModel: jump operator dimension mismatch");
        if (std::abs(j.op.norm() - 1.0) > 1e-10)
            throw std::invalid_argument("GKLSModel: jump operators must have unit Frobenius norm");
        if (!(j.rate >= 0.0))
            throw std::invalid_argument("GKLSModel: rates must be nonnegative");
    }
    GKLSModel m;
    m.dim = n;
    m.hamiltonian = std::move(hamiltonian);
    m.jumps = std::move(jumps);
    return m;
}

CMatrix gkls_apply(const GKLSModel& m, const CMatrix& rho) {
    if (rho.rows() != m.dim || rho.cols() != m.dim)
        throw std::invalid_argument("gkls_apply: dimension mismatch");
    const Complex i_unit(0.0, 1.0);
    CMatrix out = -i_unit * commutator(m.hamiltonian, rho);
    for (const Jump& j : m.jumps) {
        const CMatrix ll = j.op.adjoint() * j.op;
        out += 0.5 * j.rate * (2.0 * j.op * rho * j.op.adjoint() - ll * rho - rho * ll);
    }
    return out;
}

CMatrix gkls_dual_apply(const GKLSModel& m, const CMatrix& X) {
    if (X.rows() != m.dim || X.cols() != m.dim)
        throw std::invalid_argument("gkls_dual_apply: dimension mismatch");
    const Complex i_unit(0.0, 1.0);
    CMatrix out = i_unit * commutator(m.hamiltonian, X);
    for (const Jump& j : m.jumps) {
        const CMatrix ll = j.op.adjoint() * j.op;
        out += 0.5 * j.rate * (2.0 * j.op.adjoint() * X * j.op - ll * X - X * ll);
    }
    return out;
}

namespace {

// column-stacked matrix of X -> P X Q
CMatrix sandwich_superop(const CMatrix& P, const CMatrix& Q) {
    const Eigen::Index n = P.rows();
    CMatrix S = CMatrix::Zero(n * n, n * n);
    // (Q^T ⊗ P) vec(X) = vec(P X Q)
    for (Eigen::Index c = 0; c < n; ++c)
        for (Eigen::Index d = 0; d < n; ++d)
            S.block(d * n, c * n, n, n) = Q(c, d) * P;
    return S;
}

CMatrix superop_from(const GKLSModel& m, bool dual) {
    const Eigen::Index n = m.dim;
    const CMatrix id = CMatrix::Identity(n, n);
    const Complex i_unit(0.0, 1.0);
    const double h_sign = dual ? 1.0 : -1.0;
    CMatrix S = h_sign * i_unit *
                (sandwich_superop(m.hamiltonian, id) - sandwich_superop(id, m.hamiltonian));
    for (const Jump& j : m.jumps) {
        const CMatrix ll = j.op.adjoint() * j.op;
        const CMatrix hop = dual ? sandwich_superop(j.op.adjoint(), j.op)
                                 : sandwich_superop(j.op, j.op.adjoint());
        S += 0.5 * j.rate *
             (2.0 * hop - sandwich_superop(ll, id) - sandwich_superop(id, ll));
    }
    return S;
}

}  // namespace

CMatrix gkls_superop(const GKLSModel& m) { return superop_from(m, false); }

CMatrix gkls_dual_superop(const GKLSModel& m) { return superop_from(m, true); }

namespace {

// Stationary state: the nullspace of the primal superoperator when it is
// one-dimensional; with a degenerate stationary set, the maximally mixed
// state is used when it is itself stationary (unital case), else an error.
CMatrix stationary_state(const GKLSModel& m, const CMatrix& primal) {
    const Eigen::Index n = m.dim;
    Eigen::JacobiSVD<CMatrix> svd(primal, Eigen::ComputeFullV);
    const RVector sv = svd.singularValues();
    const double cutoff = 1e-10 * std::max(sv(0), 1e-300);
    int null_dim = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i)
        if (sv(i) <= cutoff) ++null_dim;
    if (null_dim == 0)
        throw std::runtime_error("rate_spectrum: no stationary state within threshold");
    if (null_dim > 1) {
        const CMatrix mixed = CMatrix::Identity(n, n) / static_cast<double>(n);
        if (gkls_apply(m, mixed).norm() <= 1e-10)
            return mixed;
        throw std::runtime_error(
            "rate_spectrum: stationary state is not unique and the model is not unital");
    }
    const CVector v = svd.matrixV().col(svd.matrixV().cols() - 1);
    CMatrix rho = devectorize(v, n);
    const Complex t = rho.trace();
    if (std::abs(t) < 1e-12)
        throw std::runtime_error("rate_spectrum: stationary nullvector is traceless");
    rho /= t;
    return 0.5 * (rho + rho.adjoint());
}

}  // namespace

RateSpectrum rate_spectrum(const GKLSModel& m) {
    const Eigen::Index n = m.dim;
    const CMatrix dual = gkls_dual_superop(m);

    Eigen::ComplexEigenSolver<CMatrix> es(dual);
    if (es.info() != Eigen::Success)
        throw std::runtime_error("rate_spectrum: eigensolver did not converge");
    const CMatrix& vecs = es.eigenvectors();

    {
        Eigen::JacobiSVD<CMatrix> svd(vecs);
        const RVector sv = svd.singularValues();
        if (sv(sv.size() - 1) <= 0.0 || sv(0) / sv(sv.size() - 1) > 1e8)
            throw std::runtime_error(
                "rate_spectrum: defective dual superoperator (eigenvector condition > 1e8)");
    }

    CVector eigenvalues = es.eigenvalues();
    std::vector<CMatrix> eigenmatrices;
    eigenmatrices.reserve(static_cast<std::size_t>(n * n));
    Eigen::Index identity_index = 0;
    double best_overlap = -1.0;
    for (Eigen::Index a = 0; a < n * n; ++a) {
        CMatrix Y = devectorize(vecs.col(a), n);
        Y /= Y.norm();
        const double resid = (gkls_dual_apply(m, Y) - eigenvalues(a) * Y).norm();
        if (resid > 1e-8 * std::max(1.0, std::abs(eigenvalues(a))))
            throw std::runtime_error("rate_spectrum: eigenpair residual exceeds 1e-8");
        const double overlap = std::abs(Y.trace()) / std::sqrt(static_cast<double>(n));
        if (overlap > best_overlap) {
            best_overlap = overlap;
            identity_index = a;
        }
        eigenmatrices.push_back(std::move(Y));
    }
    if (std::abs(eigenvalues(identity_index)) > 1e-8)
        throw std::runtime_error("rate_spectrum: identity mode has a nonzero eigenvalue");

    std::vector<double> rates;
    rates.reserve(static_cast<std::size_t>(n * n - 1));
    for (Eigen::Index a = 0; a < n * n; ++a) {
        if (a == identity_index) continue;
        // the right-hand side of the rate formula is nonnegative while dual
        // eigenvalues have nonpositive real parts, hence the sign flip
        rates.push_back(-eigenvalues(a).real());
    }

    const CMatrix omega = stationary_state(m, gkls_superop(m));
    HermitianEig eig = eig_hermitian(omega);
    if (eig.eigenvalues(0) <= 1e-12)
        throw std::runtime_error("rate_spectrum: stationary state is not faithful");

    return RateSpectrum{std::move(eigenvalues), std::move(eigenmatrices), identity_index,
                        std::move(rates), Weight::from_matrix(omega)};
}

double rate_formula_residual(const GKLSModel& m, const RateSpectrum& s) {
    const Eigen::Index n = m.dim;
    double worst = 0.0;
    std::size_t rate_pos = 0;
    for (Eigen::Index a = 0; a < n * n; ++a) {
        if (a == s.identity_index) continue;
        const CMatrix& Y = s.eigenmatrices[static_cast<std::size_t>(a)];
        double dissipation = 0.0;
        for (const Jump& j : m.jumps) {
            const double c = omega_norm(commutator(j.op, Y), s.stationary);
            dissipation += j.rate * c * c;
        }
        const double ny = omega_norm(Y, s.stationary);
        const double predicted = dissipation / (2.0 * ny * ny);
        worst = std::max(worst, std::abs(s.rates[rate_pos] - predicted));
        ++rate_pos;
    }
    return worst;
}

SumRule sum_rule_check(const GKLSModel& m, const RateSpectrum& s) {
    SumRule r;
    for (const Jump& j : m.jumps) r.lhs += j.rate;
    double total = 0.0;
    for (const double g : s.rates) total += g;
    r.rhs = total / static_cast<double>(m.dim);
    return r;
}

RateConstraint rate_constraint_check(const GKLSModel& m, const RateSpectrum& s) {
    RateConstraint c;
    double total = 0.0;
    for (const double g : s.rates) {
        total += g;
        c.max_rate = std::max(c.max_rate, g);
    }
    const double lm = s.stationary.lambda_min();
    const double lM = s.stationary.lambda_max();
    c.bound = (1.0 + lM / lm) * total / (2.0 * static_cast<double>(m.dim));
    c.satisfied = c.max_rate <= c.bound + 1e-10;
    return c;
}

}  // namespace omegabw
