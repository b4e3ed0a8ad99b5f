#include "omegabw/optimizer.hpp"

#include "omegabw/ensembles.hpp"
#include "omegabw/threading.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/KroneckerProduct>

#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

namespace omegabw {

CVector vectorize(const CMatrix& A) {
    return Eigen::Map<const CVector>(A.data(), A.size());
}

CMatrix devectorize(const CVector& v, Eigen::Index n) {
    if (v.size() != n * n)
        throw std::invalid_argument("devectorize: vector length must be n^2");
    return Eigen::Map<const CMatrix>(v.data(), n, n);
}

CMatrix weight_gram(const Weight& w) {
    const Eigen::Index n = w.dim();
    return Eigen::kroneckerProduct(w.matrix().transpose(), CMatrix::Identity(n, n));
}

CMatrix identity_gram(Eigen::Index n) { return CMatrix::Identity(n * n, n * n); }

CMatrix commutator_superop(const CMatrix& B) {
    if (B.rows() != B.cols() || B.rows() < 1)
        throw std::invalid_argument("commutator_superop: matrix must be square");
    const Eigen::Index n = B.rows();
    const CMatrix id = CMatrix::Identity(n, n);
    return CMatrix(Eigen::kroneckerProduct(B.transpose(), id)) -
           CMatrix(Eigen::kroneckerProduct(id, B));
}

namespace {

double factor_norm(const CMatrix& X, const Weight& w, bool uses_omega) {
    return uses_omega ? omega_norm(X, w) : frobenius_norm(X);
}

// deterministic global phase: largest-magnitude entry made real nonnegative
void phase_fix(CMatrix& X) {
    Eigen::Index br = 0, bc = 0;
    double best = -1.0;
    for (Eigen::Index j = 0; j < X.cols(); ++j)
        for (Eigen::Index i = 0; i < X.rows(); ++i)
            if (std::abs(X(i, j)) > best) {
                best = std::abs(X(i, j));
                br = i;
                bc = j;
            }
    if (best > 0.0) X *= std::conj(X(br, bc)) / best;
}

struct SideSolver {
    bool uses_omega = false;
    std::optional<Eigen::LLT<CMatrix>> llt;  // absent for the identity Gram
};

// Per-(kind, weight) state reused across half-steps of one ascent.
struct Pencil {
    NormAssignment norms;
    Eigen::Index n = 0;
    const Weight* w = nullptr;
    CMatrix comm_gram_sqrt;  // S with S*S = commutator-norm Gram; empty for Frobenius
    SideSolver a_side, b_side;
};

SideSolver make_side(bool uses_omega, const Weight& w) {
    SideSolver s;
    s.uses_omega = uses_omega;
    if (uses_omega) {
        if (w.condition() > 1e12)
            throw std::runtime_error(
                "best_response: denominator Gram condition exceeds 1e12; normalize the weight");
        s.llt.emplace(weight_gram(w));
        if (s.llt->info() != Eigen::Success)
            throw std::runtime_error("best_response: Cholesky factorization failed");
    }
    return s;
}

Pencil make_pencil(BoundKind kind, const Weight& w) {
    Pencil p;
    p.norms = norm_assignment(kind);
    p.n = w.dim();
    p.w = &w;
    if (p.norms.commutator_omega) {
        const CMatrix id = CMatrix::Identity(p.n, p.n);
        p.comm_gram_sqrt = Eigen::kroneckerProduct(w.sqrt_matrix().transpose(), id);
    }
    p.a_side = make_side(p.norms.a_omega, w);
    p.b_side = make_side(p.norms.b_omega, w);
    return p;
}

BestResponse best_response_impl(const Pencil& p, const CMatrix& partner, Side side) {
    if (frobenius_norm(partner) == 0.0)
        throw std::invalid_argument("best_response: partner must be nonzero");

    const CMatrix C = commutator_superop(partner);
    const CMatrix S = p.norms.commutator_omega ? CMatrix(p.comm_gram_sqrt * C) : C;
    CMatrix K = S.adjoint() * S;

    const SideSolver& free_side = (side == Side::A) ? p.a_side : p.b_side;
    CMatrix M;
    if (free_side.llt) {
        // W = L L*: reduce x*Kx / x*Wx to the standard problem for L^-1 K L^-*
        const CMatrix half = free_side.llt->matrixL().solve(K);
        M = free_side.llt->matrixL().solve(half.adjoint());
    } else {
        M = std::move(K);
    }
    M = 0.5 * (M + M.adjoint());

    Eigen::SelfAdjointEigenSolver<CMatrix> es(M);
    if (es.info() != Eigen::Success)
        throw std::runtime_error("best_response: eigensolver did not converge");
    const Eigen::Index top = M.rows() - 1;
    const double mu = std::max(0.0, es.eigenvalues()(top));
    const CVector y = es.eigenvectors().col(top);
    const CVector x = free_side.llt ? CVector(free_side.llt->matrixU().solve(y)) : y;

    CMatrix arg = devectorize(x, p.n);
    arg /= factor_norm(arg, *p.w, free_side.uses_omega);
    phase_fix(arg);

    const bool partner_omega = (side == Side::A) ? p.norms.b_omega : p.norms.a_omega;
    const double partner_norm = factor_norm(partner, *p.w, partner_omega);
    return {std::sqrt(mu) / partner_norm, std::move(arg)};
}

RatioResult alternate_maximize_impl(const Pencil& p, BoundKind kind, const Weight& w,
                                    const CMatrix& seedA, const CMatrix& seedB, int max_iters,
                                    double tol) {
    if (max_iters < 1) throw std::invalid_argument("alternate_maximize: max_iters must be >= 1");
    if (!(tol > 0.0)) throw std::invalid_argument("alternate_maximize: tol must be positive");
    if (frobenius_norm(seedA) == 0.0 || frobenius_norm(seedB) == 0.0)
        throw std::invalid_argument("alternate_maximize: seeds must be nonzero");

    CMatrix A = seedA / factor_norm(seedA, w, p.norms.a_omega);
    CMatrix B = seedB / factor_norm(seedB, w, p.norms.b_omega);

    RatioResult res;
    res.kind = kind;
    res.trace.reserve(2 * static_cast<std::size_t>(std::min(max_iters, 64)));

    double prev = -1.0;
    for (int iter = 1; iter <= max_iters; ++iter) {
        BestResponse ra = best_response_impl(p, B, Side::A);
        A = std::move(ra.argmax);
        res.trace.push_back(ra.value);

        BestResponse rb = best_response_impl(p, A, Side::B);
        B = std::move(rb.argmax);
        res.trace.push_back(rb.value);

        res.iterations = iter;
        const double now = rb.value;
        if (prev >= 0.0 && std::abs(now - prev) <= tol * std::max(1.0, now)) {
            res.converged = true;
            break;
        }
        prev = now;
    }

    res.A = std::move(A);
    res.B = std::move(B);
    res.value = ratio(kind, w, res.A, res.B);
    return res;
}

// value and trace rescaling from the unit-trace weight back to the original:
// ||X||_{tω} = sqrt(t) ||X||_ω applied per norm slot of the kind
double ratio_scale(BoundKind kind, double t) {
    const NormAssignment na = norm_assignment(kind);
    double exponent = 0.0;
    if (na.commutator_omega) exponent += 0.5;
    if (na.a_omega) exponent -= 0.5;
    if (na.b_omega) exponent -= 0.5;
    return std::pow(t, exponent);
}

RatioResult run_restart(const Pencil& p, BoundKind kind, const Weight& w_unit,
                        std::uint64_t seed, int r, int max_iters, double tol) {
    SeededStream stream(seed, static_cast<std::uint64_t>(r));
    const CMatrix seedA = ginibre(w_unit.dim(), stream);
    const CMatrix seedB = ginibre(w_unit.dim(), stream);
    RatioResult res = alternate_maximize_impl(p, kind, w_unit, seedA, seedB, max_iters, tol);
    res.restart_index = r;
    return res;
}

RatioResult finalize_estimate(BoundKind kind, const Weight& w, RatioResult best) {
    // the restarts ran on w/tr(w); rescale the trace and re-evaluate on w
    const double scale = ratio_scale(kind, w.trace());
    for (double& v : best.trace) v *= scale;

    const NormAssignment na = norm_assignment(kind);
    best.A /= factor_norm(best.A, w, na.a_omega);
    best.B /= factor_norm(best.B, w, na.b_omega);
    best.value = ratio(kind, w, best.A, best.B);

    const TightConstant tc = tight_constant(kind, w);
    if (tc.status == BoundStatus::conjectured &&
        best.value > tc.value * (1.0 + 1e-8)) {
        best.counterexample_candidate = true;
    }
    return best;
}

void check_estimate_args(const Weight& w, int restarts) {
    if (restarts < 1) throw std::invalid_argument("global_estimate: restarts must be >= 1");
    (void)w;
}

}  // namespace

QuadraticFormPair quadratic_form_pair(BoundKind kind, const Weight& w, const CMatrix& partner,
                                      Side side) {
    if (partner.rows() != w.dim() || partner.cols() != w.dim())
        throw std::invalid_argument("quadratic_form_pair: dimension mismatch with weight");
    if (frobenius_norm(partner) == 0.0)
        throw std::invalid_argument("quadratic_form_pair: partner must be nonzero");
    const NormAssignment na = norm_assignment(kind);
    const CMatrix C = commutator_superop(partner);
    const CMatrix gx = na.commutator_omega ? weight_gram(w) : identity_gram(w.dim());
    const bool free_omega = (side == Side::A) ? na.a_omega : na.b_omega;
    QuadraticFormPair pair;
    pair.numerator = C.adjoint() * gx * C;
    pair.denominator = free_omega ? weight_gram(w) : identity_gram(w.dim());
    return pair;
}

BestResponse best_response(BoundKind kind, const Weight& w, const CMatrix& partner, Side side) {
    if (partner.rows() != w.dim() || partner.cols() != w.dim())
        throw std::invalid_argument("best_response: dimension mismatch with weight");
    const Pencil p = make_pencil(kind, w);
    return best_response_impl(p, partner, side);
}

RatioResult alternate_maximize(BoundKind kind, const Weight& w, const CMatrix& seedA,
                               const CMatrix& seedB, int max_iters, double tol) {
    if (seedA.rows() != w.dim() || seedA.cols() != w.dim() || seedB.rows() != w.dim() ||
        seedB.cols() != w.dim())
        throw std::invalid_argument("alternate_maximize: dimension mismatch with weight");
    const Pencil p = make_pencil(kind, w);
    return alternate_maximize_impl(p, kind, w, seedA, seedB, max_iters, tol);
}

RatioResult global_estimate(BoundKind kind, const Weight& w, int restarts, std::uint64_t seed,
                            int max_iters, double tol) {
    check_estimate_args(w, restarts);
    const Weight w_unit = w.unit_trace();
    const Pencil p = make_pencil(kind, w_unit);

    std::vector<std::optional<RatioResult>> results(static_cast<std::size_t>(restarts));
    std::vector<std::string> errors(static_cast<std::size_t>(restarts));

#pragma omp parallel for num_threads(worker_threads()) schedule(dynamic)
    for (int r = 0; r < restarts; ++r) {
        try {
            results[static_cast<std::size_t>(r)] =
                run_restart(p, kind, w_unit, seed, r, max_iters, tol);
        } catch (const std::exception& e) {
            errors[static_cast<std::size_t>(r)] = e.what();
        }
    }

    for (const std::string& err : errors)
        if (!err.empty()) throw std::runtime_error(err);

    std::size_t best = 0;
    for (std::size_t r = 1; r < results.size(); ++r)
        if (results[r]->value > results[best]->value) best = r;
    return finalize_estimate(kind, w, std::move(*results[best]));
}

RatioResult global_estimate_serial(BoundKind kind, const Weight& w, int restarts,
                                   std::uint64_t seed, int max_iters, double tol) {
    check_estimate_args(w, restarts);
    const Weight w_unit = w.unit_trace();
    const Pencil p = make_pencil(kind, w_unit);

    std::vector<RatioResult> results;
    results.reserve(static_cast<std::size_t>(restarts));
    for (int r = 0; r < restarts; ++r)
        results.push_back(run_restart(p, kind, w_unit, seed, r, max_iters, tol));

    std::size_t best = 0;
    for (std::size_t r = 1; r < results.size(); ++r)
        if (results[r].value > results[best].value) best = r;
    return finalize_estimate(kind, w, std::move(results[best]));
}

}  // namespace omegabw
