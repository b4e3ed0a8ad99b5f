#include "omegabw/bounds.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace omegabw {

namespace {

constexpr double kSqrt2 = 1.4142135623730951;

CMatrix outer(const Weight& w, Eigen::Index i, Eigen::Index j) {
    return w.eigenvector(i) * w.eigenvector(j).adjoint();
}

void check_dim_match(const Weight& w, const CMatrix& A, const char* who) {
    if (A.rows() != w.dim() || A.cols() != w.dim())
        throw std::invalid_argument(std::string(who) + ": dimension mismatch with weight");
}

void check_diagonal(const Weight& w, const char* who) {
    const CMatrix& m = w.matrix();
    CMatrix off = m;
    off.diagonal().setZero();
    if (off.norm() > 1e-12 * std::max(1.0, m.norm()))
        throw std::invalid_argument(std::string(who) + ": weight must be diagonal");
}

void check_diagonal_ascending(const Weight& w, const char* who) {
    check_diagonal(w, who);
    const CMatrix& m = w.matrix();
    for (Eigen::Index i = 0; i + 1 < w.dim(); ++i) {
        if (m(i, i).real() > m(i + 1, i + 1).real() + 1e-14 * std::abs(m(i, i).real()))
            throw std::invalid_argument(std::string(who) +
                                        ": diagonal weight must be ascending");
    }
}

bool flat_spectrum(const Weight& w) {
    return w.lambda_max() - w.lambda_min() <= 1e-12 * w.lambda_max();
}

}  // namespace

NormAssignment norm_assignment(BoundKind kind) {
    switch (kind) {
        case BoundKind::I:   return {true, true, true};
        case BoundKind::II:  return {true, true, false};
        case BoundKind::III: return {true, false, false};
        case BoundKind::IV:  return {false, true, true};
        case BoundKind::V:   return {false, true, false};
        case BoundKind::VI:  return {false, false, false};
    }
    throw std::invalid_argument("norm_assignment: unknown bound kind");
}

std::string to_string(BoundKind kind) {
    switch (kind) {
        case BoundKind::I:   return "i";
        case BoundKind::II:  return "ii";
        case BoundKind::III: return "iii";
        case BoundKind::IV:  return "iv";
        case BoundKind::V:   return "v";
        case BoundKind::VI:  return "vi";
    }
    throw std::invalid_argument("to_string: unknown bound kind");
}

BoundKind bound_kind_from_string(std::string_view s) {
    if (s == "i") return BoundKind::I;
    if (s == "ii") return BoundKind::II;
    if (s == "iii") return BoundKind::III;
    if (s == "iv") return BoundKind::IV;
    if (s == "v") return BoundKind::V;
    if (s == "vi") return BoundKind::VI;
    throw std::invalid_argument("bound kind must be one of i,ii,iii,iv,v,vi (got '" +
                                std::string(s) + "')");
}

double loose_constant(BoundKind kind, const Weight& w) {
    const double lm = w.lambda_min();
    const double lM = w.lambda_max();
    switch (kind) {
        case BoundKind::I:   return std::sqrt(2.0 * lM) / lm;
        case BoundKind::II:  return std::sqrt(2.0 * lM / lm);
        case BoundKind::III: return std::sqrt(2.0 * lM);
        case BoundKind::IV:  return kSqrt2 / lm;
        case BoundKind::V:   return std::sqrt(2.0 / lm);
        case BoundKind::VI:
            throw std::invalid_argument(
                "loose_constant: kind vi has no loose variant (sqrt(2) is tight)");
    }
    throw std::invalid_argument("loose_constant: unknown bound kind");
}

TightConstant tight_constant(BoundKind kind, const Weight& w) {
    const double lm = w.lambda_min();
    const double lM = w.lambda_max();
    switch (kind) {
        case BoundKind::I: {
            const double lsm = w.lambda_second_min();
            return {std::sqrt((lm + lsm) / (lm * lsm)), BoundStatus::conjectured};
        }
        case BoundKind::II:
            return {std::sqrt((lm + lM) / lm), BoundStatus::conjectured};
        case BoundKind::III:
            return {std::sqrt(2.0 * lM), BoundStatus::proven};
        case BoundKind::IV: {
            const double lsm = w.lambda_second_min();
            return {std::sqrt((lm + lsm) / (lm * lm * lsm)), BoundStatus::conjectured};
        }
        case BoundKind::V:
            return {std::sqrt(2.0 / lm), BoundStatus::proven};
        case BoundKind::VI:
            return {kSqrt2, BoundStatus::proven};
    }
    throw std::invalid_argument("tight_constant: unknown bound kind");
}

WitnessPair witness_pair(BoundKind kind, const Weight& w) {
    const Eigen::Index n = w.dim();
    if (n < 2) throw std::invalid_argument("witness_pair: weight dimension must be >= 2");
    const Eigen::Index last = n - 1;
    switch (kind) {
        case BoundKind::I: {
            CMatrix A = outer(w, 0, 1);
            return {A, A.adjoint()};
        }
        case BoundKind::II: {
            CMatrix A = outer(w, last, 0);
            return {A, A.adjoint()};
        }
        case BoundKind::III: {
            CMatrix B = (outer(w, last, last) - outer(w, 0, 0)) / kSqrt2;
            return {outer(w, 0, last), B};
        }
        case BoundKind::IV: {
            const double lm = w.lambda_min();
            const double lsm = w.lambda_second_min();
            CMatrix A = lm * outer(w, 1, 1) - lsm * outer(w, 0, 0);
            return {A, outer(w, 1, 0)};
        }
        case BoundKind::V:
            return {outer(w, last, 0), outer(w, 0, last)};
        case BoundKind::VI:
            if (!flat_spectrum(w))
                throw std::invalid_argument(
                    "witness_pair: kind vi extremal pair exists only for flat weights");
            return {outer(w, last, 0), outer(w, 0, last)};
    }
    throw std::invalid_argument("witness_pair: unknown bound kind");
}

double ratio(BoundKind kind, const Weight& w, const CMatrix& A, const CMatrix& B) {
    check_dim_match(w, A, "ratio");
    check_dim_match(w, B, "ratio");
    if (frobenius_norm(A) == 0.0 || frobenius_norm(B) == 0.0)
        throw std::invalid_argument("ratio: A and B must be nonzero");
    const NormAssignment na = norm_assignment(kind);
    const CMatrix comm = commutator(A, B);
    const double num = na.commutator_omega ? omega_norm(comm, w) : frobenius_norm(comm);
    const double da = na.a_omega ? omega_norm(A, w) : frobenius_norm(A);
    const double db = na.b_omega ? omega_norm(B, w) : frobenius_norm(B);
    return num / (da * db);
}

BoundReport bound_report(BoundKind kind, const Weight& w) {
    BoundReport report;
    report.kind = kind;
    const TightConstant tc = tight_constant(kind, w);
    report.constant = tc.value;
    report.status = tc.status;
    if (kind != BoundKind::VI || flat_spectrum(w)) report.witness = witness_pair(kind, w);
    return report;
}

N2Identity n2_identity_residual(const Weight& w, const CMatrix& A, const CMatrix& B) {
    if (w.dim() != 2) throw std::invalid_argument("n2_identity_residual: weight must be 2x2");
    check_dim_match(w, A, "n2_identity_residual");
    check_dim_match(w, B, "n2_identity_residual");
    check_diagonal(w, "n2_identity_residual");
    if (std::abs(w.trace() - 1.0) > 1e-12)
        throw std::invalid_argument("n2_identity_residual: weight must have unit trace");

    const CMatrix Ac = center_omega(A, w);
    const CMatrix Bc = center_omega(B, w);

    const double l1 = w.lambda_min();
    const double l2 = w.lambda_max();

    const double na = omega_norm(Ac, w);
    const double nb = omega_norm(Bc, w);
    const double nc = omega_norm(commutator(Ac, Bc), w);
    const double lhs = (l1 + l2) / (l1 * l2) * na * na * nb * nb - nc * nc;

    // entries in the ascending eigenbasis of ω
    const CMatrix V = w.eigenvectors();
    const CMatrix a = V.adjoint() * Ac * V;
    const CMatrix b = V.adjoint() * Bc * V;
    const double r12 = std::sqrt(l1 / l2);
    const double r21 = std::sqrt(l2 / l1);
    const Complex s = (r12 / l2) * a(0, 0) * std::conj(b(0, 0)) +
                      r12 * a(1, 0) * std::conj(b(1, 0)) +
                      r21 * a(0, 1) * std::conj(b(0, 1));
    return {lhs, std::norm(s)};
}

AppendixNormalResiduals verify_appendix_normal(const Weight& w, const CVector& a_diag,
                                               const CMatrix& B) {
    check_diagonal_ascending(w, "verify_appendix_normal");
    if (a_diag.size() != w.dim())
        throw std::invalid_argument("verify_appendix_normal: diagonal length mismatch");
    check_dim_match(w, B, "verify_appendix_normal");
    const Eigen::Index n = w.dim();
    if (n < 2) throw std::invalid_argument("verify_appendix_normal: need dim >= 2");

    const double l1 = w.lambda_min();
    const double l2 = w.lambda_second_min();
    const double ln = w.lambda_max();
    const double t1 = l1 / l1 + l1 / l2 - 1.0;
    for (Eigen::Index i = 1; i < n; ++i) {
        const double li = w.eigenvalues()(i);
        const double t = li / l1 + li / l2 - 1.0;
        if (t < 1.0 - 1e-12)
            throw std::logic_error("verify_appendix_normal: T(i) < 1 for i >= 2");
        if (t * t1 < 1.0 - 1e-12)
            throw std::logic_error("verify_appendix_normal: T(i)T(1) < 1");
    }

    CMatrix A = CMatrix::Zero(n, n);
    A.diagonal() = a_diag;

    const double na = omega_norm(A, w);
    const double nbw = omega_norm(B, w);
    const double nbf = frobenius_norm(B);
    const double ncw = omega_norm(commutator(A, B), w);

    const double residual_i = (l1 + l2) / (l1 * l2) * na * na * nbw * nbw - ncw * ncw;
    const double residual_ii = (l1 + ln) / l1 * na * na * nbf * nbf - ncw * ncw;
    return {residual_i, residual_ii};
}

double verify_appendix_B_commuting(const Weight& w, const CMatrix& A, const CMatrix& B) {
    check_dim_match(w, A, "verify_appendix_B_commuting");
    check_dim_match(w, B, "verify_appendix_B_commuting");
    const CMatrix swap = B * w.matrix() - w.matrix() * B;
    if (swap.norm() > 1e-10 * std::max(1.0, B.norm() * w.matrix().norm()))
        throw std::invalid_argument("verify_appendix_B_commuting: B does not commute with weight");
    const double na = omega_norm(A, w);
    const double nb = frobenius_norm(B);
    const double nc = omega_norm(commutator(A, B), w);
    return 2.0 * na * na * nb * nb - nc * nc;
}

double verify_appendix_B_rank_one(const Weight& w, const CMatrix& A) {
    if (w.dim() < 2) throw std::invalid_argument("verify_appendix_B_rank_one: need dim >= 2");
    check_diagonal_ascending(w, "verify_appendix_B_rank_one");
    check_dim_match(w, A, "verify_appendix_B_rank_one");
    const double l1 = w.lambda_min();
    const double ln = w.lambda_max();
    const CMatrix B = outer(w, 0, w.dim() - 1);
    const double na = omega_norm(A, w);
    const double nb = frobenius_norm(B);
    const double nc = omega_norm(commutator(A, B), w);
    return (l1 + ln) * na * na * nb * nb - l1 * nc * nc;
}

}  // namespace omegabw
