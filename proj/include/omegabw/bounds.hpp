// bounds.hpp — the six commutator-norm bound types: closed-form loose and
// tight/conjectured constants, extremal witness pairs, ratio evaluation, the
// 2x2 identity, and the three special-case verifiers.
#pragma once

#include "omegabw/linalg.hpp"

#include <array>
#include <optional>
#include <string>
#include <string_view>

namespace omegabw {

// Which of (commutator, A factor, B factor) carries the ω-norm per type:
//   I = (ω,ω,ω), II = (ω,ω,F), III = (ω,F,F), IV = (F,ω,ω), V = (F,ω,F), VI = (F,F,F)
enum class BoundKind { I, II, III, IV, V, VI };

struct NormAssignment {
    bool commutator_omega = false;
    bool a_omega = false;
    bool b_omega = false;
};

NormAssignment norm_assignment(BoundKind kind);

enum class BoundStatus { proven, conjectured };

constexpr std::array<BoundKind, 6> all_bound_kinds() {
    return {BoundKind::I,  BoundKind::II, BoundKind::III,
            BoundKind::IV, BoundKind::V,  BoundKind::VI};
}

// lower-case roman numerals: "i".."vi"
std::string to_string(BoundKind kind);
BoundKind bound_kind_from_string(std::string_view s);

// Loose constants c_1..c_5 implied by the Frobenius bound and the eigenvalue
// sandwich. Kind VI has no loose variant (sqrt(2) is already tight).
double loose_constant(BoundKind kind, const Weight& w);

struct TightConstant {
    double value = 0.0;
    BoundStatus status = BoundStatus::proven;
};

// Tight constants: proven for III, V, VI; conjectured for I, II, IV.
//   I -> sqrt((λ1+λ2)/(λ1 λ2)), II -> sqrt((λ1+λn)/λ1), III -> sqrt(2 λn),
//   IV -> sqrt((λ1+λ2)/(λ1² λ2)), V -> sqrt(2/λ1), VI -> sqrt(2)
TightConstant tight_constant(BoundKind kind, const Weight& w);

struct WitnessPair {
    CMatrix A, B;
};

// Pairs attaining equality with the tight constant. For kind VI the standard
// extremal pair exists only when the spectrum of ω is flat (ω ∝ I); any other
// weight is an error.
WitnessPair witness_pair(BoundKind kind, const Weight& w);

// ||[A,B]||_x / (||A||_y ||B||_z) with the norms picked by `kind`
double ratio(BoundKind kind, const Weight& w, const CMatrix& A, const CMatrix& B);

struct BoundReport {
    BoundKind kind = BoundKind::VI;
    double constant = 0.0;
    BoundStatus status = BoundStatus::proven;
    std::optional<WitnessPair> witness;
};

BoundReport bound_report(BoundKind kind, const Weight& w);

// Both sides of the 2x2 identity behind the kind-I bound: for a diagonal
// unit-trace weight and arguments reduced by center_omega,
//   lhs = ((λ1+λ2)/(λ1 λ2)) ||A||²_ω ||B||²_ω − ||[A,B]||²_ω
//   rhs = |(1/λ2)√(λ1/λ2) a11 conj(b11) + √(λ1/λ2) a21 conj(b21) + √(λ2/λ1) a12 conj(b12)|²
// with entries taken in the ascending eigenbasis of ω. The two agree to
// rounding, which proves the kind-I bound at n = 2.
struct N2Identity {
    double lhs = 0.0;
    double rhs = 0.0;
};

N2Identity n2_identity_residual(const Weight& w, const CMatrix& A, const CMatrix& B);

// Special case: A normal and commuting with ω (both diagonal, ω ascending).
// Returns the nonnegative slack of the kind-I and kind-II bounds; also checks
// the helper T(i) = λi/λ1 + λi/λ2 − 1 satisfies T(i) >= 1 (i >= 2) and
// T(i)·T(1) >= 1.
struct AppendixNormalResiduals {
    double residual_i = 0.0;
    double residual_ii = 0.0;
};

AppendixNormalResiduals verify_appendix_normal(const Weight& w, const CVector& a_diag,
                                               const CMatrix& B);

// Special case: B commuting with ω. The kind-II bound then holds with the
// Frobenius constant: residual = 2 ||A||²_ω ||B||² − ||[A,B]||²_ω >= 0.
double verify_appendix_B_commuting(const Weight& w, const CMatrix& A, const CMatrix& B);

// Special case: B = |λ1><λn| (fixed internally; ω diagonal ascending).
// residual = (λ1+λn) ||A||²_ω ||B||² − λ1 ||[A,B]||²_ω >= 0.
double verify_appendix_B_rank_one(const Weight& w, const CMatrix& A);

}  // namespace omegabw
