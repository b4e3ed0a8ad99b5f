// acceptance — end-to-end suite over the full pipeline; prints one pass/fail
// line per criterion and exits with the number of failures.
#include "omegabw/bounds.hpp"
#include "omegabw/ensembles.hpp"
#include "omegabw/optimizer.hpp"
#include "omegabw/quantum.hpp"
#include "omegabw/reports.hpp"
#include "omegabw/threading.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

using namespace omegabw;

namespace {

struct Failure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void require(bool cond, const std::string& msg) {
    if (!cond) throw Failure(msg);
}

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3g", v);
    return buf;
}

CMatrix pauli_x() {
    CMatrix m(2, 2);
    m << 0.0, 1.0, 1.0, 0.0;
    return m;
}

CMatrix pauli_y() {
    CMatrix m(2, 2);
    m << 0.0, Complex(0.0, -1.0), Complex(0.0, 1.0), 0.0;
    return m;
}

CMatrix pauli_z() {
    CMatrix m(2, 2);
    m << 1.0, 0.0, 0.0, -1.0;
    return m;
}

CMatrix random_unitary(Eigen::Index n, SeededStream& stream) {
    const CMatrix g = ginibre(n, stream);
    Eigen::HouseholderQR<CMatrix> qr(g);
    CMatrix q = qr.householderQ();
    const CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Eigen::Index i = 0; i < n; ++i)
        if (std::abs(r(i, i)) > 0.0) q.col(i) *= r(i, i) / std::abs(r(i, i));
    return q;
}

// parallel loop over [0, count) collecting the first failure message per index
void parallel_check(int count, const std::function<void(int)>& body) {
    std::vector<std::string> errors(static_cast<std::size_t>(count));
#pragma omp parallel for num_threads(worker_threads()) schedule(dynamic)
    for (int i = 0; i < count; ++i) {
        try {
            body(i);
        } catch (const std::exception& e) {
            errors[static_cast<std::size_t>(i)] = e.what();
        }
    }
    for (const std::string& e : errors)
        if (!e.empty()) throw Failure(e);
}

// ---------------------------------------------------------------------------

void criterion_bw_recovery() {
    for (int n = 2; n <= 6; ++n) {
        const Weight w = Weight::identity(n);
        for (const BoundKind kind : all_bound_kinds()) {
            const std::uint64_t seed =
                derive_seed(100, 8ULL * static_cast<std::uint64_t>(n) +
                                     static_cast<std::uint64_t>(kind));
            const RatioResult res = global_estimate(kind, w, 8, seed);
            require(std::abs(res.value - std::numbers::sqrt2) <= 1e-6,
                    "identity weight, kind " + to_string(kind) + ", n=" + std::to_string(n) +
                        ": estimate " + fmt(res.value) + " vs sqrt(2)");
        }
    }
}

void criterion_proven_constants() {
    constexpr int kWeights = 100;
    constexpr int kRestarts = 8;
    for (int n = 2; n <= 8; ++n) {
        parallel_check(kWeights, [&](int t) {
            SeededStream ws(derive_seed(200, 1000ULL * static_cast<std::uint64_t>(n) +
                                                 static_cast<std::uint64_t>(t)),
                            0);
            const Weight w = random_weight(n, ws);
            for (const BoundKind kind : {BoundKind::III, BoundKind::V}) {
                const double c = tight_constant(kind, w).value;
                const std::uint64_t seed = derive_seed(
                    201, 8ULL * (1000ULL * static_cast<std::uint64_t>(n) +
                                 static_cast<std::uint64_t>(t)) +
                             static_cast<std::uint64_t>(kind));
                const RatioResult res = global_estimate(kind, w, kRestarts, seed);
                require(std::abs(res.value - c) <= 1e-6 * c,
                        "kind " + to_string(kind) + " n=" + std::to_string(n) + " trial " +
                            std::to_string(t) + ": estimate off by " +
                            fmt(std::abs(res.value - c) / c));
                const WitnessPair pair = witness_pair(kind, w);
                const double r = ratio(kind, w, pair.A, pair.B);
                require(std::abs(r - c) <= 1e-10 * c,
                        "witness equality failed for kind " + to_string(kind));
            }
        });
    }
}

void criterion_conjectured_constants() {
    constexpr int kWeights = 100;
    constexpr int kRestarts = 16;
    for (int n = 2; n <= 8; ++n) {
        parallel_check(kWeights, [&](int t) {
            SeededStream ws(derive_seed(300, 1000ULL * static_cast<std::uint64_t>(n) +
                                                 static_cast<std::uint64_t>(t)),
                            0);
            const Weight w = random_weight(n, ws);
            for (const BoundKind kind : {BoundKind::I, BoundKind::II, BoundKind::IV}) {
                const double c = tight_constant(kind, w).value;
                const std::uint64_t seed = derive_seed(
                    301, 8ULL * (1000ULL * static_cast<std::uint64_t>(n) +
                                 static_cast<std::uint64_t>(t)) +
                             static_cast<std::uint64_t>(kind));
                const RatioResult res = global_estimate(kind, w, kRestarts, seed);
                require(res.value <= c * (1.0 + 1e-8),
                        "kind " + to_string(kind) + " exceeded the conjectured constant by " +
                            fmt(res.value / c - 1.0));
                require(res.value >= c * (1.0 - 1e-4),
                        "kind " + to_string(kind) + " n=" + std::to_string(n) + " trial " +
                            std::to_string(t) + ": estimate " + fmt(res.value) + " below " +
                            fmt(c) + " by " + fmt(1.0 - res.value / c));
                const WitnessPair pair = witness_pair(kind, w);
                const double r = ratio(kind, w, pair.A, pair.B);
                require(std::abs(r - c) <= 1e-10 * c,
                        "witness equality failed for kind " + to_string(kind));
            }
        });
    }
}

void criterion_sweep_family() {
    constexpr int kGrid = 200;
    constexpr int kRestarts = 8;
    parallel_check(kGrid, [&](int k) {
        const double p = static_cast<double>(k + 1) / kGrid;
        const Weight w = omega_sweep(p);
        for (const BoundKind kind :
             {BoundKind::I, BoundKind::II, BoundKind::III, BoundKind::IV, BoundKind::V}) {
            const double c = tight_constant(kind, w).value;
            const double loose = loose_constant(kind, w);
            require(loose >= c * (1.0 - 1e-12),
                    "loose constant fails to dominate at p=" + fmt(p));
            const std::uint64_t seed =
                derive_seed(400, 8ULL * static_cast<std::uint64_t>(k) +
                                     static_cast<std::uint64_t>(kind));
            const RatioResult res = global_estimate(kind, w, kRestarts, seed);
            require(std::abs(res.value - c) <= 1e-3 * c,
                    "sweep p=" + fmt(p) + " kind " + to_string(kind) + ": estimate " +
                        fmt(res.value) + " vs constant " + fmt(c));
        }
    });
}

void criterion_n2_identity() {
    SeededStream st(500, 0);
    for (int rep = 0; rep < 10000; ++rep) {
        const double l1 = 0.02 + 0.48 * st.uniform();
        const Weight w = Weight::diagonal({l1, 1.0 - l1});
        const CMatrix A = ginibre(2, st);
        const CMatrix B = ginibre(2, st);
        const N2Identity id = n2_identity_residual(w, A, B);
        require(std::abs(id.lhs - id.rhs) <= 1e-10 * std::max(1.0, id.lhs),
                "identity residual " + fmt(std::abs(id.lhs - id.rhs)) + " at rep " +
                    std::to_string(rep));
    }
}

void criterion_appendix_suites() {
    SeededStream st(600, 0);
    const auto ascending_weight = [&](Eigen::Index n) {
        std::vector<double> diag(static_cast<std::size_t>(n));
        for (double& d : diag) d = 0.05 + st.uniform();
        std::sort(diag.begin(), diag.end());
        return Weight::diagonal(diag);
    };

    for (int rep = 0; rep < 1000; ++rep) {
        const Eigen::Index n = 2 + static_cast<Eigen::Index>(st.next_u64() % 7);
        const Weight w = ascending_weight(n);
        CVector a(n);
        for (Eigen::Index i = 0; i < n; ++i) a(i) = st.complex_normal();
        const CMatrix B = ginibre(n, st);
        const AppendixNormalResiduals r = verify_appendix_normal(w, a, B);
        const double scale =
            std::max(1.0, std::abs(r.residual_i) + std::abs(r.residual_ii));
        require(r.residual_i >= -1e-12 * scale, "normal-case kind-i residual negative");
        require(r.residual_ii >= -1e-12 * scale, "normal-case kind-ii residual negative");
    }

    for (int rep = 0; rep < 1000; ++rep) {
        const Eigen::Index n = 2 + static_cast<Eigen::Index>(st.next_u64() % 7);
        const Weight w = ascending_weight(n);
        CMatrix B = CMatrix::Zero(n, n);
        for (Eigen::Index i = 0; i < n; ++i) B(i, i) = st.complex_normal();
        const CMatrix A = ginibre(n, st);
        const double residual = verify_appendix_B_commuting(w, A, B);
        const double na = omega_norm(A, w);
        const double nb = frobenius_norm(B);
        require(residual >= -1e-12 * std::max(1.0, 2.0 * na * na * nb * nb),
                "commuting-B residual negative");
    }

    for (int rep = 0; rep < 1000; ++rep) {
        const Eigen::Index n = 2 + static_cast<Eigen::Index>(st.next_u64() % 7);
        const Weight w = ascending_weight(n);
        const CMatrix A = ginibre(n, st);
        const double residual = verify_appendix_B_rank_one(w, A);
        const double na = omega_norm(A, w);
        require(residual >= -1e-12 * std::max(1.0, na * na), "rank-one residual negative");
    }
}

void criterion_uncertainty_example() {
    const CMatrix sx = pauli_x();
    const CMatrix sy = pauli_y();
    for (int k = 1; k <= 1000; ++k) {
        const double p = k / 1000.0;
        const DensityMatrix rho = qubit_mixture(p);
        require(std::abs(robertson_bound(sx, sy, rho) - (1.0 - p) * (1.0 - p)) <= 1e-12,
                "robertson curve off at p=" + fmt(p));
        require(std::abs(new_uncertainty_bound(sx, sy, rho) - p * (2.0 - p)) <= 1e-12,
                "conjectured curve off at p=" + fmt(p));
        require(std::abs(loose_uncertainty_bound(sx, sy, rho) - p * p / (2.0 - p)) <= 1e-12,
                "loose curve off at p=" + fmt(p));
    }

    const auto bisect = [&](const std::function<double(double)>& f, double lo, double hi) {
        double flo = f(lo);
        for (int it = 0; it < 200; ++it) {
            const double mid = 0.5 * (lo + hi);
            const double fmid = f(mid);
            if ((flo <= 0.0) == (fmid <= 0.0)) {
                lo = mid;
                flo = fmid;
            } else {
                hi = mid;
            }
        }
        return 0.5 * (lo + hi);
    };
    const double c1 = bisect(
        [&](double p) {
            const DensityMatrix rho = qubit_mixture(p);
            return robertson_bound(sx, sy, rho) - new_uncertainty_bound(sx, sy, rho);
        },
        1e-9, 1.0);
    require(std::abs(c1 - (2.0 - std::numbers::sqrt2) / 2.0) <= 1e-6,
            "first crossing " + fmt(c1));
    const double c2 = bisect(
        [&](double p) {
            const DensityMatrix rho = qubit_mixture(p);
            return robertson_bound(sx, sy, rho) - loose_uncertainty_bound(sx, sy, rho);
        },
        1e-9, 1.0);
    require(std::abs(c2 - 0.547) <= 1e-3, "second crossing " + fmt(c2));
}

void criterion_gkls_audit() {
    const double gamma = 0.7;
    const GKLSModel deph =
        GKLSModel::make(CMatrix::Zero(2, 2), {{pauli_z() / std::numbers::sqrt2, gamma}});
    const RateSpectrum s = rate_spectrum(deph);
    std::vector<double> sorted = s.rates;
    std::sort(sorted.begin(), sorted.end());
    require(sorted.size() == 3, "dephasing should yield 3 rates");
    require(std::abs(sorted[0]) <= 1e-12, "dephasing zero mode");
    require(std::abs(sorted[1] - gamma) <= 1e-12, "dephasing rate 1");
    require(std::abs(sorted[2] - gamma) <= 1e-12, "dephasing rate 2");
    const SumRule sum = sum_rule_check(deph, s);
    require(std::abs(sum.lhs - sum.rhs) <= 1e-12, "dephasing sum rule");
    const RateConstraint rc = rate_constraint_check(deph, s);
    require(std::abs(rc.max_rate - rc.bound) <= 1e-12, "dephasing saturation");
    require(rc.satisfied, "dephasing constraint");
    require(rate_formula_residual(deph, s) <= 1e-12, "dephasing rate formula");

    for (const int n : {2, 3}) {
        parallel_check(500, [&](int t) {
            SeededStream stream(derive_seed(700, static_cast<std::uint64_t>(n)),
                                static_cast<std::uint64_t>(t));
            const GKLSModel m = random_gkls(n, 2, stream);
            const RateSpectrum spec = rate_spectrum(m);
            require(rate_formula_residual(m, spec) <= 1e-8,
                    "rate formula residual at n=" + std::to_string(n) + " trial " +
                        std::to_string(t));
            const SumRule sr = sum_rule_check(m, spec);
            require(std::abs(sr.lhs - sr.rhs) <= 1e-8 * std::max(1.0, sr.lhs),
                    "sum rule gap at n=" + std::to_string(n));
            require(rate_constraint_check(m, spec).satisfied,
                    "rate constraint violated at n=" + std::to_string(n) + " trial " +
                        std::to_string(t));
        });
    }
}

void criterion_property_suites() {
    SeededStream st(800, 0);

    // norm axioms and the eigenvalue sandwich
    for (int rep = 0; rep < 200; ++rep) {
        const Eigen::Index n = 2 + static_cast<Eigen::Index>(st.next_u64() % 5);
        const Weight w = random_weight(n, st);
        const CMatrix A = ginibre(n, st);
        const CMatrix B = ginibre(n, st);
        require(omega_norm(A, w) > 0.0, "definiteness");
        const Complex c = st.complex_normal();
        require(std::abs(omega_norm(c * A, w) - std::abs(c) * omega_norm(A, w)) <=
                    1e-12 * std::max(1.0, omega_norm(A, w)),
                "homogeneity");
        require(omega_norm(A + B, w) <= omega_norm(A, w) + omega_norm(B, w) + 1e-12,
                "triangle inequality");
        const double f2 = frobenius_norm(A) * frobenius_norm(A);
        const double w2 = omega_norm(A, w) * omega_norm(A, w);
        require(w2 >= w.lambda_min() * f2 - 1e-12 * f2, "sandwich lower");
        require(w2 <= w.lambda_max() * f2 + 1e-12 * f2, "sandwich upper");
        require(std::abs(omega_norm(A, w) - frobenius_norm(A * w.sqrt_matrix())) <=
                    1e-12 * std::max(1.0, omega_norm(A, w)),
                "square-root route");
    }

    // unitary covariance and weight scaling
    for (int rep = 0; rep < 100; ++rep) {
        const Eigen::Index n = 2 + static_cast<Eigen::Index>(st.next_u64() % 4);
        const Weight w = random_weight(n, st);
        const CMatrix A = ginibre(n, st);
        const CMatrix U = random_unitary(n, st);
        const Weight wu = Weight::from_matrix(U * w.matrix() * U.adjoint());
        require(std::abs(omega_norm(U * A * U.adjoint(), wu) - omega_norm(A, w)) <=
                    1e-10 * std::max(1.0, omega_norm(A, w)),
                "unitary covariance");
        const double p = 0.2 + 3.0 * st.uniform();
        require(std::abs(omega_norm(A, w.scaled(p)) - std::sqrt(p) * omega_norm(A, w)) <=
                    1e-12 * std::max(1.0, omega_norm(A, w)),
                "weight scaling");
    }

    // monotone ascent traces
    for (int rep = 0; rep < 20; ++rep) {
        const Eigen::Index n = 2 + static_cast<Eigen::Index>(st.next_u64() % 4);
        const Weight w = random_weight(n, st);
        const CMatrix seedA = ginibre(n, st);
        const CMatrix seedB = ginibre(n, st);
        for (const BoundKind kind : all_bound_kinds()) {
            const RatioResult res = alternate_maximize(kind, w, seedA, seedB);
            for (std::size_t i = 1; i < res.trace.size(); ++i)
                require(res.trace[i] >=
                            res.trace[i - 1] - 1e-12 * std::max(1.0, res.trace[i]),
                        "monotone ascent");
        }
    }

    // determinism under varying thread counts, at the library and campaign level
    {
        SeededStream ws(801, 0);
        const Weight w = random_weight(4, ws);
        setenv("OMEGA_BW_THREADS", "1", 1);
        const RatioResult one = global_estimate(BoundKind::I, w, 8, 802);
        setenv("OMEGA_BW_THREADS", "4", 1);
        const RatioResult four = global_estimate(BoundKind::I, w, 8, 802);
        require(one.value == four.value && one.restart_index == four.restart_index,
                "thread-count determinism of global_estimate");

        namespace fs = std::filesystem;
        const fs::path dir = fs::temp_directory_path() / "omegabw_acceptance";
        fs::remove_all(dir);
        fs::create_directories(dir);
        RunConfig cfg;
        cfg.subcommand = "sweep";
        cfg.grid_points = 4;
        cfg.restarts = 4;
        cfg.seed = 803;
        setenv("OMEGA_BW_THREADS", "1", 1);
        cfg.output_path = (dir / "one.csv").string();
        require(cmd_sweep(cfg) == 0, "sweep exit code");
        setenv("OMEGA_BW_THREADS", "4", 1);
        cfg.output_path = (dir / "four.csv").string();
        require(cmd_sweep(cfg) == 0, "sweep exit code");
        unsetenv("OMEGA_BW_THREADS");
        const auto slurp = [](const fs::path& p) {
            std::ifstream is(p, std::ios::binary);
            std::stringstream ss;
            ss << is.rdbuf();
            return ss.str();
        };
        require(slurp(dir / "one.csv") == slurp(dir / "four.csv"),
                "thread-count determinism of campaign output");
        fs::remove_all(dir);
    }
}

struct Criterion {
    const char* name;
    void (*run)();
};

}  // namespace

int main() {
    const std::vector<Criterion> criteria = {
        {"1 BW recovery at the identity weight", criterion_bw_recovery},
        {"2 proven tight constants (kinds iii, v)", criterion_proven_constants},
        {"3 conjectured constants (kinds i, ii, iv)", criterion_conjectured_constants},
        {"4 diagonal-family sweep agreement", criterion_sweep_family},
        {"5 two-by-two identity", criterion_n2_identity},
        {"6 special-case verifier suites", criterion_appendix_suites},
        {"7 qubit uncertainty example", criterion_uncertainty_example},
        {"8 GKLS relaxation-rate audit", criterion_gkls_audit},
        {"9 property suites", criterion_property_suites},
    };

    int failures = 0;
    for (const Criterion& c : criteria) {
        const auto t0 = std::chrono::steady_clock::now();
        try {
            c.run();
            const double dt = std::chrono::duration<double>(
                                  std::chrono::steady_clock::now() - t0)
                                  .count();
            std::printf("[PASS] criterion %s (%.1fs)\n", c.name, dt);
        } catch (const std::exception& e) {
            const double dt = std::chrono::duration<double>(
                                  std::chrono::steady_clock::now() - t0)
                                  .count();
            std::printf("[FAIL] criterion %s (%.1fs): %s\n", c.name, dt, e.what());
            ++failures;
        }
        std::fflush(stdout);
    }
    return failures;
}
