#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "omegabw/ensembles.hpp"
#include "test_helpers.hpp"

#include <cmath>

using namespace omegabw;
using namespace testutil;

// golden values locked from the fixed generator (SplitMix64-seeded mt19937_64,
// Box-Muller); any change to the stream derivation must update these on purpose
namespace golden {
constexpr double kGinibre42Re = -0.30498647349585312;
constexpr double kGinibre42Im = -0.47980959408863977;
constexpr double kWeight7Eig0 = 0.010119201239020844;
constexpr double kWeight7Eig1 = 0.11286993515066589;
constexpr double kWeight7Eig2 = 0.87701086361031322;
}  // namespace golden

TEST_CASE("streams are deterministic and distinct") {
    SeededStream a(123, 5);
    SeededStream b(123, 5);
    for (int k = 0; k < 100; ++k) CHECK(a.next_u64() == b.next_u64());

    SeededStream c(123, 6);
    SeededStream d(124, 5);
    CHECK(SeededStream(123, 5).next_u64() != c.next_u64());
    CHECK(SeededStream(123, 5).next_u64() != d.next_u64());

    SeededStream u(9, 0);
    for (int k = 0; k < 1000; ++k) {
        const double x = u.uniform();
        CHECK(x > 0.0);
        CHECK(x <= 1.0);
    }
}

TEST_CASE("ginibre determinism and golden first entry") {
    SeededStream s1(42, 0);
    SeededStream s2(42, 0);
    const CMatrix A = ginibre(3, s1);
    const CMatrix B = ginibre(3, s2);
    CHECK((A - B).norm() == 0.0);

    CHECK(A(0, 0).real() == doctest::Approx(golden::kGinibre42Re).epsilon(1e-12));
    CHECK(A(0, 0).imag() == doctest::Approx(golden::kGinibre42Im).epsilon(1e-12));

    SeededStream s3(42, 1);
    CHECK((A - ginibre(3, s3)).norm() > 1e-6);

    CHECK_THROWS_AS(ginibre(0, s1), std::invalid_argument);
}

TEST_CASE("ginibre second moment") {
    SeededStream st(7, 3);
    double sum = 0.0;
    const int draws = 100;
    for (int rep = 0; rep < draws; ++rep) {
        const CMatrix G = ginibre(10, st);
        sum += G.squaredNorm();
    }
    const double mean = sum / (draws * 100.0);
    CHECK(std::abs(mean - 1.0) <= 0.05);
}

TEST_CASE("random_weight invariants and golden eigenvalues") {
    SeededStream st(7, 0);
    const Weight w = random_weight(3, st);
    CHECK(w.trace() == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(w.lambda_min() > 0.0);
    CHECK(w.condition() <= 1e8);

    CHECK(w.eigenvalues()(0) == doctest::Approx(golden::kWeight7Eig0).epsilon(1e-12));
    CHECK(w.eigenvalues()(1) == doctest::Approx(golden::kWeight7Eig1).epsilon(1e-12));
    CHECK(w.eigenvalues()(2) == doctest::Approx(golden::kWeight7Eig2).epsilon(1e-12));

    SeededStream s1(99, 0);
    const Weight w1 = random_weight(1, s1);
    CHECK(w1.dim() == 1);
    CHECK(w1.matrix()(0, 0).real() == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("omega_sweep family") {
    const Weight flat = omega_sweep(1.0);
    for (Eigen::Index i = 0; i < 5; ++i)
        CHECK(flat.matrix()(i, i).real() == doctest::Approx(std::sin(2.0)).epsilon(1e-14));
    CHECK(flat.lambda_max() - flat.lambda_min() <= 1e-12);

    const Weight half = omega_sweep(0.5);
    CHECK(half.matrix()(0, 0).real() == doctest::Approx(std::sin(1.0)));
    CHECK(half.matrix()(1, 1).real() == doctest::Approx(std::sin(0.5)));
    CHECK(half.matrix()(2, 2).real() == doctest::Approx(std::sin(0.25)));
    CHECK(half.matrix()(3, 3).real() == doctest::Approx(std::sin(0.125)));
    CHECK(half.matrix()(4, 4).real() == doctest::Approx(std::sin(0.0625)));

    for (int k = 1; k <= 40; ++k) {
        const double p = k / 40.0;
        const Weight w = omega_sweep(p);
        CHECK(w.lambda_min() > 0.0);
        CHECK(w.lambda_max() <= 1.0);
        double smallest = 1e300;
        for (Eigen::Index i = 0; i < 5; ++i)
            smallest = std::min(smallest, w.matrix()(i, i).real());
        CHECK(w.lambda_min() == doctest::Approx(smallest).epsilon(1e-13));
    }

    CHECK_THROWS_AS(omega_sweep(0.0), std::invalid_argument);
    CHECK_THROWS_AS(omega_sweep(1.01), std::invalid_argument);
}

TEST_CASE("random_hermitian is exactly Hermitian and reproducible") {
    SeededStream s1(15, 2);
    SeededStream s2(15, 2);
    const CMatrix H = random_hermitian(4, s1);
    CHECK((H - H.adjoint()).norm() == 0.0);
    CHECK((H - random_hermitian(4, s2)).norm() == 0.0);
    CHECK(H.allFinite());
}

TEST_CASE("random_gkls invariants") {
    SeededStream st(16, 0);
    const GKLSModel m = random_gkls(3, 4, st);
    CHECK(m.dim == 3);
    CHECK((m.hamiltonian - m.hamiltonian.adjoint()).norm() == 0.0);
    REQUIRE(m.jumps.size() == 4);
    for (const Jump& j : m.jumps) {
        CHECK(std::abs(j.op.norm() - 1.0) <= 1e-14);
        CHECK(std::abs(j.op.trace()) <= 1e-14);
        CHECK(j.rate > 0.0);
        CHECK(j.rate <= 1.0);
    }

    SeededStream s1(16, 0);
    const GKLSModel same = random_gkls(3, 4, s1);
    CHECK((m.hamiltonian - same.hamiltonian).norm() == 0.0);
    CHECK((m.jumps[2].op - same.jumps[2].op).norm() == 0.0);
}
