#include "omegabw/ensembles.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace omegabw {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

}  // namespace

SeededStream::SeededStream(std::uint64_t master_seed, std::uint64_t stream_index)
    : master_seed_(master_seed),
      stream_index_(stream_index),
      engine_(splitmix64(splitmix64(master_seed) ^ stream_index)) {}

std::uint64_t SeededStream::next_u64() { return engine_(); }

double SeededStream::uniform() {
    // top 53 bits, shifted into (0, 1]
    return (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;
}

double SeededStream::normal() {
    const double u1 = uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

Complex SeededStream::complex_normal() {
    const double re = normal();
    const double im = normal();
    return Complex(re, im) / std::numbers::sqrt2;
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t salt) {
    return splitmix64(splitmix64(master) ^ splitmix64(salt));
}

CMatrix ginibre(Eigen::Index n, SeededStream& stream) {
    if (n < 1) throw std::invalid_argument("ginibre: dimension must be positive");
    CMatrix G(n, n);
    for (Eigen::Index j = 0; j < n; ++j)
        for (Eigen::Index i = 0; i < n; ++i) G(i, j) = stream.complex_normal();
    return G;
}

CMatrix random_hermitian(Eigen::Index n, SeededStream& stream) {
    const CMatrix G = ginibre(n, stream);
    return 0.5 * (G + G.adjoint());
}

Weight random_weight(Eigen::Index n, SeededStream& stream) {
    for (int attempt = 0; attempt < 100; ++attempt) {
        const CMatrix G = ginibre(n, stream);
        CMatrix W = G * G.adjoint();
        W /= W.trace().real();
        try {
            Weight w = Weight::from_matrix(W);
            if (w.condition() <= 1e8) return w;
        } catch (const std::invalid_argument&) {
            // numerically singular draw: redraw
        }
    }
    throw std::runtime_error("random_weight: no draw within condition cap after 100 attempts");
}

Weight omega_sweep(double p) {
    if (!(p > 0.0) || !(p <= 1.0))
        throw std::invalid_argument("omega_sweep: p must lie in (0, 1]");
    std::vector<double> entries(5);
    double power = 1.0;
    for (int k = 0; k < 5; ++k) {
        power *= p;
        entries[static_cast<std::size_t>(k)] = std::sin(2.0 * power);
    }
    return Weight::diagonal(entries);
}

GKLSModel random_gkls(Eigen::Index n, int k, SeededStream& stream) {
    if (n < 2) throw std::invalid_argument("random_gkls: dimension must be >= 2");
    if (k < 1) throw std::invalid_argument("random_gkls: need at least one jump operator");
    CMatrix H = random_hermitian(n, stream);
    std::vector<Jump> jumps;
    jumps.reserve(static_cast<std::size_t>(k));
    for (int j = 0; j < k; ++j) {
        CMatrix L = ginibre(n, stream);
        L -= (L.trace() / static_cast<double>(n)) * CMatrix::Identity(n, n);
        L /= L.norm();
        jumps.push_back({std::move(L), stream.uniform()});
    }
    return GKLSModel::make(std::move(H), std::move(jumps));
}

}  // namespace omegabw
