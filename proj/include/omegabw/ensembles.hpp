// ensembles.hpp — reproducible random matrix generation (Ginibre, Wishart
// weights, Hermitian observables, GKLS models) and the deterministic diagonal
// family used by the bound-comparison sweep.
#pragma once

#include "omegabw/linalg.hpp"
#include "omegabw/quantum.hpp"

#include <cstdint>
#include <random>

namespace omegabw {

// Deterministic stream addressed by (master_seed, stream_index). The engine
// seed is derived by two SplitMix64 steps over the pair and drives a
// std::mt19937_64 (algorithm fixed by the C++ standard). Uniforms take the
// top 53 bits mapped to (0,1]; normals use the cosine branch of Box-Muller.
// Identical (master_seed, stream_index) therefore reproduce identical draws.
class SeededStream {
 public:
    SeededStream(std::uint64_t master_seed, std::uint64_t stream_index);

    std::uint64_t master_seed() const { return master_seed_; }
    std::uint64_t stream_index() const { return stream_index_; }

    std::uint64_t next_u64();
    double uniform();           // (0, 1]
    double normal();            // N(0, 1)
    Complex complex_normal();   // (x + iy)/sqrt(2), so E|z|^2 = 1

 private:
    std::uint64_t master_seed_;
    std::uint64_t stream_index_;
    std::mt19937_64 engine_;
};

// SplitMix64-based combiner for carving independent sub-campaign seeds out of
// one master seed.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t salt);

// entries independent complex standard normal
CMatrix ginibre(Eigen::Index n, SeededStream& stream);

// (G + G*)/2 for a Ginibre G
CMatrix random_hermitian(Eigen::Index n, SeededStream& stream);

// Trace-normalized Wishart weight G G*/tr(G G*): unit trace, positive
// definite; redrawn while the condition number exceeds 1e8 (at most 100
// attempts, then an error).
Weight random_weight(Eigen::Index n, SeededStream& stream);

// diag[sin(2p), sin(2p^2), sin(2p^3), sin(2p^4), sin(2p^5)] for p in (0,1];
// positive definite on the whole domain (all arguments lie in (0,2])
Weight omega_sweep(double p);

// Random GKLS model: random Hermitian H, k jump operators drawn Ginibre then
// made traceless and unit Frobenius norm (the canonical form the rate sum
// rule assumes), rates uniform on (0,1].
GKLSModel random_gkls(Eigen::Index n, int k, SeededStream& stream);

}  // namespace omegabw
