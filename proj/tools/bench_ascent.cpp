// bench_ascent — wall-clock comparison of the serial restart loop against the
// OpenMP one, checking that both return the identical result.
#include "omegabw/ensembles.hpp"
#include "omegabw/optimizer.hpp"
#include "omegabw/threading.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>

using namespace omegabw;

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

int main(int argc, char** argv) {
    const Eigen::Index n = argc > 1 ? std::atoi(argv[1]) : 6;
    const int restarts = argc > 2 ? std::atoi(argv[2]) : 32;
    const std::uint64_t seed = 2024;

    SeededStream stream(seed, 0);
    const Weight w = random_weight(n, stream);

    std::printf("n=%lld restarts=%d threads=%d\n", static_cast<long long>(n), restarts,
                worker_threads());
    std::printf("%-6s %12s %12s %10s %8s\n", "kind", "serial[s]", "openmp[s]", "speedup",
                "value");

    bool mismatch = false;
    for (const BoundKind kind : all_bound_kinds()) {
        const auto t0 = std::chrono::steady_clock::now();
        const RatioResult serial = global_estimate_serial(kind, w, restarts, seed);
        const double ts = seconds_since(t0);

        const auto t1 = std::chrono::steady_clock::now();
        const RatioResult parallel = global_estimate(kind, w, restarts, seed);
        const double tp = seconds_since(t1);

        if (serial.value != parallel.value || serial.restart_index != parallel.restart_index)
            mismatch = true;
        std::printf("%-6s %12.3f %12.3f %9.2fx %8.6f\n", to_string(kind).c_str(), ts, tp,
                    ts / tp, parallel.value);
    }
    if (mismatch) {
        std::printf("MISMATCH between serial and parallel results\n");
        return 1;
    }
    std::printf("serial and parallel results identical\n");
    return 0;
}
