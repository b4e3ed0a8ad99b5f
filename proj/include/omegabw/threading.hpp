// threading.hpp — worker-pool sizing for the OpenMP campaign loops.
#pragma once

namespace omegabw {

// Number of worker threads for parallel loops: the OMEGA_BW_THREADS
// environment variable when set to a positive integer, otherwise the
// machine parallelism reported by the OpenMP runtime (1 in builds
// without OpenMP). Re-read on every call so tests can vary it.
int worker_threads();

}  // namespace omegabw
