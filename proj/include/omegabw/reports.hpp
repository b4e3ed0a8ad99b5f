// reports.hpp — campaign layer behind the CLI: verification runs over random
// weights, the diagonal-family sweep, the qubit uncertainty table, GKLS
// audits, and single-weight optimization reports. Emits CSV or JSON and
// persists counterexample candidates as standalone JSON records.
#pragma once

#include "omegabw/bounds.hpp"
#include "omegabw/optimizer.hpp"
#include "omegabw/quantum.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace omegabw {

enum class OutputFormat { csv, json };

struct RunConfig {
    std::string subcommand;
    int n = 0;                     // 0 = subcommand default (verify sweeps 2..8)
    std::vector<BoundKind> kinds;  // empty = subcommand default
    int trials = 10;
    int restarts = 32;
    std::uint64_t seed = 1;
    double tol = 1e-10;
    int max_iters = 500;
    std::string output_path;  // empty = stdout
    OutputFormat format = OutputFormat::csv;
    std::string weight_path;          // optimize: JSON weight file
    bool use_random_weight = false;   // optimize: --random
    int jumps = 2;                    // gkls: jump operators per model
    int grid_points = 200;            // sweep / uncertainty
    std::string counterexample_dir = "counterexamples";
    std::string fixture;      // gkls: "dephasing" or "unitary" instead of random models
    double constant_scale = 1.0;  // verify self-test hook: scales the comparison constant
};

// Self-contained falsification record: re-evaluating the ratio from the
// stored matrices reproduces the achieved value.
struct CounterexampleRecord {
    BoundKind kind = BoundKind::I;
    CMatrix weight;
    CMatrix A, B;
    double achieved = 0.0;
    double constant = 0.0;
    double excess = 0.0;
    std::uint64_t master_seed = 0;
    int restart_index = 0;
    int trial_index = 0;
};

std::string counterexample_to_json(const CounterexampleRecord& r);
CounterexampleRecord counterexample_from_json(const std::string& text);

// Weight input: {"dim": n, "entries": [[re, im], ...]} (row-major n² pairs)
// or {"diag": [λ1, ..., λn]}.
Weight load_weight_file(const std::string& path);

// full round-trip decimal formatting (17 significant digits)
std::string format_g17(double v);

// Exit codes: 0 clean, 1 configuration/IO error, 2 counterexample persisted.
int cmd_verify(const RunConfig& cfg);
int cmd_sweep(const RunConfig& cfg);
int cmd_uncertainty(const RunConfig& cfg);
int cmd_gkls(const RunConfig& cfg);
int cmd_optimize(const RunConfig& cfg);

}  // namespace omegabw
