#include "omegabw/reports.hpp"

#include "omegabw/ensembles.hpp"
#include "omegabw/threading.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace omegabw {

namespace {

using ordered_json = nlohmann::ordered_json;

constexpr double kCounterexampleSlack = 1e-8;  // relative excess that flags a violation

ordered_json matrix_to_json(const CMatrix& M) {
    ordered_json j;
    j["dim"] = M.rows();
    ordered_json entries = ordered_json::array();
    for (Eigen::Index i = 0; i < M.rows(); ++i)
        for (Eigen::Index c = 0; c < M.cols(); ++c)
            entries.push_back({M(i, c).real(), M(i, c).imag()});
    j["entries"] = std::move(entries);
    return j;
}

CMatrix matrix_from_json(const ordered_json& j) {
    const auto n = j.at("dim").get<Eigen::Index>();
    const auto& entries = j.at("entries");
    if (n < 1 || static_cast<Eigen::Index>(entries.size()) != n * n)
        throw std::invalid_argument("matrix: expected dim and n^2 [re, im] entry pairs");
    CMatrix M(n, n);
    Eigen::Index pos = 0;
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index c = 0; c < n; ++c) {
            const auto& e = entries.at(static_cast<std::size_t>(pos++));
            M(i, c) = Complex(e.at(0).get<double>(), e.at(1).get<double>());
        }
    return M;
}

// ----------------------------- table emission ------------------------------

struct Table {
    std::vector<std::string> header;
    std::vector<ordered_json> rows;  // objects keyed by header entries
};

std::string render_cell(const ordered_json& v) {
    if (v.is_number_float()) return format_g17(v.get<double>());
    if (v.is_boolean()) return v.get<bool>() ? "1" : "0";
    if (v.is_number_integer()) return std::to_string(v.get<long long>());
    if (v.is_string()) return v.get<std::string>();
    return v.dump();
}

void write_table(std::ostream& os, const Table& t, OutputFormat format,
                 const std::string& subcommand) {
    if (format == OutputFormat::csv) {
        for (std::size_t i = 0; i < t.header.size(); ++i)
            os << (i ? "," : "") << t.header[i];
        os << '\n';
        for (const ordered_json& row : t.rows) {
            for (std::size_t i = 0; i < t.header.size(); ++i)
                os << (i ? "," : "") << render_cell(row.at(t.header[i]));
            os << '\n';
        }
    } else {
        ordered_json doc;
        doc["schema_version"] = "1";
        doc["subcommand"] = subcommand;
        doc["rows"] = t.rows;
        os << doc.dump(2) << '\n';
    }
}

// writes to cfg.output_path or stdout; IO failures surface as runtime_error
void emit(const RunConfig& cfg, const Table& t) {
    if (cfg.output_path.empty()) {
        write_table(std::cout, t, cfg.format, cfg.subcommand);
        std::cout.flush();
        return;
    }
    std::ofstream os(cfg.output_path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open output path: " + cfg.output_path);
    write_table(os, t, cfg.format, cfg.subcommand);
    os.flush();
    if (!os) throw std::runtime_error("failed writing output path: " + cfg.output_path);
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open " + path.string());
    os << text;
    if (!os) throw std::runtime_error("failed writing " + path.string());
}

// never overwrites: appends _1, _2, ... when the name is taken
std::filesystem::path fresh_path(const std::filesystem::path& dir, const std::string& stem) {
    std::filesystem::path p = dir / (stem + ".json");
    for (int k = 1; std::filesystem::exists(p); ++k)
        p = dir / (stem + "_" + std::to_string(k) + ".json");
    return p;
}

void persist_counterexamples(const RunConfig& cfg,
                             const std::vector<CounterexampleRecord>& records) {
    if (records.empty()) return;
    const std::filesystem::path dir(cfg.counterexample_dir);
    std::filesystem::create_directories(dir);
    for (const CounterexampleRecord& r : records) {
        const std::string stem = "ce_" + to_string(r.kind) + "_seed" +
                                 std::to_string(r.master_seed) + "_trial" +
                                 std::to_string(r.trial_index);
        const std::filesystem::path p = fresh_path(dir, stem);
        write_text_file(p, counterexample_to_json(r));
        std::cerr << "counterexample persisted: " << p.string() << '\n';
    }
}

int fail_usage(const std::string& subcommand, const std::string& message) {
    std::cerr << subcommand << ": " << message << '\n';
    return 1;
}

std::vector<BoundKind> kinds_or_default(const RunConfig& cfg,
                                        const std::vector<BoundKind>& fallback) {
    return cfg.kinds.empty() ? fallback : cfg.kinds;
}

std::vector<BoundKind> all_kinds_vector() {
    const auto all = all_bound_kinds();
    return {all.begin(), all.end()};
}

void rethrow_first_error(const std::vector<std::string>& errors) {
    for (const std::string& e : errors)
        if (!e.empty()) throw std::runtime_error(e);
}

// ------------------------------- fixtures ----------------------------------

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

GKLSModel dephasing_fixture(double gamma) {
    return GKLSModel::make(CMatrix::Zero(2, 2),
                           {{pauli_z() / std::numbers::sqrt2, gamma}});
}

GKLSModel unitary_fixture() { return GKLSModel::make(pauli_z(), {}); }

double bisect(const std::function<double(double)>& f, double lo, double hi) {
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
}

}  // namespace

std::string format_g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string counterexample_to_json(const CounterexampleRecord& r) {
    ordered_json j;
    j["schema_version"] = "1";
    j["kind"] = to_string(r.kind);
    j["weight"] = matrix_to_json(r.weight);
    j["A"] = matrix_to_json(r.A);
    j["B"] = matrix_to_json(r.B);
    j["achieved"] = r.achieved;
    j["constant"] = r.constant;
    j["excess"] = r.excess;
    j["provenance"] = {{"master_seed", r.master_seed},
                       {"restart_index", r.restart_index},
                       {"trial_index", r.trial_index}};
    return j.dump(2) + "\n";
}

CounterexampleRecord counterexample_from_json(const std::string& text) {
    const ordered_json j = ordered_json::parse(text);
    CounterexampleRecord r;
    r.kind = bound_kind_from_string(j.at("kind").get<std::string>());
    r.weight = matrix_from_json(j.at("weight"));
    r.A = matrix_from_json(j.at("A"));
    r.B = matrix_from_json(j.at("B"));
    r.achieved = j.at("achieved").get<double>();
    r.constant = j.at("constant").get<double>();
    r.excess = j.at("excess").get<double>();
    const auto& p = j.at("provenance");
    r.master_seed = p.at("master_seed").get<std::uint64_t>();
    r.restart_index = p.at("restart_index").get<int>();
    r.trial_index = p.at("trial_index").get<int>();
    return r;
}

Weight load_weight_file(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("cannot open weight file: " + path);
    ordered_json j;
    try {
        is >> j;
    } catch (const ordered_json::parse_error& e) {
        throw std::runtime_error("weight file parse error in " + path + ": " + e.what());
    }
    if (j.contains("diag")) {
        const auto diag = j.at("diag").get<std::vector<double>>();
        return Weight::diagonal(diag);
    }
    return Weight::from_matrix(matrix_from_json(j));
}

// ------------------------------- verify ------------------------------------

int cmd_verify(const RunConfig& cfg) {
    try {
        if (cfg.trials < 1) return fail_usage("verify", "--trials must be >= 1");
        if (cfg.restarts < 1) return fail_usage("verify", "--restarts must be >= 1");
        const std::vector<BoundKind> kinds =
            kinds_or_default(cfg, all_kinds_vector());
        std::vector<int> dims;
        if (cfg.n > 0) {
            if (cfg.n < 2) return fail_usage("verify", "--n must be >= 2");
            dims.push_back(cfg.n);
        } else {
            for (int n = 2; n <= 8; ++n) dims.push_back(n);
        }

        struct Item {
            int n, trial;
        };
        std::vector<Item> items;
        for (const int n : dims)
            for (int t = 0; t < cfg.trials; ++t) items.push_back({n, t});

        const auto total = static_cast<int>(items.size());
        std::vector<std::vector<ordered_json>> rows(items.size());
        std::vector<std::vector<CounterexampleRecord>> records(items.size());
        std::vector<std::string> errors(items.size());

#pragma omp parallel for num_threads(worker_threads()) schedule(dynamic)
        for (int idx = 0; idx < total; ++idx) {
            try {
                const auto [n, trial] = items[static_cast<std::size_t>(idx)];
                const std::uint64_t weight_salt =
                    1000000ULL * static_cast<std::uint64_t>(n) + static_cast<std::uint64_t>(trial);
                SeededStream wstream(derive_seed(cfg.seed, weight_salt), 0);
                const Weight w = random_weight(n, wstream);
                for (const BoundKind kind : kinds) {
                    const std::uint64_t run_salt =
                        8ULL * weight_salt + static_cast<std::uint64_t>(kind);
                    const RatioResult est =
                        global_estimate(kind, w, cfg.restarts, derive_seed(cfg.seed, run_salt),
                                        cfg.max_iters, cfg.tol);
                    const TightConstant tc = tight_constant(kind, w);
                    const double constant = tc.value * cfg.constant_scale;
                    ordered_json row;
                    row["trial"] = trial;
                    row["kind"] = to_string(kind);
                    row["n"] = n;
                    row["estimate"] = est.value;
                    row["constant"] = constant;
                    row["gap"] = est.value - constant;
                    row["converged"] = est.converged;
                    rows[static_cast<std::size_t>(idx)].push_back(std::move(row));
                    if (tc.status == BoundStatus::conjectured &&
                        est.value > constant * (1.0 + kCounterexampleSlack)) {
                        records[static_cast<std::size_t>(idx)].push_back(
                            {kind, w.matrix(), est.A, est.B, est.value, constant,
                             est.value - constant, cfg.seed, est.restart_index, trial});
                    }
                }
            } catch (const std::exception& e) {
                errors[static_cast<std::size_t>(idx)] = e.what();
            }
        }
        rethrow_first_error(errors);

        Table t;
        t.header = {"trial", "kind", "n", "estimate", "constant", "gap", "converged"};
        std::vector<CounterexampleRecord> all_records;
        for (std::size_t i = 0; i < items.size(); ++i) {
            for (ordered_json& r : rows[i]) t.rows.push_back(std::move(r));
            for (CounterexampleRecord& r : records[i]) all_records.push_back(std::move(r));
        }
        emit(cfg, t);
        persist_counterexamples(cfg, all_records);
        return all_records.empty() ? 0 : 2;
    } catch (const std::exception& e) {
        std::cerr << "verify: " << e.what() << '\n';
        return 1;
    }
}

// -------------------------------- sweep -------------------------------------

int cmd_sweep(const RunConfig& cfg) {
    try {
        if (cfg.grid_points < 1) return fail_usage("sweep", "--grid must be >= 1");
        if (cfg.n != 0 && cfg.n != 5)
            return fail_usage("sweep", "the sweep family is 5x5; omit --n or pass --n 5");
        const std::vector<BoundKind> kinds = kinds_or_default(
            cfg, {BoundKind::I, BoundKind::II, BoundKind::III, BoundKind::IV, BoundKind::V});
        for (const BoundKind k : kinds)
            if (k == BoundKind::VI)
                return fail_usage("sweep", "kind vi has no loose constant; use kinds i..v");

        const int grid = cfg.grid_points;
        std::vector<std::vector<ordered_json>> rows(static_cast<std::size_t>(grid));
        std::vector<std::string> errors(static_cast<std::size_t>(grid));

#pragma omp parallel for num_threads(worker_threads()) schedule(dynamic)
        for (int k = 0; k < grid; ++k) {
            try {
                const double p = static_cast<double>(k + 1) / static_cast<double>(grid);
                const Weight w = omega_sweep(p);
                for (const BoundKind kind : kinds) {
                    const std::uint64_t salt =
                        8ULL * static_cast<std::uint64_t>(k) + static_cast<std::uint64_t>(kind);
                    const RatioResult est =
                        global_estimate(kind, w, cfg.restarts, derive_seed(cfg.seed, salt),
                                        cfg.max_iters, cfg.tol);
                    ordered_json row;
                    row["p"] = p;
                    row["kind"] = to_string(kind);
                    row["estimate"] = est.value;
                    row["constant"] = tight_constant(kind, w).value;
                    row["loose"] = loose_constant(kind, w);
                    rows[static_cast<std::size_t>(k)].push_back(std::move(row));
                }
            } catch (const std::exception& e) {
                errors[static_cast<std::size_t>(k)] = e.what();
            }
        }
        rethrow_first_error(errors);

        Table t;
        t.header = {"p", "kind", "estimate", "constant", "loose"};
        for (auto& point_rows : rows)
            for (ordered_json& r : point_rows) t.rows.push_back(std::move(r));
        emit(cfg, t);
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "sweep: " << e.what() << '\n';
        return 1;
    }
}

// ----------------------------- uncertainty ----------------------------------

int cmd_uncertainty(const RunConfig& cfg) {
    try {
        if (cfg.grid_points < 1) return fail_usage("uncertainty", "--grid must be >= 1");
        const CMatrix sx = pauli_x();
        const CMatrix sy = pauli_y();

        const auto robertson = [&](double p) {
            return robertson_bound(sx, sy, qubit_mixture(p));
        };
        const auto conjectured = [&](double p) {
            return new_uncertainty_bound(sx, sy, qubit_mixture(p));
        };
        const auto loose = [&](double p) {
            return loose_uncertainty_bound(sx, sy, qubit_mixture(p));
        };
        const auto var_product = [&](double p) {
            const DensityMatrix rho = qubit_mixture(p);
            return variance(sx, rho) * variance(sy, rho);
        };

        const auto make_row = [&](const std::string& tag, double p) {
            ordered_json row;
            row["row"] = tag;
            row["p"] = p;
            row["robertson"] = robertson(p);
            row["new"] = conjectured(p);
            row["loose"] = loose(p);
            row["variance_product"] = var_product(p);
            return row;
        };

        Table t;
        t.header = {"row", "p", "robertson", "new", "loose", "variance_product"};
        for (int k = 0; k < cfg.grid_points; ++k) {
            const double p = static_cast<double>(k + 1) / static_cast<double>(cfg.grid_points);
            t.rows.push_back(make_row("grid", p));
        }
        const double c_new =
            bisect([&](double p) { return robertson(p) - conjectured(p); }, 1e-9, 1.0);
        const double c_loose =
            bisect([&](double p) { return robertson(p) - loose(p); }, 1e-9, 1.0);
        t.rows.push_back(make_row("crossing_robertson_new", c_new));
        t.rows.push_back(make_row("crossing_robertson_loose", c_loose));
        emit(cfg, t);
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "uncertainty: " << e.what() << '\n';
        return 1;
    }
}

// --------------------------------- gkls -------------------------------------

namespace {

ordered_json gkls_model_to_json(const GKLSModel& m) {
    ordered_json j;
    j["dim"] = m.dim;
    j["hamiltonian"] = matrix_to_json(m.hamiltonian);
    ordered_json jumps = ordered_json::array();
    for (const Jump& jump : m.jumps)
        jumps.push_back({{"op", matrix_to_json(jump.op)}, {"rate", jump.rate}});
    j["jumps"] = std::move(jumps);
    return j;
}

}  // namespace

int cmd_gkls(const RunConfig& cfg) {
    try {
        if (cfg.trials < 1) return fail_usage("gkls", "--trials must be >= 1");
        if (cfg.jumps < 1) return fail_usage("gkls", "--jumps must be >= 1");
        const int n = cfg.n > 0 ? cfg.n : 2;
        if (n < 2) return fail_usage("gkls", "--n must be >= 2");

        std::optional<GKLSModel> fixture;
        if (cfg.fixture == "dephasing") {
            fixture = dephasing_fixture(1.0);
        } else if (cfg.fixture == "unitary") {
            fixture = unitary_fixture();
        } else if (!cfg.fixture.empty()) {
            return fail_usage("gkls", "unknown fixture '" + cfg.fixture +
                                          "' (expected dephasing or unitary)");
        }
        const int trials = fixture ? 1 : cfg.trials;

        std::vector<std::optional<ordered_json>> rows(static_cast<std::size_t>(trials));
        std::vector<std::string> skips(static_cast<std::size_t>(trials));
        std::vector<std::string> errors(static_cast<std::size_t>(trials));
        std::vector<std::optional<ordered_json>> violations(static_cast<std::size_t>(trials));

#pragma omp parallel for num_threads(worker_threads()) schedule(dynamic)
        for (int trial = 0; trial < trials; ++trial) {
            const auto idx = static_cast<std::size_t>(trial);
            try {
                SeededStream stream(cfg.seed, static_cast<std::uint64_t>(trial));
                const GKLSModel model =
                    fixture ? *fixture : random_gkls(n, cfg.jumps, stream);
                std::optional<RateSpectrum> spectrum;
                try {
                    spectrum = rate_spectrum(model);
                } catch (const std::exception& e) {
                    skips[idx] = e.what();
                    continue;
                }
                const double residual = rate_formula_residual(model, *spectrum);
                const SumRule sum = sum_rule_check(model, *spectrum);
                const RateConstraint constraint = rate_constraint_check(model, *spectrum);
                ordered_json row;
                row["trial"] = trial;
                row["max_rate"] = constraint.max_rate;
                row["bound"] = constraint.bound;
                row["rate_formula_residual"] = residual;
                row["sum_rule_gap"] = std::abs(sum.lhs - sum.rhs);
                row["satisfied"] = constraint.satisfied;
                rows[idx] = std::move(row);
                if (!constraint.satisfied) {
                    ordered_json v;
                    v["schema_version"] = "1";
                    v["type"] = "gkls_rate_constraint";
                    v["trial"] = trial;
                    v["seed"] = cfg.seed;
                    v["max_rate"] = constraint.max_rate;
                    v["bound"] = constraint.bound;
                    v["rates"] = spectrum->rates;
                    v["model"] = gkls_model_to_json(model);
                    violations[idx] = std::move(v);
                }
            } catch (const std::exception& e) {
                errors[idx] = e.what();
            }
        }
        rethrow_first_error(errors);

        Table t;
        t.header = {"trial", "max_rate", "bound", "rate_formula_residual", "sum_rule_gap",
                    "satisfied"};
        for (auto& row : rows)
            if (row) t.rows.push_back(std::move(*row));
        for (std::size_t i = 0; i < skips.size(); ++i)
            if (!skips[i].empty())
                std::cerr << "gkls: trial " << i << " skipped: " << skips[i] << '\n';
        emit(cfg, t);

        bool any_violation = false;
        for (std::size_t i = 0; i < violations.size(); ++i) {
            if (!violations[i]) continue;
            any_violation = true;
            const std::filesystem::path dir(cfg.counterexample_dir);
            std::filesystem::create_directories(dir);
            const std::string stem = "ce_gkls_seed" + std::to_string(cfg.seed) + "_trial" +
                                     std::to_string(i);
            const std::filesystem::path p = fresh_path(dir, stem);
            write_text_file(p, violations[i]->dump(2) + "\n");
            std::cerr << "rate-constraint violation persisted: " << p.string() << '\n';
        }
        return any_violation ? 2 : 0;
    } catch (const std::exception& e) {
        std::cerr << "gkls: " << e.what() << '\n';
        return 1;
    }
}

// -------------------------------- optimize ----------------------------------

int cmd_optimize(const RunConfig& cfg) {
    try {
        if (cfg.restarts < 1) return fail_usage("optimize", "--restarts must be >= 1");
        std::optional<Weight> w;
        if (!cfg.weight_path.empty()) {
            w = load_weight_file(cfg.weight_path);
        } else if (cfg.use_random_weight) {
            if (cfg.n < 2) return fail_usage("optimize", "--random requires --n >= 2");
            SeededStream stream(cfg.seed, 0);
            w = random_weight(cfg.n, stream);
        } else {
            return fail_usage("optimize", "provide --weight FILE or --random");
        }
        const std::vector<BoundKind> kinds =
            kinds_or_default(cfg, all_kinds_vector());

        ordered_json doc;
        doc["schema_version"] = "1";
        doc["subcommand"] = "optimize";
        doc["dim"] = w->dim();
        doc["seed"] = cfg.seed;
        doc["restarts"] = cfg.restarts;
        doc["weight"] = matrix_to_json(w->matrix());
        ordered_json results = ordered_json::array();
        for (const BoundKind kind : kinds) {
            const std::uint64_t salt = static_cast<std::uint64_t>(kind);
            const RatioResult est = global_estimate(kind, *w, cfg.restarts,
                                                    derive_seed(cfg.seed, salt), cfg.max_iters,
                                                    cfg.tol);
            const TightConstant tc = tight_constant(kind, *w);
            ordered_json r;
            r["kind"] = to_string(kind);
            r["estimate"] = est.value;
            r["constant"] = tc.value;
            r["status"] = tc.status == BoundStatus::proven ? "proven" : "conjectured";
            r["converged"] = est.converged;
            r["iterations"] = est.iterations;
            r["restart_index"] = est.restart_index;
            r["counterexample_candidate"] = est.counterexample_candidate;
            r["witness"] = {{"A", matrix_to_json(est.A)}, {"B", matrix_to_json(est.B)}};
            r["trace"] = est.trace;
            results.push_back(std::move(r));
        }
        doc["results"] = std::move(results);

        if (cfg.output_path.empty()) {
            std::cout << doc.dump(2) << '\n';
        } else {
            std::ofstream os(cfg.output_path, std::ios::binary);
            if (!os) throw std::runtime_error("cannot open output path: " + cfg.output_path);
            os << doc.dump(2) << '\n';
            if (!os) throw std::runtime_error("failed writing " + cfg.output_path);
        }
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "optimize: " << e.what() << '\n';
        return 1;
    }
}

}  // namespace omegabw
