// omegabw — command-line front end: verification campaigns over random
// weights, the diagonal-family sweep, the qubit uncertainty table, GKLS
// relaxation-rate audits, and single-weight optimization reports.
#include "omegabw/reports.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <string>
#include <vector>

namespace {

using omegabw::RunConfig;

std::vector<omegabw::BoundKind> parse_kinds(const std::string& csv) {
    std::vector<omegabw::BoundKind> kinds;
    std::string token;
    std::stringstream ss(csv);
    while (std::getline(ss, token, ','))
        if (!token.empty()) kinds.push_back(omegabw::bound_kind_from_string(token));
    if (kinds.empty()) throw std::invalid_argument("--kinds: empty list");
    return kinds;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"weighted commutator-norm bounds: verification, sweeps, and quantum audits"};
    app.require_subcommand(1);

    RunConfig cfg;
    std::string kinds_csv;
    std::string format = "csv";

    const auto add_common = [&](CLI::App* sub) {
        sub->add_option("--seed", cfg.seed, "master seed for all randomness");
        sub->add_option("--out", cfg.output_path, "output file (default: stdout)");
        sub->add_option("--format", format, "output format: csv or json")
            ->check(CLI::IsMember({"csv", "json"}));
        sub->add_option("--ce-dir", cfg.counterexample_dir,
                        "directory for counterexample records");
    };
    const auto add_optim = [&](CLI::App* sub) {
        sub->add_option("--kinds", kinds_csv, "comma list of bound kinds (i,ii,iii,iv,v,vi)");
        sub->add_option("--restarts", cfg.restarts, "independent ascent restarts");
        sub->add_option("--tol", cfg.tol, "relative convergence tolerance")
            ->check(CLI::PositiveNumber);
        sub->add_option("--max-iters", cfg.max_iters, "ascent iteration cap");
    };

    CLI::App* verify = app.add_subcommand(
        "verify", "estimate tight constants for random weights and compare to the formulas");
    verify->add_option("--n", cfg.n, "matrix dimension (default: sweep 2..8)");
    verify->add_option("--trials", cfg.trials, "random weights per dimension");
    verify->add_option("--constant-scale", cfg.constant_scale,
                       "scale the comparison constant (falsification-harness self-test)");
    add_optim(verify);
    add_common(verify);

    CLI::App* sweep = app.add_subcommand(
        "sweep", "tight/conjectured/loose constants across the diagonal sin-family");
    sweep->add_option("--n", cfg.n, "must be 5 (the family dimension)");
    sweep->add_option("--grid", cfg.grid_points, "number of grid points in (0,1]");
    add_optim(sweep);
    add_common(sweep);

    CLI::App* uncertainty = app.add_subcommand(
        "uncertainty", "qubit variance bounds for (sigma_x, sigma_y) across the mixture family");
    uncertainty->add_option("--grid", cfg.grid_points, "number of grid points in (0,1]");
    add_common(uncertainty);

    CLI::App* gkls = app.add_subcommand(
        "gkls", "relaxation-rate audit of random GKLS models or a named fixture");
    gkls->add_option("--n", cfg.n, "system dimension (default 2)");
    gkls->add_option("--trials", cfg.trials, "number of random models");
    gkls->add_option("--jumps", cfg.jumps, "jump operators per model");
    gkls->add_option("--fixture", cfg.fixture, "audit a named fixture: dephasing or unitary");
    add_common(gkls);

    CLI::App* optimize = app.add_subcommand(
        "optimize", "full optimization report for a single weight (JSON)");
    optimize->add_option("--weight", cfg.weight_path, "weight JSON file");
    optimize->add_flag("--random", cfg.use_random_weight, "draw a random weight instead");
    optimize->add_option("--n", cfg.n, "dimension for --random");
    add_optim(optimize);
    add_common(optimize);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (!kinds_csv.empty()) cfg.kinds = parse_kinds(kinds_csv);
        cfg.format = (format == "json") ? omegabw::OutputFormat::json
                                        : omegabw::OutputFormat::csv;
    } catch (const std::exception& e) {
        std::cerr << "omegabw: " << e.what() << '\n';
        return 1;
    }

    if (verify->parsed()) {
        cfg.subcommand = "verify";
        return omegabw::cmd_verify(cfg);
    }
    if (sweep->parsed()) {
        cfg.subcommand = "sweep";
        return omegabw::cmd_sweep(cfg);
    }
    if (uncertainty->parsed()) {
        cfg.subcommand = "uncertainty";
        return omegabw::cmd_uncertainty(cfg);
    }
    if (gkls->parsed()) {
        cfg.subcommand = "gkls";
        return omegabw::cmd_gkls(cfg);
    }
    cfg.subcommand = "optimize";
    return omegabw::cmd_optimize(cfg);
}
