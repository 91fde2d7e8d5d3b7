// Command-line front end: load map/cocycle JSON, run the solvers and
// checks, emit CSV/JSON artifacts.  Exit 0 on success, 1 when a
// requested check fails, 2 on malformed input.

#include <cstdlib>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include <CLI11.hpp>
#include <json.hpp>

#include "livsic/acceptance.hpp"
#include "livsic/cohomology.hpp"
#include "livsic/counterexample.hpp"
#include "livsic/io.hpp"
#include "livsic/reachability.hpp"
#include "livsic/transfer_operator.hpp"

namespace {

using nlohmann::json;
using namespace livsic;

void apply_thread_cap() {
#ifdef _OPENMP
    if (const char* env = std::getenv("LIVSIC_THREADS")) {
        const int n = std::atoi(env);
        if (n > 0) omp_set_num_threads(n);
    }
#endif
}

GridFunction sample_fn(const RealFn& f, int n) {
    GridFunction g(n);
    for (int i = 0; i < n; ++i) g.values[i] = f((i + 0.5) / n);
    return g;
}

json smoothness_to_json(const SmoothnessReport& rep) {
    json j;
    j["pass"] = rep.pass;
    j["max_mismatch"] = rep.max_mismatch;
    j["jets"] = json::array();
    for (const JetMismatch& e : rep.entries)
        j["jets"].push_back({{"breakpoint", e.breakpoint},
                             {"order", e.order},
                             {"left", e.left},
                             {"right", e.right},
                             {"mismatch", e.mismatch},
                             {"pass", e.pass},
                             {"one_sided", e.one_sided}});
    return j;
}

int run(int argc, char** argv) {
    CLI::App app{"cohomological-equation toolkit for piecewise expanding maps"};
    app.require_subcommand(1);

    std::string map_path, cocycle_path, out_path, chi_csv_path;
    int n_grid = 4096;
    double tol = 1e-12;
    int m_gen = 6, n_max = 40, n_trunc = 0, order = 1, n_samples = 10000;
    double c_param = 0.125;
    int k_param = 3;
    unsigned seed = 12345;
    double max_residual = -1.0;
    std::vector<double> points;
    bool require_coboundary = false;

    auto add_map = [&](CLI::App* cmd) {
        cmd->add_option("--map", map_path, "map description JSON")->required();
    };
    auto add_grid = [&](CLI::App* cmd) {
        cmd->add_option("--grid", n_grid, "grid size (default 4096)");
        cmd->add_option("--tol", tol, "solver tolerance (default 1e-12)");
    };

    CLI::App* density = app.add_subcommand("density", "invariant density to CSV");
    add_map(density);
    add_grid(density);
    density->add_option("--out", out_path, "output CSV path");

    CLI::App* eigendata =
        app.add_subcommand("eigendata", "leading eigendata of the weighted operator");
    add_map(eigendata);
    add_grid(eigendata);
    eigendata->add_option("--cocycle", cocycle_path, "weight cocycle JSON")
        ->required();
    eigendata->add_option("--out", out_path, "output prefix (JSON + CSV files)");

    CLI::App* solve = app.add_subcommand("solve", "spectral solve of phi = chi o T - chi");
    add_map(solve);
    add_grid(solve);
    solve->add_option("--cocycle", cocycle_path, "cocycle JSON")->required();
    solve->add_option("--out", out_path, "chi CSV path (diagnostics JSON alongside)");
    solve->add_flag("--require-coboundary", require_coboundary,
                    "exit 1 unless |a-1| <= 1e-4");

    CLI::App* series =
        app.add_subcommand("series", "backward-orbit derivative series of chi");
    add_map(series);
    series->add_option("--cocycle", cocycle_path, "cocycle JSON")->required();
    series->add_option("--x", points, "evaluation points")->required();
    series->add_option("--order", order, "derivative order (default 1)");
    series->add_option("--n-trunc", n_trunc, "truncation (default from lambda)");
    series->add_option("--tol", tol, "tail tolerance for default truncation");
    series->add_option("--out", out_path, "output JSON path");

    CLI::App* qpart = app.add_subcommand("qpartition", "reachability partition");
    add_map(qpart);
    qpart->add_option("-m,--generation", m_gen, "cylinder generation (default 6)");
    qpart->add_option("--n-max", n_max, "pullback depth cap (default 40)");
    qpart->add_option("--out", out_path, "output JSON path");

    CLI::App* cex =
        app.add_subcommand("counterexample", "build and certify the jump example");
    cex->add_option("--c", c_param, "branch parameter in (0, 1/4), default 1/8");
    cex->add_option("--k", k_param, "target smoothness (default 3)");
    cex->add_option("--grid", n_grid, "sample count for CSV output");
    cex->add_option("--out", out_path, "output prefix");

    CLI::App* verify = app.add_subcommand("verify", "residual of a proposed chi");
    add_map(verify);
    verify->add_option("--cocycle", cocycle_path, "cocycle JSON")->required();
    verify->add_option("--chi", chi_csv_path, "chi as GridFunction CSV")->required();
    verify->add_option("--samples", n_samples, "sample count (default 10000)");
    verify->add_option("--max-residual", max_residual,
                       "exit 1 if the sup residual exceeds this");
    verify->add_option("--out", out_path, "output JSON path");

    CLI::App* suite = app.add_subcommand("suite", "run the acceptance checks");
    suite->add_option("--seed", seed, "random seed (default 12345)");
    suite->add_option("--out", out_path, "optional JSON report path");

    CLI11_PARSE(app, argc, argv);
    apply_thread_cap();

    if (density->parsed()) {
        const MapDescription map = load_map(map_path);
        const GridFunction h = invariant_density(map, n_grid, Scheme::cell_average, tol);
        if (out_path.empty()) write_grid_csv(h, std::cout);
        else write_grid_csv(h, out_path);
        return 0;
    }

    if (eigendata->parsed()) {
        const MapDescription map = load_map(map_path);
        const auto phi = load_cocycle(cocycle_path, &map);
        const SpectralData sd = spectral_data(map, *phi, n_grid, Scheme::cell_average, tol);
        json j;
        j["a"] = sd.a;
        j["gamma_floor"] = sd.gamma_floor;
        j["n_grid"] = n_grid;
        std::cout << j.dump(2) << '\n';
        if (!out_path.empty()) {
            write_text(out_path + ".json", j.dump(2));
            write_grid_csv(sd.w, out_path + "_w.csv");
            write_grid_csv(sd.h, out_path + "_h.csv");
            GridFunction nu(n_grid);
            nu.values = sd.nu;
            write_grid_csv(nu, out_path + "_nu.csv");
        }
        return 0;
    }

    if (solve->parsed()) {
        const MapDescription map = load_map(map_path);
        const auto phi = load_cocycle(cocycle_path, &map);
        const CocycleSolution sol = solve_spectral(map, *phi, n_grid, Scheme::cell_average, tol);
        std::cout << solution_diagnostics_json(sol) << '\n';
        if (!out_path.empty()) {
            write_grid_csv(sol.chi, out_path);
            write_text(out_path + ".json", solution_diagnostics_json(sol));
        }
        return (require_coboundary && !sol.coboundary) ? 1 : 0;
    }

    if (series->parsed()) {
        const MapDescription map = load_map(map_path);
        const auto phi = load_cocycle(cocycle_path, &map);
        if (n_trunc <= 0) n_trunc = default_truncation(map.lambda, tol);
        json out = json::array();
        for (double x : points) {
            const SeriesResult r =
                (order == 1) ? chi_derivative_series(map, *phi, x, n_trunc)
                             : chi_higher_derivative(map, *phi, x, order, n_trunc);
            out.push_back({{"x", x},
                           {"order", order},
                           {"value", r.value},
                           {"tail_bound", r.tail_bound},
                           {"terms", r.terms}});
        }
        std::cout << out.dump(2) << '\n';
        if (!out_path.empty()) write_text(out_path, out.dump(2));
        return 0;
    }

    if (qpart->parsed()) {
        const MapDescription map = load_map(map_path);
        const QPartition q = q_partition(map, m_gen, n_max);
        std::cout << qpartition_to_json(q) << '\n';
        if (!out_path.empty()) write_text(out_path, qpartition_to_json(q));
        return 0;
    }

    if (cex->parsed()) {
        CounterexampleSpec spec;
        spec.c = c_param;
        spec.k = k_param;
        const CounterexampleBuild b = build_counterexample(spec);
        const auto chi_fn = [&b](double x) { return (*b.chi)(x); };
        const auto phi_fn = [&b](double x) { return (*b.phi)(x); };

        const ResidualReport res = verify_cocycle(b.map, *b.phi, chi_fn, 10000);
        const SmoothnessReport phi_rep =
            certify_smoothness(phi_fn, b.partition, spec.k);
        const SmoothnessReport chi_rep =
            certify_smoothness(chi_fn, b.partition, 0);

        json j;
        j["c"] = spec.c;
        j["k"] = spec.k;
        j["partition"] = b.partition;
        j["residual_sup"] = res.sup;
        j["phi_smoothness"] = smoothness_to_json(phi_rep);
        j["chi_jets_order0"] = smoothness_to_json(chi_rep);
        const bool ok = res.sup <= 1e-12 && phi_rep.pass;
        j["pass"] = ok;
        std::cout << j.dump(2) << '\n';
        if (!out_path.empty()) {
            write_text(out_path + ".json", j.dump(2));
            write_text(out_path + "_map.json", map_to_json(b.map));
            write_grid_csv(sample_fn(chi_fn, n_grid), out_path + "_chi.csv");
            write_grid_csv(sample_fn(phi_fn, n_grid), out_path + "_phi.csv");
            write_grid_csv(sample_fn([&](double x) { return b.map(x); }, n_grid),
                           out_path + "_T.csv");
            write_grid_csv(sample_fn([&](double x) { return chi_fn(b.map(x)); },
                                     n_grid),
                           out_path + "_chi_T.csv");
        }
        return ok ? 0 : 1;
    }

    if (verify->parsed()) {
        const MapDescription map = load_map(map_path);
        const auto phi = load_cocycle(cocycle_path, &map);
        const GridFunction chi = read_grid_csv(chi_csv_path);
        const ResidualReport rep = verify_cocycle(
            map, *phi, [&chi](double x) { return chi(x); }, n_samples);
        json j;
        j["residual_sup"] = rep.sup;
        j["residual_l1"] = rep.l1;
        j["n_used"] = rep.n_used;
        std::cout << j.dump(2) << '\n';
        if (!out_path.empty()) write_text(out_path, j.dump(2));
        return (max_residual >= 0.0 && rep.sup > max_residual) ? 1 : 0;
    }

    if (suite->parsed()) {
        const auto results = run_acceptance(seed);
        std::cout << format_acceptance(results);
        bool all = true;
        json j = json::array();
        for (const auto& r : results) {
            all = all && r.pass;
            j.push_back({{"name", r.name},
                         {"pass", r.pass},
                         {"detail", r.detail},
                         {"seconds", r.seconds}});
        }
        if (!out_path.empty()) write_text(out_path, j.dump(2));
        return all ? 0 : 1;
    }

    return 2;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const livsic::InputError& e) {
        std::cerr << "input error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
