// Command-line driver: run | verify | continuation | mms | report.
// Exit codes: 0 ok, 2 config, 3 solver failure, 4 invariant failure, 5 I/O.

#include "radflow/config.hpp"
#include "radflow/continuation.hpp"
#include "radflow/functionals.hpp"
#include "radflow/io.hpp"
#include "radflow/manufactured.hpp"
#include "radflow/orlicz.hpp"
#include "radflow/solver.hpp"
#include "radflow/initial_data.hpp"
#include "radflow/verification.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <random>

namespace fs = std::filesystem;
using namespace radflow;

namespace {

struct CliOptions {
    std::string config_path;
    std::string out_dir;
    std::size_t threads = 0;   // 0: take from config
    std::uint64_t seed = 0;    // 0: take from config
};

fs::path resolve_out_dir(const CliOptions& cli, const ExperimentConfig& cfg) {
    if (!cli.out_dir.empty()) return cli.out_dir;
    if (!cfg.out_dir.empty()) return cfg.out_dir;
    if (const char* env = std::getenv("RADFLOW_OUT")) return env;
    return "out";
}

double elapsed_since(const std::chrono::steady_clock::time_point& t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

int cmd_run(const CliOptions& cli) {
    const auto t0 = std::chrono::steady_clock::now();
    const ExperimentConfig cfg = parse_config(cli.config_path);
    const fs::path out = resolve_out_dir(cli, cfg);
    fs::create_directories(out);

    const RadialGrid grid = cfg.make_grid();
    const FlowState initial = cfg.make_initial_state(grid);
    const Forcing forcing = cfg.make_forcing();
    const EstimateReport data_report = validate_initial_data(
        initial.rho, initial.u, initial.theta, cfg.make_initial_spec(), grid, cfg.params.K);
    const Trajectory traj = run(grid, initial, cfg.params, forcing, cfg.solver);

    RunManifest manifest;
    manifest.subcommand = "run";
    manifest.config_echo = cfg.echo;
    manifest.input_hash = fnv1a64_hex(read_text_file(cli.config_path));
    manifest.params = cfg.params;
    manifest.grid_eps = grid.eps();
    manifest.grid_R = grid.outer();
    manifest.grid_n = grid.size();
    manifest.steps = traj.diagnostics.total_steps;
    manifest.floor_rho = traj.diagnostics.floor_rho_hits;
    manifest.floor_theta = traj.diagnostics.floor_theta_hits;
    manifest.cfl_limited = traj.diagnostics.cfl_limited_steps;
    manifest.vacuum_contaminated = traj.diagnostics.vacuum_contaminated();

    for (const std::string& name : write_trajectory(out, traj))
        manifest.add_file(out, name);
    write_text_file(out / "initial_data_report.json", data_report.to_json() + "\n");
    manifest.add_file(out, "initial_data_report.json");
    if (!forcing.is_zero()) {
        Samples t, l2, sup;
        for (const FlowState& s : traj.states) {
            const ForcingNorms fn = forcing_norms(forcing, grid, s.t);
            t.push_back(s.t);
            l2.push_back(fn.l2);
            sup.push_back(fn.sup);
        }
        write_series_csv(out / "forcing_l2.csv", t, l2, "forcing_l2");
        write_series_csv(out / "forcing_sup.csv", t, sup, "forcing_sup");
        manifest.add_file(out, "forcing_l2.csv");
        manifest.add_file(out, "forcing_sup.csv");
    }
    manifest.wall_time_seconds = elapsed_since(t0);
    write_manifest(out, manifest);
    std::cout << "run complete: " << traj.states.size() << " snapshots, "
              << traj.diagnostics.total_steps << " steps -> " << out.string() << "\n";
    if (manifest.vacuum_contaminated)
        std::cout << "note: positivity floors were hit; run flagged vacuum-contaminated\n";
    return 0;
}

int cmd_report(const CliOptions& cli) {
    const ExperimentConfig cfg = parse_config(cli.config_path);
    const std::string run_dir = cfg.run_dir.empty() ? resolve_out_dir(cli, cfg).string()
                                                    : cfg.run_dir;
    const Trajectory traj = load_trajectory(run_dir);
    const fs::path out = resolve_out_dir(cli, cfg);
    fs::create_directories(out);

    Samples t, mass, energy, entropy, dissipation;
    for (const FlowState& s : traj.states) {
        t.push_back(s.t);
        mass.push_back(total_mass(s, traj.grid));
        energy.push_back(total_energy(s, traj.grid));
        entropy.push_back(total_entropy(s, traj.grid, traj.params.K));
        dissipation.push_back(entropy_dissipation(s, traj.grid, traj.params));
    }
    RunManifest manifest;
    manifest.subcommand = "report";
    manifest.params = traj.params;
    manifest.grid_eps = traj.grid.eps();
    manifest.grid_R = traj.grid.outer();
    manifest.grid_n = traj.grid.size();
    manifest.input_hash = fnv1a64_hex(read_text_file(cli.config_path));

    write_series_csv(out / "mass.csv", t, mass, "mass");
    write_series_csv(out / "energy.csv", t, energy, "energy");
    write_series_csv(out / "entropy.csv", t, entropy, "entropy");
    write_series_csv(out / "dissipation.csv", t, dissipation, "dissipation");
    write_svg_lines(out / "functionals.svg", "functional time series",
                    {{"mass", t, mass},
                     {"energy", t, energy},
                     {"entropy", t, entropy},
                     {"dissipation", t, dissipation}});
    for (const char* name :
         {"mass.csv", "energy.csv", "entropy.csv", "dissipation.csv", "functionals.svg"})
        manifest.add_file(out, name);
    write_manifest(out, manifest, "report_manifest.json");
    std::cout << "report written to " << out.string() << "\n";
    return 0;
}

int cmd_verify(const CliOptions& cli) {
    const ExperimentConfig cfg = parse_config(cli.config_path);
    const std::string run_dir = cfg.run_dir.empty() ? resolve_out_dir(cli, cfg).string()
                                                    : cfg.run_dir;
    const Trajectory traj = load_trajectory(run_dir);
    const RunManifest run_manifest = load_manifest(run_dir);
    const std::uint64_t seed = cli.seed ? cli.seed : cfg.seed;

    Forcing forcing;
    {
        const auto& echo = run_manifest.config_echo;
        const auto it_name = echo.find("forcing.name");
        const auto it_amp = echo.find("forcing.amp");
        const std::string name = it_name == echo.end() ? cfg.forcing_name : it_name->second;
        const double amp = it_amp == echo.end() ? cfg.forcing_amp : std::stod(it_amp->second);
        forcing = make_named_forcing(name, amp, traj.grid.outer());
    }

    auto wants = [&](const std::string& c) {
        return cfg.checks == "all" || cfg.checks.find(c) != std::string::npos;
    };
    std::vector<EstimateReport> reports;
    if (wants("global")) {
        GlobalEstimateTols tols;
        tols.q = cfg.verify_q;
        tols.entropy_rate = cfg.verify_entropy_rate;
        reports.push_back(check_global_estimates(traj, traj.params, forcing, tols));
    }
    if (wants("pointwise")) {
        const double m0 = total_mass(traj.initial(), traj.grid);
        reports.push_back(check_pointwise_bounds(traj, cfg.verify_h_mass * m0));
    }
    if (wants("budget"))
        reports.push_back(energy_budget(traj, forcing));
    if (wants("embedding"))
        reports.push_back(log_embedding_check(traj, cfg.verify_q));
    if (wants("uniform")) {
        std::mt19937_64 rng(seed);
        std::uniform_real_distribution<double> pick(cfg.verify_b, traj.grid.outer());
        EstimateReport merged;
        merged.title = "uniform integrability (20 seeded regions)";
        for (int trial = 0; trial < 20; ++trial) {
            double a = pick(rng), b = pick(rng);
            if (a > b) std::swap(a, b);
            RegionFn region = [&traj, a, b](std::size_t) {
                std::vector<bool> mask(traj.grid.size(), false);
                for (std::size_t i = 0; i < traj.grid.size(); ++i)
                    mask[i] = traj.grid.node(i) >= a && traj.grid.node(i) <= b;
                return mask;
            };
            EstimateReport r = uniform_integrability(traj, region, cfg.verify_b);
            for (auto& e : r.entries) {
                e.name += " [region " + std::to_string(trial) + "]";
                merged.add(e);
            }
        }
        reports.push_back(std::move(merged));
    }
    if (wants("weak")) {
        EstimateReport weak;
        weak.title = "weak-form residuals (reported)";
        for (const TestFunction& tf : shipped_test_functions(traj.grid.eps(), traj.grid.outer())) {
            const double rm = weak_residual_mass(traj, tf);
            weak.add({"mass residual / " + tf.name, rm,
                      std::numeric_limits<double>::infinity(), 0.0, std::isfinite(rm), false,
                      "refinement-vanishing diagnostic"});
            if (tf.vanishes_inner && tf.vanishes_outer) {
                const double r = weak_residual_momentum(traj, traj.params, forcing, tf).total();
                weak.add({"momentum residual / " + tf.name, r,
                          std::numeric_limits<double>::infinity(), 0.0, std::isfinite(r),
                          false, "refinement-vanishing diagnostic"});
            }
            if (tf.support_min >= traj.grid.eps() + cfg.verify_eta) {
                const double r =
                    weak_residual_energy(traj, traj.params, forcing, tf, cfg.verify_eta);
                weak.add({"energy residual / " + tf.name, r,
                          std::numeric_limits<double>::infinity(), 0.0, std::isfinite(r),
                          false, "refinement-vanishing diagnostic"});
            }
        }
        reports.push_back(std::move(weak));
    }
    if (wants("korn")) {
        EstimateReport korn;
        korn.title = "generalized Korn-Poincare ratio (seeded fields)";
        std::mt19937_64 rng(seed + 1);
        std::uniform_real_distribution<double> amp(-1.0, 1.0);
        double worst = 0.0;
        for (int trial = 0; trial < 200; ++trial) {
            Samples v(traj.grid.size()), rho(traj.grid.size());
            const double a1 = amp(rng), a2 = amp(rng), a3 = std::abs(amp(rng)) + 0.25;
            for (std::size_t i = 0; i < traj.grid.size(); ++i) {
                const double x = (traj.grid.node(i) - traj.grid.eps()) /
                                 (traj.grid.outer() - traj.grid.eps());
                v[i] = a1 + a2 * std::sin(3.0 * M_PI * x);
                rho[i] = a3 * (1.0 + 0.5 * std::cos(2.0 * M_PI * x));
            }
            worst = std::max(worst, korn_poincare_ratio(v, rho, traj.grid));
        }
        korn.add({"max observed ratio", worst, std::numeric_limits<double>::infinity(), 0.0,
                  std::isfinite(worst), false, "empirical constant"});
        reports.push_back(std::move(korn));
    }

    const fs::path out = resolve_out_dir(cli, cfg);
    fs::create_directories(out);
    EstimateReport combined;
    combined.title = "verification of " + run_dir;
    for (const auto& r : reports)
        for (const auto& e : r.entries)
            combined.add(e);
    write_text_file(out / "verify_report.json", combined.to_json() + "\n");
    write_text_file(out / "verify_report.txt", combined.text_summary());
    RunManifest manifest;
    manifest.subcommand = "verify";
    manifest.config_echo = cfg.echo;
    manifest.input_hash = fnv1a64_hex(read_text_file(cli.config_path));
    manifest.params = traj.params;
    manifest.grid_eps = traj.grid.eps();
    manifest.grid_R = traj.grid.outer();
    manifest.grid_n = traj.grid.size();
    manifest.add_file(out, "verify_report.json");
    manifest.add_file(out, "verify_report.txt");
    write_manifest(out, manifest, "verify_manifest.json");
    std::cout << combined.text_summary();
    return combined.hard_pass() ? 0 : 4;
}

int cmd_continuation(const CliOptions& cli) {
    const ExperimentConfig cfg = parse_config(cli.config_path);
    const fs::path out = resolve_out_dir(cli, cfg);
    fs::create_directories(out);

    ContinuationPlan plan;
    plan.eps_sequence = cfg.eps_list;
    plan.R = cfg.grid_R;
    plan.h_target = cfg.cont_h_target;
    plan.t_end = cfg.cont_t_end;
    plan.params = cfg.params;
    plan.rho0 = make_named_profile(cfg.rho0, cfg.rho0_base, cfg.rho0_amp, cfg.grid_R);
    plan.u0 = make_named_profile(cfg.u0, cfg.u0_base, cfg.u0_amp, cfg.grid_R);
    plan.theta0 = make_named_profile(cfg.theta0, cfg.theta0_base, cfg.theta0_amp, cfg.grid_R);
    plan.C0 = cfg.C0;
    plan.forcing = cfg.make_forcing();
    plan.solver = cfg.solver;
    plan.h_probes = cfg.cont_probes;
    plan.grade_ratio = cfg.cont_grade_ratio;
    plan.threads = cli.threads ? cli.threads : cfg.threads;

    const std::vector<Trajectory> family = run_sequence(plan);

    std::ostringstream table;
    table << "eps_i,eps_j,sup,l2,rho_weak\n";
    Samples sups;
    for (std::size_t j = 0; j + 1 < family.size(); ++j) {
        const OverlapDistance d = overlap_distance(family[j], family[j + 1], cfg.overlap_a,
                                                   cfg.overlap_t0, cfg.overlap_t1);
        table << format_double(plan.eps_sequence[j]) << ','
              << format_double(plan.eps_sequence[j + 1]) << ',' << format_double(d.sup)
              << ',' << format_double(d.l2) << ',' << format_double(d.rho_weak) << '\n';
        sups.push_back(d.sup);
    }
    write_text_file(out / "overlap_distances.csv", table.str());

    const VacuumCurve curve = estimate_vacuum_boundary(family, plan.h_probes);
    write_series_csv(out / "vacuum_curve.csv", curve.times, curve.r_lower, "r_lower");

    Samples masses;
    for (const Trajectory& traj : family)
        masses.push_back(total_mass(traj.final_state(), traj.grid));

    nlohmann::ordered_json j;
    j["eps_sequence"] = plan.eps_sequence;
    j["final_masses"] = masses;
    j["pair_sup_distances"] = sups;
    bool decreasing = true;
    for (std::size_t k = 0; k + 1 < sups.size(); ++k)
        if (sups[k + 1] > sups[k]) decreasing = false;
    j["sup_distances_decreasing"] = decreasing;
    j["vacuum_alpha"] = curve.alpha;
    j["vacuum_hoelder_C"] = curve.hoelder_C;
    j["vacuum_monotone_probes"] = curve.monotone_probes;
    write_text_file(out / "continuation_summary.json", j.dump(2) + "\n");

    RunManifest manifest;
    manifest.subcommand = "continuation";
    manifest.config_echo = cfg.echo;
    manifest.input_hash = fnv1a64_hex(read_text_file(cli.config_path));
    manifest.params = cfg.params;
    manifest.grid_R = cfg.grid_R;
    for (const char* name :
         {"overlap_distances.csv", "vacuum_curve.csv", "continuation_summary.json"})
        manifest.add_file(out, name);
    write_manifest(out, manifest);
    std::cout << "continuation study written to " << out.string() << "\n";
    return 0;
}

int cmd_mms(const CliOptions& cli) {
    const ExperimentConfig cfg = parse_config(cli.config_path);
    const fs::path out = resolve_out_dir(cli, cfg);
    fs::create_directories(out);

    const MmsResult res = run_mms_study(cfg.grid_eps, cfg.grid_R, cfg.mms_n, cfg.params,
                                        cfg.mms_t_end, cfg.mms_dt_over_h);
    std::ostringstream table;
    table << "n,h,err_rho,err_u,err_theta\n";
    for (std::size_t k = 0; k < res.sizes.size(); ++k)
        table << res.sizes[k] << ',' << format_double(res.h[k]) << ','
              << format_double(res.err_rho[k]) << ',' << format_double(res.err_u[k]) << ','
              << format_double(res.err_theta[k]) << '\n';
    write_text_file(out / "mms_convergence.csv", table.str());

    nlohmann::ordered_json j;
    j["order_rho"] = res.order_rho;
    j["order_u"] = res.order_u;
    j["order_theta"] = res.order_theta;
    const bool pass =
        res.order_rho >= 0.9 && res.order_u >= 0.9 && res.order_theta >= 0.9;
    j["order_at_least_0.9"] = pass;
    write_text_file(out / "mms_orders.json", j.dump(2) + "\n");

    std::vector<SvgSeries> series;
    auto logs = [](const Samples& v) {
        Samples out(v.size());
        for (std::size_t i = 0; i < v.size(); ++i) out[i] = std::log10(v[i]);
        return out;
    };
    series.push_back({"log10 err rho", logs(res.h), logs(res.err_rho)});
    series.push_back({"log10 err u", logs(res.h), logs(res.err_u)});
    series.push_back({"log10 err theta", logs(res.h), logs(res.err_theta)});
    write_svg_lines(out / "mms_convergence.svg", "refinement study (log10 vs log10 h)",
                    series);

    RunManifest manifest;
    manifest.subcommand = "mms";
    manifest.config_echo = cfg.echo;
    manifest.input_hash = fnv1a64_hex(read_text_file(cli.config_path));
    manifest.params = cfg.params;
    manifest.grid_eps = cfg.grid_eps;
    manifest.grid_R = cfg.grid_R;
    for (const char* name : {"mms_convergence.csv", "mms_orders.json", "mms_convergence.svg"})
        manifest.add_file(out, name);
    write_manifest(out, manifest, "mms_manifest.json");
    std::cout << "mms orders: rho=" << res.order_rho << " u=" << res.order_u
              << " theta=" << res.order_theta << "\n";
    return pass ? 0 : 4;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"radial compressible heat-conducting flow laboratory"};
    app.require_subcommand(1);

    CliOptions cli;
    app.add_option("--config", cli.config_path, "experiment configuration file")
        ->required();
    app.add_option("--out", cli.out_dir, "output directory (overrides config/env)");
    app.add_option("--threads", cli.threads, "worker threads for run families");
    app.add_option("--seed", cli.seed, "seed for the seeded property suites");

    auto* c_run = app.add_subcommand("run", "integrate one trajectory");
    auto* c_verify = app.add_subcommand("verify", "check estimates on a finished run");
    auto* c_cont = app.add_subcommand("continuation", "shrinking inner-radius study");
    auto* c_mms = app.add_subcommand("mms", "manufactured-solution refinement study");
    auto* c_report = app.add_subcommand("report", "functional series and plots");

    try {
        app.parse(argc, argv);
        if (c_run->parsed()) return cmd_run(cli);
        if (c_verify->parsed()) return cmd_verify(cli);
        if (c_cont->parsed()) return cmd_continuation(cli);
        if (c_mms->parsed()) return cmd_mms(cli);
        if (c_report->parsed()) return cmd_report(cli);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const SolverError& e) {
        std::cerr << "solver failure at t=" << e.t << ": " << e.what() << "\n";
        return 3;
    } catch (const IoError& e) {
        std::cerr << "i/o error: " << e.what() << "\n";
        return 5;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
