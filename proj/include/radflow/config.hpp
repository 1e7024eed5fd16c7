#pragma once

#include "radflow/forcing.hpp"
#include "radflow/grid.hpp"
#include "radflow/initial_data.hpp"
#include "radflow/solver.hpp"

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace radflow {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Validated experiment description parsed from a key = value file.
/// Unknown keys are rejected by name; all physical constraints are checked
/// at parse time; defaults are filled and echoed.
struct ExperimentConfig {
    // grid
    double grid_eps = 0.1;
    double grid_R = 1.0;
    std::size_t grid_n = 201;
    std::string grid_kind = "uniform";  // uniform | graded
    double grid_ratio = 1.02;

    PhysParams params{0.1, 0.0, 0.1, 1.0};

    // initial data: named shapes or csv:<path>
    std::string rho0 = "constant", u0 = "zero", theta0 = "constant";
    double rho0_base = 1.0, rho0_amp = 0.0;
    double u0_base = 0.0, u0_amp = 0.0;
    double theta0_base = 1.0, theta0_amp = 0.0;
    double C0 = 50.0;
    double M0 = -1.0;     // < 0 means: computed from rho0
    double delta = -1.0;  // < 0 means: eps / 4

    std::string forcing_name = "zero";
    double forcing_amp = 0.0;

    SolverConfig solver;

    // verify / report
    std::string checks = "all";
    double verify_q = 2.0;
    double verify_h_mass = 0.05;
    double verify_b = 0.3;
    double verify_eta = 0.05;
    double verify_entropy_rate = 1e-8;
    std::string run_dir;

    // continuation
    std::vector<double> eps_list{0.2, 0.1, 0.05, 0.025};
    double cont_h_target = 1.0 / 400.0;
    double cont_t_end = 0.5;
    std::vector<double> cont_probes{0.08, 0.04, 0.02, 0.01};
    double cont_grade_ratio = 1.0;
    double overlap_a = 0.3;
    double overlap_t0 = 0.1;
    double overlap_t1 = 0.5;

    // mms
    std::vector<std::size_t> mms_n{101, 201, 401, 801};
    double mms_t_end = 0.5;
    double mms_dt_over_h = 0.25;

    std::string out_dir;
    std::uint64_t seed = 12345;
    std::size_t threads = 1;

    std::map<std::string, std::string> echo;  // every resolved key

    RadialGrid make_grid() const;
    InitialDataSpec make_initial_spec() const;
    Forcing make_forcing() const;
    FlowState make_initial_state(const RadialGrid& grid) const;
};

ExperimentConfig parse_config(const std::filesystem::path& path);
ExperimentConfig parse_config_text(const std::string& text);

} // namespace radflow
