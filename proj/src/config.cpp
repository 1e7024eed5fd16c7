#include "radflow/config.hpp"

#include "radflow/io.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

namespace radflow {

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

const std::set<std::string> kKnownKeys = {
    "grid.eps", "grid.R", "grid.n", "grid.kind", "grid.ratio",
    "params.mu", "params.lambda", "params.kappa", "params.K",
    "initial.rho0", "initial.rho0_base", "initial.rho0_amp",
    "initial.u0", "initial.u0_base", "initial.u0_amp",
    "initial.theta0", "initial.theta0_base", "initial.theta0_amp",
    "initial.C0", "initial.M0", "initial.delta",
    "forcing.name", "forcing.amp",
    "solver.cfl", "solver.dt_max", "solver.t_end", "solver.floor_rho",
    "solver.floor_theta", "solver.out_every",
    "verify.checks", "verify.q", "verify.h_mass", "verify.b", "verify.eta",
    "verify.entropy_rate",
    "verify.run_dir",
    "continuation.eps_list", "continuation.h_target", "continuation.t_end",
    "continuation.probes", "continuation.grade_ratio", "continuation.overlap_a", "continuation.overlap_t0",
    "continuation.overlap_t1",
    "mms.n_list", "mms.t_end", "mms.dt_over_h",
    "output.dir", "run.seed", "run.threads",
};

double parse_double(const std::string& key, const std::string& value) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(value, &pos);
        if (pos != value.size()) throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        throw ConfigError(key + ": cannot parse number '" + value + "'");
    }
}

std::size_t parse_size(const std::string& key, const std::string& value) {
    const double v = parse_double(key, value);
    if (v < 0.0 || v != std::floor(v))
        throw ConfigError(key + ": expected a nonnegative integer");
    return static_cast<std::size_t>(v);
}

std::vector<double> parse_double_list(const std::string& key, const std::string& value) {
    std::vector<double> out;
    std::stringstream ss(value);
    std::string item;
    while (std::getline(ss, item, ','))
        out.push_back(parse_double(key, trim(item)));
    if (out.empty()) throw ConfigError(key + ": empty list");
    return out;
}

RadialProfile resolve_profile(const std::string& key, const std::string& name, double base,
                              double amp, double R) {
    if (name.rfind("csv:", 0) == 0) {
        auto [r, v] = load_table_csv(name.substr(4));
        return make_tabulated_profile(std::move(r), std::move(v));
    }
    try {
        return make_named_profile(name, base, amp, R);
    } catch (const std::exception& e) {
        throw ConfigError(key + ": " + e.what());
    }
}

} // namespace

ExperimentConfig parse_config_text(const std::string& text) {
    ExperimentConfig cfg;
    std::map<std::string, std::string> raw;

    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string stripped = trim(line.substr(0, line.find('#')));
        if (stripped.empty()) continue;
        const auto eq = stripped.find('=');
        if (eq == std::string::npos)
            throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
        const std::string key = trim(stripped.substr(0, eq));
        const std::string value = trim(stripped.substr(eq + 1));
        if (!kKnownKeys.count(key))
            throw ConfigError("line " + std::to_string(lineno) + ": unknown key '" + key + "'");
        if (raw.count(key))
            throw ConfigError("line " + std::to_string(lineno) + ": duplicate key '" + key + "'");
        raw[key] = value;
    }

    auto get = [&](const std::string& key) -> const std::string* {
        const auto it = raw.find(key);
        return it == raw.end() ? nullptr : &it->second;
    };
    auto dbl = [&](const std::string& key, double& slot) {
        if (const std::string* v = get(key)) slot = parse_double(key, *v);
    };
    auto str = [&](const std::string& key, std::string& slot) {
        if (const std::string* v = get(key)) slot = *v;
    };

    dbl("grid.eps", cfg.grid_eps);
    dbl("grid.R", cfg.grid_R);
    if (const std::string* v = get("grid.n")) cfg.grid_n = parse_size("grid.n", *v);
    str("grid.kind", cfg.grid_kind);
    dbl("grid.ratio", cfg.grid_ratio);

    dbl("params.mu", cfg.params.mu);
    dbl("params.lambda", cfg.params.lambda);
    dbl("params.kappa", cfg.params.kappa);
    dbl("params.K", cfg.params.K);

    str("initial.rho0", cfg.rho0);
    dbl("initial.rho0_base", cfg.rho0_base);
    dbl("initial.rho0_amp", cfg.rho0_amp);
    str("initial.u0", cfg.u0);
    dbl("initial.u0_base", cfg.u0_base);
    dbl("initial.u0_amp", cfg.u0_amp);
    str("initial.theta0", cfg.theta0);
    dbl("initial.theta0_base", cfg.theta0_base);
    dbl("initial.theta0_amp", cfg.theta0_amp);
    dbl("initial.C0", cfg.C0);
    dbl("initial.M0", cfg.M0);
    dbl("initial.delta", cfg.delta);

    str("forcing.name", cfg.forcing_name);
    dbl("forcing.amp", cfg.forcing_amp);

    dbl("solver.cfl", cfg.solver.cfl);
    dbl("solver.dt_max", cfg.solver.dt_max);
    dbl("solver.t_end", cfg.solver.t_end);
    dbl("solver.floor_rho", cfg.solver.floor_rho);
    dbl("solver.floor_theta", cfg.solver.floor_theta);
    if (const std::string* v = get("solver.out_every"))
        cfg.solver.out_every = parse_size("solver.out_every", *v);

    str("verify.checks", cfg.checks);
    dbl("verify.q", cfg.verify_q);
    dbl("verify.h_mass", cfg.verify_h_mass);
    dbl("verify.b", cfg.verify_b);
    dbl("verify.eta", cfg.verify_eta);
    dbl("verify.entropy_rate", cfg.verify_entropy_rate);
    str("verify.run_dir", cfg.run_dir);

    if (const std::string* v = get("continuation.eps_list"))
        cfg.eps_list = parse_double_list("continuation.eps_list", *v);
    dbl("continuation.h_target", cfg.cont_h_target);
    dbl("continuation.t_end", cfg.cont_t_end);
    if (const std::string* v = get("continuation.probes"))
        cfg.cont_probes = parse_double_list("continuation.probes", *v);
    dbl("continuation.grade_ratio", cfg.cont_grade_ratio);
    dbl("continuation.overlap_a", cfg.overlap_a);
    dbl("continuation.overlap_t0", cfg.overlap_t0);
    dbl("continuation.overlap_t1", cfg.overlap_t1);

    if (const std::string* v = get("mms.n_list")) {
        cfg.mms_n.clear();
        for (double d : parse_double_list("mms.n_list", *v)) {
            if (d < 3.0 || d != std::floor(d))
                throw ConfigError("mms.n_list: entries must be integers >= 3");
            cfg.mms_n.push_back(static_cast<std::size_t>(d));
        }
    }
    dbl("mms.t_end", cfg.mms_t_end);
    dbl("mms.dt_over_h", cfg.mms_dt_over_h);

    str("output.dir", cfg.out_dir);
    if (const std::string* v = get("run.seed")) cfg.seed = parse_size("run.seed", *v);
    if (const std::string* v = get("run.threads"))
        cfg.threads = std::max<std::size_t>(1, parse_size("run.threads", *v));

    // physical constraints, re-validated at parse time with the key named
    if (!(cfg.params.mu > 0.0)) throw ConfigError("params.mu: mu > 0 required");
    if (!(cfg.params.mu + cfg.params.lambda >= 0.0))
        throw ConfigError("params.lambda: mu + lambda >= 0 required");
    if (!(cfg.params.kappa > 0.0)) throw ConfigError("params.kappa: kappa > 0 required");
    if (!(cfg.params.K > 0.0)) throw ConfigError("params.K: K > 0 required");
    if (!(cfg.grid_eps > 0.0)) throw ConfigError("grid.eps: eps > 0 required");
    if (!(cfg.grid_eps < cfg.grid_R)) throw ConfigError("grid.eps: eps < R required");
    if (cfg.grid_n < 3) throw ConfigError("grid.n: n >= 3 required");
    if (cfg.grid_kind != "uniform" && cfg.grid_kind != "graded")
        throw ConfigError("grid.kind: expected uniform or graded");
    if (!(cfg.solver.cfl > 0.0 && cfg.solver.cfl <= 0.9))
        throw ConfigError("solver.cfl: cfl in (0, 0.9] required");
    if (!(cfg.solver.t_end > 0.0)) throw ConfigError("solver.t_end: t_end > 0 required");
    if (!(cfg.C0 >= 1.0)) throw ConfigError("initial.C0: C0 >= 1 required");
    if (cfg.delta > 0.0 && !(cfg.delta < cfg.grid_eps))
        throw ConfigError("initial.delta: delta < eps required");

    // resolved-value echo
    auto put = [&](const std::string& k, const std::string& v) { cfg.echo[k] = v; };
    put("grid.eps", format_double(cfg.grid_eps));
    put("grid.R", format_double(cfg.grid_R));
    put("grid.n", std::to_string(cfg.grid_n));
    put("grid.kind", cfg.grid_kind);
    put("params.mu", format_double(cfg.params.mu));
    put("params.lambda", format_double(cfg.params.lambda));
    put("params.kappa", format_double(cfg.params.kappa));
    put("params.K", format_double(cfg.params.K));
    put("initial.rho0", cfg.rho0);
    put("initial.u0", cfg.u0);
    put("initial.theta0", cfg.theta0);
    put("initial.C0", format_double(cfg.C0));
    put("initial.delta",
        format_double(cfg.delta > 0.0 ? cfg.delta : cfg.grid_eps / 4.0));
    put("forcing.name", cfg.forcing_name);
    put("forcing.amp", format_double(cfg.forcing_amp));
    put("solver.cfl", format_double(cfg.solver.cfl));
    put("solver.dt_max", format_double(cfg.solver.dt_max));
    put("solver.t_end", format_double(cfg.solver.t_end));
    put("solver.out_every", std::to_string(cfg.solver.out_every));
    put("run.seed", std::to_string(cfg.seed));
    return cfg;
}

ExperimentConfig parse_config(const std::filesystem::path& path) {
    return parse_config_text(read_text_file(path));
}

RadialGrid ExperimentConfig::make_grid() const {
    if (grid_kind == "graded")
        return make_graded_grid(grid_eps, grid_R, grid_n, grid_ratio);
    return make_uniform_grid(grid_eps, grid_R, grid_n);
}

InitialDataSpec ExperimentConfig::make_initial_spec() const {
    InitialDataSpec spec;
    spec.rho0 = resolve_profile("initial.rho0", rho0, rho0_base, rho0_amp, grid_R);
    spec.u0 = resolve_profile("initial.u0", u0, u0_base, u0_amp, grid_R);
    spec.theta0 = resolve_profile("initial.theta0", theta0, theta0_base, theta0_amp, grid_R);
    spec.C0 = C0;
    spec.M0 = M0 > 0.0 ? M0 : profile_mass(spec.rho0, grid_R);
    spec.eps = grid_eps;
    spec.delta = delta > 0.0 ? delta : grid_eps / 4.0;
    return spec;
}

Forcing ExperimentConfig::make_forcing() const {
    if (forcing_name.rfind("csv:", 0) == 0)
        throw ConfigError("forcing.name: tabulated forcing files are not wired to the CLI");
    try {
        return make_named_forcing(forcing_name, forcing_amp, grid_R);
    } catch (const std::exception& e) {
        throw ConfigError(std::string("forcing.name: ") + e.what());
    }
}

FlowState ExperimentConfig::make_initial_state(const RadialGrid& grid) const {
    const InitialDataSpec spec = make_initial_spec();
    FlowState s;
    s.t = 0.0;
    s.rho = prepare_density(spec, grid);
    s.u = prepare_velocity(spec, grid);
    s.theta = prepare_temperature(spec, grid);
    return s;
}

} // namespace radflow
