#include "radflow/io.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace radflow {

std::uint64_t fnv1a64(const std::string& bytes) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::string fnv1a64_hex(const std::string& bytes) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx",
                  static_cast<unsigned long long>(fnv1a64(bytes)));
    return buf;
}

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_text_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw IoError("cannot open for writing: " + path.string());
    out << content;
    if (!out)
        throw IoError("write failed: " + path.string());
}

std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IoError("cannot open: " + path.string());
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_state_csv(const std::filesystem::path& path, const FlowState& state,
                     const RadialGrid& grid) {
    std::ostringstream os;
    os << "r,rho,u,theta\n";
    for (std::size_t i = 0; i < grid.size(); ++i)
        os << format_double(grid.node(i)) << ',' << format_double(state.rho[i]) << ','
           << format_double(state.u[i]) << ',' << format_double(state.theta[i]) << '\n';
    write_text_file(path, os.str());
}

void write_state_sidecar(const std::filesystem::path& path, const FlowState& state,
                         const PhysParams& params) {
    nlohmann::ordered_json j;
    j["t"] = state.t;
    j["params"]["mu"] = params.mu;
    j["params"]["lambda"] = params.lambda;
    j["params"]["kappa"] = params.kappa;
    j["params"]["K"] = params.K;
    j["params"]["nu"] = params.nu();
    write_text_file(path, j.dump(2) + "\n");
}

std::pair<Samples, FlowState> load_state_csv(const std::filesystem::path& csv_path) {
    std::ifstream in(csv_path);
    if (!in)
        throw IoError("cannot open: " + csv_path.string());
    std::string line;
    std::getline(in, line);  // header
    Samples r;
    FlowState s;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        double a, b, c, d;
        if (std::sscanf(line.c_str(), "%lf,%lf,%lf,%lf", &a, &b, &c, &d) != 4)
            throw IoError("bad snapshot row in " + csv_path.string());
        r.push_back(a);
        s.rho.push_back(b);
        s.u.push_back(c);
        s.theta.push_back(d);
    }
    return {std::move(r), std::move(s)};
}

double load_sidecar_time(const std::filesystem::path& json_path) {
    const auto j = nlohmann::json::parse(read_text_file(json_path));
    return j.at("t").get<double>();
}

PhysParams load_sidecar_params(const std::filesystem::path& json_path) {
    const auto j = nlohmann::json::parse(read_text_file(json_path));
    PhysParams p;
    p.mu = j.at("params").at("mu").get<double>();
    p.lambda = j.at("params").at("lambda").get<double>();
    p.kappa = j.at("params").at("kappa").get<double>();
    p.K = j.at("params").at("K").get<double>();
    return p;
}

std::vector<std::string> write_trajectory(const std::filesystem::path& dir,
                                          const Trajectory& traj) {
    std::vector<std::string> names;
    for (std::size_t k = 0; k < traj.states.size(); ++k) {
        char base[32];
        std::snprintf(base, sizeof base, "snap_%06zu", k);
        const std::string csv = std::string(base) + ".csv";
        const std::string json = std::string(base) + ".json";
        write_state_csv(dir / csv, traj.states[k], traj.grid);
        write_state_sidecar(dir / json, traj.states[k], traj.params);
        names.push_back(csv);
        names.push_back(json);
    }
    return names;
}

Trajectory load_trajectory(const std::filesystem::path& dir) {
    const RunManifest manifest = load_manifest(dir);
    std::vector<std::string> csvs;
    for (const auto& [name, hash] : manifest.files)
        if (name.rfind("snap_", 0) == 0 && name.size() > 4 &&
            name.substr(name.size() - 4) == ".csv")
            csvs.push_back(name);
    std::sort(csvs.begin(), csvs.end());
    if (csvs.empty())
        throw IoError("no snapshots listed in manifest under " + dir.string());

    auto [nodes, first] = load_state_csv(dir / csvs.front());
    Trajectory traj{manifest.params, RadialGrid(std::move(nodes)), {}, {}, {}};
    traj.diagnostics.total_steps = manifest.steps;
    traj.diagnostics.floor_rho_hits = manifest.floor_rho;
    traj.diagnostics.floor_theta_hits = manifest.floor_theta;
    traj.diagnostics.cfl_limited_steps = manifest.cfl_limited;
    for (const std::string& name : csvs) {
        auto [r, state] = load_state_csv(dir / name);
        const std::string sidecar = name.substr(0, name.size() - 4) + ".json";
        state.t = load_sidecar_time(dir / sidecar);
        traj.states.push_back(std::move(state));
    }
    traj.validate();
    return traj;
}

void write_series_csv(const std::filesystem::path& path, const Samples& t,
                      const Samples& values, const std::string& value_name) {
    if (t.size() != values.size())
        throw IoError("write_series_csv: length mismatch");
    std::ostringstream os;
    os << "t," << value_name << "\n";
    for (std::size_t i = 0; i < t.size(); ++i)
        os << format_double(t[i]) << ',' << format_double(values[i]) << '\n';
    write_text_file(path, os.str());
}

std::pair<Samples, Samples> load_table_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        throw IoError("cannot open: " + path.string());
    Samples x, y;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        if (line.find_first_not_of("0123456789+-.eE, \t") != std::string::npos) continue;
        double a, b;
        if (std::sscanf(line.c_str(), "%lf,%lf", &a, &b) == 2) {
            x.push_back(a);
            y.push_back(b);
        }
    }
    if (x.size() < 2)
        throw IoError("table too short: " + path.string());
    return {std::move(x), std::move(y)};
}

void write_svg_lines(const std::filesystem::path& path, const std::string& title,
                     const std::vector<SvgSeries>& series) {
    const int W = 720, H = 420, ml = 60, mr = 20, mt = 40, mb = 40;
    double xmin = 0.0, xmax = 1.0, ymin = 0.0, ymax = 1.0;
    bool first = true;
    for (const SvgSeries& s : series)
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            if (first) {
                xmin = xmax = s.x[i];
                ymin = ymax = s.y[i];
                first = false;
            }
            xmin = std::min(xmin, s.x[i]);
            xmax = std::max(xmax, s.x[i]);
            ymin = std::min(ymin, s.y[i]);
            ymax = std::max(ymax, s.y[i]);
        }
    if (xmax <= xmin) xmax = xmin + 1.0;
    if (ymax <= ymin) ymax = ymin + 1.0;
    const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e"};

    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
       << "\">\n";
    os << "<rect width=\"" << W << "\" height=\"" << H << "\" fill=\"white\"/>\n";
    os << "<text x=\"" << W / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"16\">"
       << title << "</text>\n";
    os << "<line x1=\"" << ml << "\" y1=\"" << H - mb << "\" x2=\"" << W - mr << "\" y2=\""
       << H - mb << "\" stroke=\"black\"/>\n";
    os << "<line x1=\"" << ml << "\" y1=\"" << mt << "\" x2=\"" << ml << "\" y2=\"" << H - mb
       << "\" stroke=\"black\"/>\n";
    os << "<text x=\"" << ml << "\" y=\"" << H - 8 << "\" font-size=\"11\">"
       << format_double(xmin) << "</text>\n";
    os << "<text x=\"" << W - mr << "\" y=\"" << H - 8
       << "\" text-anchor=\"end\" font-size=\"11\">" << format_double(xmax) << "</text>\n";
    os << "<text x=\"4\" y=\"" << H - mb << "\" font-size=\"11\">" << format_double(ymin)
       << "</text>\n";
    os << "<text x=\"4\" y=\"" << mt + 10 << "\" font-size=\"11\">" << format_double(ymax)
       << "</text>\n";
    for (std::size_t s = 0; s < series.size(); ++s) {
        os << "<polyline fill=\"none\" stroke=\"" << colors[s % 5]
           << "\" stroke-width=\"1.5\" points=\"";
        for (std::size_t i = 0; i < series[s].x.size(); ++i) {
            const double px =
                ml + (series[s].x[i] - xmin) / (xmax - xmin) * (W - ml - mr);
            const double py =
                H - mb - (series[s].y[i] - ymin) / (ymax - ymin) * (H - mt - mb);
            os << format_double(px) << ',' << format_double(py) << ' ';
        }
        os << "\"/>\n";
        os << "<text x=\"" << W - mr - 150 << "\" y=\"" << mt + 16 * (s + 1)
           << "\" font-size=\"12\" fill=\"" << colors[s % 5] << "\">" << series[s].label
           << "</text>\n";
    }
    os << "</svg>\n";
    write_text_file(path, os.str());
}

void RunManifest::add_file(const std::filesystem::path& dir, const std::string& name) {
    files.emplace_back(name, fnv1a64_hex(read_text_file(dir / name)));
}

std::string RunManifest::to_json() const {
    nlohmann::ordered_json j;
    j["tool"] = "radflow";
    j["subcommand"] = subcommand;
    j["input_hash"] = input_hash;
    nlohmann::ordered_json echo;
    for (const auto& [k, v] : config_echo) echo[k] = v;
    j["config_echo"] = echo;
    j["grid"]["eps"] = grid_eps;
    j["grid"]["R"] = grid_R;
    j["grid"]["n"] = grid_n;
    j["params"]["mu"] = params.mu;
    j["params"]["lambda"] = params.lambda;
    j["params"]["kappa"] = params.kappa;
    j["params"]["K"] = params.K;
    j["counters"]["steps"] = steps;
    j["counters"]["floor_rho"] = floor_rho;
    j["counters"]["floor_theta"] = floor_theta;
    j["counters"]["cfl_limited"] = cfl_limited;
    j["vacuum_contaminated"] = vacuum_contaminated;
    j["wall_time_seconds"] = wall_time_seconds;
    auto arr = nlohmann::ordered_json::array();
    for (const auto& [name, hash] : files) {
        nlohmann::ordered_json f;
        f["name"] = name;
        f["fnv1a64"] = hash;
        arr.push_back(f);
    }
    j["files"] = arr;
    return j.dump(2) + "\n";
}

void write_manifest(const std::filesystem::path& dir, const RunManifest& manifest,
                    const std::string& filename) {
    write_text_file(dir / filename, manifest.to_json());
}

RunManifest load_manifest(const std::filesystem::path& dir, const std::string& filename) {
    const auto j = nlohmann::json::parse(read_text_file(dir / filename));
    RunManifest m;
    m.subcommand = j.value("subcommand", "");
    m.input_hash = j.value("input_hash", "");
    if (j.contains("config_echo"))
        for (auto it = j["config_echo"].begin(); it != j["config_echo"].end(); ++it)
            m.config_echo[it.key()] = it.value().get<std::string>();
    m.params.mu = j.at("params").at("mu").get<double>();
    m.params.lambda = j.at("params").at("lambda").get<double>();
    m.params.kappa = j.at("params").at("kappa").get<double>();
    m.params.K = j.at("params").at("K").get<double>();
    m.grid_eps = j.at("grid").at("eps").get<double>();
    m.grid_R = j.at("grid").at("R").get<double>();
    m.grid_n = j.at("grid").at("n").get<std::size_t>();
    m.steps = j.at("counters").at("steps").get<std::uint64_t>();
    m.floor_rho = j.at("counters").at("floor_rho").get<std::uint64_t>();
    m.floor_theta = j.at("counters").at("floor_theta").get<std::uint64_t>();
    m.cfl_limited = j.at("counters").at("cfl_limited").get<std::uint64_t>();
    m.vacuum_contaminated = j.value("vacuum_contaminated", false);
    m.wall_time_seconds = j.value("wall_time_seconds", 0.0);
    if (j.contains("files"))
        for (const auto& f : j["files"])
            m.files.emplace_back(f.at("name").get<std::string>(),
                                 f.at("fnv1a64").get<std::string>());
    return m;
}

} // namespace radflow
