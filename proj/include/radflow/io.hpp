#pragma once

#include "radflow/grid.hpp"

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace radflow {

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// FNV-1a 64-bit content hash, printed as 16 hex digits.
std::uint64_t fnv1a64(const std::string& bytes);
std::string fnv1a64_hex(const std::string& bytes);

/// Deterministic shortest-roundtrip double formatting for all artifacts.
std::string format_double(double v);

void write_text_file(const std::filesystem::path& path, const std::string& content);
std::string read_text_file(const std::filesystem::path& path);

/// Snapshot CSV with columns r,rho,u,theta plus a JSON sidecar for t and
/// the physical parameters.
void write_state_csv(const std::filesystem::path& path, const FlowState& state,
                     const RadialGrid& grid);
void write_state_sidecar(const std::filesystem::path& path, const FlowState& state,
                         const PhysParams& params);

/// Reads a snapshot pair back; the nodes come from the CSV.
std::pair<Samples, FlowState> load_state_csv(const std::filesystem::path& csv_path);
double load_sidecar_time(const std::filesystem::path& json_path);
PhysParams load_sidecar_params(const std::filesystem::path& json_path);

/// Writes snapshots snap_000000.csv/json ... and returns the file names.
std::vector<std::string> write_trajectory(const std::filesystem::path& dir,
                                          const Trajectory& traj);

/// Rebuilds a trajectory from a run directory written by write_trajectory
/// plus its manifest (for the parameters).
Trajectory load_trajectory(const std::filesystem::path& dir);

/// Two-column CSV: t,value.
void write_series_csv(const std::filesystem::path& path, const Samples& t,
                      const Samples& values, const std::string& value_name);

/// (r, value) table, one pair per row, '#' comments allowed.
std::pair<Samples, Samples> load_table_csv(const std::filesystem::path& path);

struct SvgSeries {
    std::string label;
    Samples x;
    Samples y;
};

/// Minimal deterministic polyline chart.
void write_svg_lines(const std::filesystem::path& path, const std::string& title,
                     const std::vector<SvgSeries>& series);

/// Manifest: config echo, input hash, counters, wall time, and a checksum
/// per emitted file. Every run artifact must be listed here.
struct RunManifest {
    std::string subcommand;
    std::map<std::string, std::string> config_echo;
    std::string input_hash;
    PhysParams params;
    double grid_eps = 0.0, grid_R = 0.0;
    std::size_t grid_n = 0;
    std::uint64_t steps = 0, floor_rho = 0, floor_theta = 0, cfl_limited = 0;
    bool vacuum_contaminated = false;
    double wall_time_seconds = 0.0;
    std::vector<std::pair<std::string, std::string>> files;  // name, fnv1a64

    void add_file(const std::filesystem::path& dir, const std::string& name);
    std::string to_json() const;
};

void write_manifest(const std::filesystem::path& dir, const RunManifest& manifest,
                    const std::string& filename = "run_manifest.json");
RunManifest load_manifest(const std::filesystem::path& dir,
                          const std::string& filename = "run_manifest.json");

} // namespace radflow
