#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include "setdyn/io.hpp"

namespace setdyn::cli {

struct CurveSpec {
  std::string kind;  // "circle" or "csv"
  Eigen::Vector2d center{0.0, 0.0};
  double radius = 1.0;
  std::string csv_path;
};

struct FamilySpec {
  std::string kind;  // "epsilon" or "shear_bump"
  double r0 = 0.8;
  double r1 = 1.15;
};

struct RunConfig {
  Scenario scenario;
  Grid grid;
  double h_front = 0.005;
  double relax_tol = 2e-5;
  double persist_tol = 2e-5;
  int relax_max_iter = 400;
  int n_seeds = 20;
  int n_orbits = 8;
  int spectrum_iter = 200;
  double eta = 0.1;
  uint64_t seed = 1;
  std::filesystem::path output_dir = ".";
  std::optional<CurveSpec> curve;
  std::optional<FamilySpec> family;
  std::vector<double> deltas;
};

/// Parses the JSON config file; optional overrides come from the command
/// line. Throws Error(ConfigError) on any malformed input.
RunConfig load_config(const std::filesystem::path& path,
                      const std::optional<std::filesystem::path>& out_dir,
                      const std::optional<uint64_t>& seed);

// Subcommand drivers; each returns the documented process exit code.
int cmd_minimal_set(const RunConfig& cfg);
int cmd_boundary_flow(const RunConfig& cfg, std::optional<int> steps, bool relax);
int cmd_spectrum(const RunConfig& cfg,
                 const std::optional<std::filesystem::path>& inject_report);
int cmd_persist(const RunConfig& cfg);
int cmd_equidistant(const RunConfig& cfg, double offset);

}  // namespace setdyn::cli
