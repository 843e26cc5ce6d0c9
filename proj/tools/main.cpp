#include <CLI11.hpp>
#include <iostream>

#include "commands.hpp"

int main(int argc, char** argv) {
  CLI::App app{"setdyn: minimal invariant sets and Legendrian boundary flows "
               "of planar bounded-noise dynamics"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  int64_t seed = -1;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "JSON run configuration")->required();
    sub->add_option("--out", out_dir, "output directory (default .)");
    sub->add_option("--seed", seed, "override the config seed");
  };

  auto* minimal = app.add_subcommand("minimal-set", "box-covering minimal invariant set");
  add_common(minimal);

  auto* flow = app.add_subcommand("boundary-flow", "propagate or relax a Legendrian loop");
  add_common(flow);
  int steps = 0;
  bool relax = false;
  flow->add_option("--steps", steps, "number of propagation steps");
  flow->add_flag("--relax", relax, "iterate to the invariant loop");

  auto* spectrum = app.add_subcommand("spectrum", "normal hyperbolicity spectrum");
  add_common(spectrum);
  std::string inject;
  spectrum->add_option("--inject-report", inject,
                       "classify a precomputed spectrum JSON instead of estimating");

  auto* persist = app.add_subcommand("persist", "perturbation persistence table");
  add_common(persist);

  auto* equi = app.add_subcommand("equidistant", "offset front with singularity report");
  add_common(equi);
  double offset = 0.0;
  equi->add_option("--offset", offset, "signed normal offset")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    const std::optional<std::filesystem::path> out =
        out_dir.empty() ? std::nullopt : std::optional<std::filesystem::path>(out_dir);
    const std::optional<uint64_t> seed_opt =
        seed < 0 ? std::nullopt : std::optional<uint64_t>(static_cast<uint64_t>(seed));
    const setdyn::cli::RunConfig cfg = setdyn::cli::load_config(config_path, out, seed_opt);

    if (*minimal) return setdyn::cli::cmd_minimal_set(cfg);
    if (*flow)
      return setdyn::cli::cmd_boundary_flow(
          cfg, steps > 0 ? std::optional<int>(steps) : std::nullopt, relax);
    if (*spectrum)
      return setdyn::cli::cmd_spectrum(
          cfg, inject.empty() ? std::nullopt
                              : std::optional<std::filesystem::path>(inject));
    if (*persist) return setdyn::cli::cmd_persist(cfg);
    if (*equi) return setdyn::cli::cmd_equidistant(cfg, offset);
  } catch (const setdyn::Error& e) {
    std::cerr << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
