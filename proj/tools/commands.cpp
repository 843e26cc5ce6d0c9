#include "commands.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include <json.hpp>

namespace setdyn::cli {

using nlohmann::json;

namespace {

// Exit codes shared by all subcommands.
constexpr int kOk = 0;
constexpr int kConfigError = 1;
constexpr int kCertificateFailed = 2;
constexpr int kWindowEscape = 3;
constexpr int kSingularFront = 4;
constexpr int kNonConvergent = 5;
constexpr int kContactAnomaly = 6;
constexpr int kRowNonConvergent = 7;
constexpr int kBaseNotAttracting = 8;

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) raise(ErrorKind::ConfigError, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) raise(ErrorKind::ConfigError, "cannot write " + path.string());
  out << text;
}

ClosedCurve curve_from_spec(const CurveSpec& spec) {
  if (spec.kind == "circle") {
    const int n = std::max(64, static_cast<int>(std::ceil(2.0 * 3.14159265358979 * spec.radius / 0.005)));
    return circle_curve(spec.center, spec.radius, std::min(n, 4096));
  }
  if (spec.kind == "csv") {
    std::ifstream in(spec.csv_path);
    if (!in) raise(ErrorKind::ConfigError, "cannot open curve CSV " + spec.csv_path);
    std::string line;
    std::getline(in, line);  // header i,x,y
    std::vector<Eigen::Vector2d> pts;
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      double i, x, y;
      if (std::sscanf(line.c_str(), "%lf,%lf,%lf", &i, &x, &y) != 3)
        raise(ErrorKind::ConfigError, "malformed curve CSV row: " + line);
      pts.emplace_back(x, y);
    }
    return make_closed_curve(std::move(pts));
  }
  raise(ErrorKind::ConfigError, "unknown curve kind '" + spec.kind + "'");
}

PersistenceOptions persist_options(const RunConfig& cfg) {
  PersistenceOptions opts;
  opts.h_front = cfg.h_front;
  opts.relax_tol = cfg.relax_tol;
  opts.relax_max_iter = cfg.relax_max_iter;
  opts.n_orbits = cfg.n_orbits;
  opts.spectrum_iter = cfg.spectrum_iter;
  opts.rng_seed = cfg.seed;
  return opts;
}

}  // namespace

RunConfig load_config(const std::filesystem::path& path,
                      const std::optional<std::filesystem::path>& out_dir,
                      const std::optional<uint64_t>& seed) {
  const std::string text = read_file(path);
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    raise(ErrorKind::ConfigError, std::string("config JSON: ") + e.what());
  }

  RunConfig cfg;
  cfg.scenario = scenario_from_json(text);
  try {
    cfg.grid = make_grid(cfg.scenario.window, j.at("grid").at("h_box").get<double>());
    cfg.h_front = j.value("h_front", 0.005);
    if (j.contains("tolerances")) {
      const auto& t = j["tolerances"];
      cfg.relax_tol = t.value("relax_tol", cfg.relax_tol);
      cfg.persist_tol = t.value("persist_tol", cfg.persist_tol);
    }
    cfg.relax_max_iter = j.value("relax_max_iter", cfg.relax_max_iter);
    cfg.n_seeds = j.value("n_seeds", cfg.n_seeds);
    cfg.n_orbits = j.value("n_orbits", cfg.n_orbits);
    cfg.spectrum_iter = j.value("spectrum_iter", cfg.spectrum_iter);
    cfg.eta = j.value("eta", cfg.eta);
    cfg.seed = j.value("seed", cfg.seed);
    if (j.contains("curve")) {
      CurveSpec spec;
      const auto& c = j["curve"];
      spec.kind = c.at("kind").get<std::string>();
      if (spec.kind == "circle") {
        spec.center = {c.at("center").at(0).get<double>(), c.at("center").at(1).get<double>()};
        spec.radius = c.at("radius").get<double>();
      } else if (spec.kind == "csv") {
        spec.csv_path = c.at("path").get<std::string>();
      }
      cfg.curve = spec;
    }
    if (j.contains("family")) {
      FamilySpec spec;
      const auto& f = j["family"];
      spec.kind = f.at("kind").get<std::string>();
      spec.r0 = f.value("r0", spec.r0);
      spec.r1 = f.value("r1", spec.r1);
      cfg.family = spec;
    }
    if (j.contains("deltas")) cfg.deltas = j["deltas"].get<std::vector<double>>();
  } catch (const json::exception& e) {
    raise(ErrorKind::ConfigError, std::string("config JSON: ") + e.what());
  }

  if (!(cfg.h_front > 0.0) || !(cfg.relax_tol > 0.0) || !(cfg.persist_tol > 0.0) ||
      !(cfg.eta > 0.0))
    raise(ErrorKind::ConfigError, "tolerances must be positive");
  if (out_dir) cfg.output_dir = *out_dir;
  if (seed) cfg.seed = *seed;
  std::filesystem::create_directories(cfg.output_dir);
  return cfg;
}

int cmd_minimal_set(const RunConfig& cfg) {
  try {
    const MinimalResult res =
        minimal_invariant_set(cfg.scenario, cfg.grid, cfg.n_seeds, cfg.seed);
    {
      std::ofstream os(cfg.output_dir / "boxset.csv", std::ios::binary);
      write_boxset_csv(os, res.covering);
    }
    write_file(cfg.output_dir / "certificate.json", certificate_to_json(res.certificate));
    if (!res.certificate.pass) {
      std::cerr << "minimality certificate failed, max defect "
                << format_double(res.certificate.max_defect) << "\n";
      return kCertificateFailed;
    }
    return kOk;
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    if (e.kind() == ErrorKind::WindowEscape) return kWindowEscape;
    return kConfigError;
  }
}

int cmd_boundary_flow(const RunConfig& cfg, std::optional<int> steps, bool relax) {
  try {
    if (!cfg.curve) raise(ErrorKind::ConfigError, "boundary-flow needs a curve spec");
    const ClosedCurve c0 = curve_from_spec(*cfg.curve);
    LegendrianLoop loop = lift_closed_curve(c0, cfg.h_front);
    {
      std::ofstream os(cfg.output_dir / "loop_0000.csv", std::ios::binary);
      write_loop_csv(os, loop);
    }

    if (relax) {
      loop = relax_to_invariant_loop(loop, cfg.scenario, cfg.relax_tol, cfg.relax_max_iter);
      std::ofstream os(cfg.output_dir / "loop_final.csv", std::ios::binary);
      write_loop_csv(os, loop);
    } else {
      const int n = steps.value_or(1);
      for (int k = 1; k <= n; ++k) {
        loop = propagate_loop(loop, cfg.scenario, 1);
        char name[32];
        std::snprintf(name, sizeof(name), "loop_%04d.csv", k);
        std::ofstream os(cfg.output_dir / name, std::ios::binary);
        write_loop_csv(os, loop);
      }
    }
    bool simple = true;
    front_projection(loop, &simple);
    write_file(cfg.output_dir / "singularities.json",
               singularity_report_to_json(detect_projection_singularities(loop), simple));
    return kOk;
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    switch (e.kind()) {
      case ErrorKind::SingularFront:
      case ErrorKind::ContactDrift: {
        SingularityReport rep;
        rep.min_projection_speed = 0.0;
        write_file(cfg.output_dir / "singularities.json",
                   singularity_report_to_json(rep, false));
        return kSingularFront;
      }
      case ErrorKind::NonConvergent:
        return kNonConvergent;
      case ErrorKind::WindowEscape:
        return kWindowEscape;
      default:
        return kConfigError;
    }
  }
}

int cmd_spectrum(const RunConfig& cfg,
                 const std::optional<std::filesystem::path>& inject_report) {
  try {
    SpectrumReport rep;
    if (inject_report) {
      spectrum_from_json(read_file(*inject_report), rep);
    } else {
      if (!cfg.curve) raise(ErrorKind::ConfigError, "spectrum needs a curve spec");
      const ClosedCurve c0 = curve_from_spec(*cfg.curve);
      const LegendrianLoop l0 = lift_closed_curve(c0, cfg.h_front);
      const LegendrianLoop loop =
          relax_to_invariant_loop(l0, cfg.scenario, cfg.relax_tol, cfg.relax_max_iter);
      rep = estimate_spectrum(loop, cfg.scenario, cfg.n_orbits, cfg.spectrum_iter, cfg.seed);
    }
    const Classification cls = classify(rep);
    write_file(cfg.output_dir / "spectrum.json", spectrum_to_json(rep, cls));
    return cls.verdict == Verdict::ContactAnomaly ? kContactAnomaly : kOk;
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    switch (e.kind()) {
      case ErrorKind::NonConvergent:
        return kNonConvergent;
      case ErrorKind::SingularFront:
      case ErrorKind::ContactDrift:
        return kSingularFront;
      case ErrorKind::WindowEscape:
        return kWindowEscape;
      default:
        return kConfigError;
    }
  }
}

int cmd_persist(const RunConfig& cfg) {
  try {
    if (!cfg.curve) raise(ErrorKind::ConfigError, "persist needs a curve spec");
    if (!cfg.family) raise(ErrorKind::ConfigError, "persist needs a family spec");
    if (cfg.deltas.empty()) raise(ErrorKind::ConfigError, "persist needs deltas");

    PerturbationFamily fam;
    if (cfg.family->kind == "epsilon") {
      fam = make_epsilon_family(cfg.scenario);
    } else if (cfg.family->kind == "shear_bump") {
      fam = make_shear_family(cfg.scenario, cfg.family->r0, cfg.family->r1);
    } else {
      raise(ErrorKind::ConfigError, "unknown family kind '" + cfg.family->kind + "'");
    }

    const PersistenceTable table =
        run_persistence_experiment(fam, curve_from_spec(*cfg.curve), cfg.deltas,
                                   cfg.persist_tol, persist_options(cfg));
    {
      std::ofstream os(cfg.output_dir / "persistence.csv", std::ios::binary);
      write_persistence_csv(os, table);
    }
    for (const auto& row : table.rows)
      if (!row.converged) return kRowNonConvergent;
    return kOk;
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    if (e.kind() == ErrorKind::BaseNotAttracting) return kBaseNotAttracting;
    return kConfigError;
  }
}

int cmd_equidistant(const RunConfig& cfg, double offset) {
  try {
    if (!cfg.curve) raise(ErrorKind::ConfigError, "equidistant needs a curve spec");
    const ClosedCurve c0 = curve_from_spec(*cfg.curve);
    const auto [curve, report] = equidistant_front(c0, offset, cfg.h_front);
    {
      std::ofstream os(cfg.output_dir / "equidistant.csv", std::ios::binary);
      write_curve_csv(os, curve);
    }
    const bool simple = is_simple_polygon(curve.vertices);
    write_file(cfg.output_dir / "singularities.json",
               singularity_report_to_json(report, simple));
    return report.flagged_indices.empty() ? kOk : kSingularFront;
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    return kConfigError;
  }
}

}  // namespace setdyn::cli
