#include "setdyn/io.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

#include <json.hpp>

namespace setdyn {

using nlohmann::json;

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

void write_boxset_csv(std::ostream& os, const BoxSet& s) {
  os << "ix,iy,cx,cy,h\n";
  const double h = s.grid.cell_size;
  for (const Cell& c : s.cells) {
    const Eigen::Vector2d p = s.grid.center(c.ix, c.iy);
    os << c.ix << ',' << c.iy << ',' << format_double(p.x()) << ',' << format_double(p.y())
       << ',' << format_double(h) << '\n';
  }
}

void write_loop_csv(std::ostream& os, const LegendrianLoop& l) {
  os << "i,x,y,nx,ny\n";
  for (size_t i = 0; i < l.points.size(); ++i) {
    const auto& p = l.points[i];
    os << i << ',' << format_double(p.base[0]) << ',' << format_double(p.base[1]) << ','
       << format_double(p.normal[0]) << ',' << format_double(p.normal[1]) << '\n';
  }
}

void write_curve_csv(std::ostream& os, const ClosedCurve& c) {
  os << "i,x,y\n";
  for (size_t i = 0; i < c.vertices.size(); ++i)
    os << i << ',' << format_double(c.vertices[i].x()) << ','
       << format_double(c.vertices[i].y()) << '\n';
}

void write_persistence_csv(std::ostream& os, const PersistenceTable& t) {
  os << "delta,hausdorff_c0,normal_dev_c1,verdict,margin,converged\n";
  for (const auto& row : t.rows) {
    os << format_double(row.delta) << ',';
    if (row.converged) {
      os << format_double(row.hausdorff_c0) << ',' << format_double(row.normal_deviation_c1)
         << ',' << to_string(row.verdict.verdict) << ',' << format_double(row.verdict.margin);
    } else {
      os << ",,,";
    }
    os << ',' << (row.converged ? "true" : "false") << '\n';
  }
}

std::string scenario_to_json(const Scenario& s) {
  json j;
  j["dimension"] = s.dimension();
  j["map"]["kind"] = s.diffeo->kind();
  j["map"]["params"] = s.diffeo->parameters();
  j["epsilon"] = s.epsilon;
  j["window"]["lo"] = {s.window.lo[0], s.window.lo[1]};
  j["window"]["hi"] = {s.window.hi[0], s.window.hi[1]};
  return j.dump(2);
}

Scenario scenario_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    raise(ErrorKind::ConfigError, std::string("scenario JSON: ") + e.what());
  }
  try {
    const int dim = j.at("dimension").get<int>();
    if (dim != 2) raise(ErrorKind::ConfigError, "only planar scenarios (dimension 2) are supported");
    const std::string kind = j.at("map").at("kind").get<std::string>();
    std::map<std::string, double> params;
    for (const auto& [key, value] : j.at("map").at("params").items())
      params[key] = value.get<double>();
    const double epsilon = j.at("epsilon").get<double>();
    Box window;
    window.lo = Eigen::VectorXd(2);
    window.hi = Eigen::VectorXd(2);
    const auto& lo = j.at("window").at("lo");
    const auto& hi = j.at("window").at("hi");
    window.lo << lo.at(0).get<double>(), lo.at(1).get<double>();
    window.hi << hi.at(0).get<double>(), hi.at(1).get<double>();
    return make_scenario(make_map(kind, params), epsilon, window);
  } catch (const json::exception& e) {
    raise(ErrorKind::ConfigError, std::string("scenario JSON: ") + e.what());
  }
}

std::string spectrum_to_json(const SpectrumReport& rep, const Classification& cls) {
  json j;
  j["tangential"] = rep.tangential_exponent;
  j["normal"] = {rep.normal_exponents[0], rep.normal_exponents[1]};
  j["spread"] = rep.per_orbit_spread;
  j["iterations"] = rep.iterations_used;
  j["verdict"] = to_string(cls.verdict);
  j["margin"] = cls.margin;
  return j.dump(2);
}

void spectrum_from_json(const std::string& text, SpectrumReport& rep) {
  try {
    const json j = json::parse(text);
    rep.tangential_exponent = j.at("tangential").get<double>();
    rep.normal_exponents[0] = j.at("normal").at(0).get<double>();
    rep.normal_exponents[1] = j.at("normal").at(1).get<double>();
    rep.per_orbit_spread = j.value("spread", 0.0);
    rep.iterations_used = j.value("iterations", 0);
  } catch (const json::exception& e) {
    raise(ErrorKind::ConfigError, std::string("spectrum JSON: ") + e.what());
  }
}

std::string certificate_to_json(const MinimalityCertificate& cert) {
  json j;
  json seeds = json::array();
  for (const auto& s : cert.seeds) seeds.push_back({s[0], s[1]});
  j["seeds"] = std::move(seeds);
  j["max_defect"] = cert.max_defect;
  j["pass"] = cert.pass;
  return j.dump(2);
}

std::string singularity_report_to_json(const SingularityReport& rep, bool front_simple) {
  json j;
  j["flagged_indices"] = rep.flagged_indices;
  j["min_projection_speed"] = rep.min_projection_speed;
  j["front_simple"] = front_simple;
  return j.dump(2);
}

std::string equivalence_to_json(const EquivalenceReport& rep) {
  json j;
  j["front_to_boxset_dh"] = rep.front_to_boxset_dh;
  j["h_box"] = rep.h_box;
  j["h_front"] = rep.h_front;
  j["certificate_pass"] = rep.certificate.pass;
  j["certificate_max_defect"] = rep.certificate.max_defect;
  j["pass"] = rep.pass;
  return j.dump(2);
}

std::string validation_to_json(const ValidationReport& rep) {
  json j;
  j["samples"] = rep.samples;
  j["max_roundtrip_error"] = rep.max_roundtrip_error;
  j["min_abs_det"] = rep.min_abs_det;
  j["det_sign_constant"] = rep.det_sign_constant;
  j["max_jacobian_fd_discrepancy"] = rep.max_jacobian_fd_discrepancy;
  j["pass"] = rep.pass;
  return j.dump(2);
}

}  // namespace setdyn
