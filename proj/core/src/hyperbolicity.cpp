#include "setdyn/hyperbolicity.hpp"

#include <cmath>
#include <random>

#include "parallel.hpp"

namespace setdyn {

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::NormallyAttracting: return "NormallyAttracting";
    case Verdict::NormallyRepelling: return "NormallyRepelling";
    case Verdict::NotNormallyHyperbolic: return "NotNormallyHyperbolic";
    case Verdict::ContactAnomaly: return "ContactAnomaly";
  }
  return "Unknown";
}

Verdict verdict_from_string(const std::string& s) {
  if (s == "NormallyAttracting") return Verdict::NormallyAttracting;
  if (s == "NormallyRepelling") return Verdict::NormallyRepelling;
  if (s == "NotNormallyHyperbolic") return Verdict::NotNormallyHyperbolic;
  if (s == "ContactAnomaly") return Verdict::ContactAnomaly;
  raise(ErrorKind::ConfigError, "unknown verdict '" + s + "'");
}

namespace {

struct OrbitExponents {
  double tangential = 0.0;
  double normal_hi = 0.0;
  double normal_lo = 0.0;
};

OrbitExponents run_orbit(const LegendrianLoop& loop, const Scenario& s, size_t start,
                         int n_iter) {
  TangentPoint p = loop.points[start];
  Eigen::Vector3d t = loop_chart_tangent(loop, start);

  // Complete {t} to an orthonormal 3-frame.
  Eigen::Matrix3d frame;
  frame.col(0) = t;
  int seed_axis = 0;
  for (int a = 1; a < 3; ++a)
    if (std::abs(t[a]) < std::abs(t[seed_axis])) seed_axis = a;
  Eigen::Vector3d w = Eigen::Vector3d::Unit(seed_axis);
  w -= w.dot(t) * t;
  frame.col(1) = w.normalized();
  frame.col(2) = t.cross(frame.col(1));

  double sum_t = 0.0, sum_n1 = 0.0, sum_n2 = 0.0;
  for (int k = 0; k < n_iter; ++k) {
    const Eigen::Matrix3d d = boundary_map_differential(p, s);
    const Eigen::Vector3d a_t = d * frame.col(0);
    const Eigen::Vector3d a_1 = d * frame.col(1);
    const Eigen::Vector3d a_2 = d * frame.col(2);

    p = boundary_map(p, s);
    const size_t idx = nearest_loop_vertex(loop, p);
    const Eigen::Vector3d t_new = loop_chart_tangent(loop, idx);

    const double s_t = a_t.norm();
    Eigen::Vector3d b_1 = a_1 - a_1.dot(t_new) * t_new;
    const double s_1 = b_1.norm();
    b_1 /= s_1;
    Eigen::Vector3d b_2 = a_2 - a_2.dot(t_new) * t_new - a_2.dot(b_1) * b_1;
    const double s_2 = b_2.norm();
    b_2 /= s_2;

    if (!(s_t > 0.0) || !(s_1 > 0.0) || !(s_2 > 0.0))
      raise(ErrorKind::SingularJacobian, "degenerate frame transport");

    sum_t += std::log(s_t);
    sum_n1 += std::log(s_1);
    sum_n2 += std::log(s_2);

    frame.col(0) = t_new;
    frame.col(1) = b_1;
    frame.col(2) = b_2;
  }

  OrbitExponents e;
  e.tangential = sum_t / n_iter;
  e.normal_hi = std::max(sum_n1, sum_n2) / n_iter;
  e.normal_lo = std::min(sum_n1, sum_n2) / n_iter;
  return e;
}

}  // namespace

SpectrumReport estimate_spectrum(const LegendrianLoop& l, const Scenario& s,
                                 int n_orbits, int n_iter, uint64_t rng_seed) {
  if (n_iter < 50) raise(ErrorKind::ConfigError, "spectrum estimation needs n_iter >= 50");
  if (n_orbits < 1) raise(ErrorKind::ConfigError, "spectrum estimation needs n_orbits >= 1");
  {
    const LegendrianLoop stepped = propagate_loop(l, s, 1);
    const double moved = loop_t1_distance(l, stepped);
    if (moved > 1e-4)
      raise(ErrorKind::NotInvariantLoop,
            "loop moves " + std::to_string(moved) + " under one step (tolerance 1e-4)");
  }

  std::mt19937_64 rng(rng_seed);
  std::vector<size_t> starts(n_orbits);
  std::uniform_int_distribution<size_t> pick(0, l.points.size() - 1);
  for (auto& idx : starts) idx = pick(rng);

  std::vector<OrbitExponents> per_orbit(n_orbits);
  detail::parallel_chunks(static_cast<size_t>(n_orbits), 1, [&](size_t b, size_t e, int) {
    for (size_t i = b; i < e; ++i) per_orbit[i] = run_orbit(l, s, starts[i], n_iter);
  });

  SpectrumReport rep;
  rep.iterations_used = n_iter;
  double mt = 0.0, mh = 0.0, ml = 0.0;
  for (const auto& o : per_orbit) {
    mt += o.tangential;
    mh += o.normal_hi;
    ml += o.normal_lo;
  }
  mt /= n_orbits;
  mh /= n_orbits;
  ml /= n_orbits;
  rep.tangential_exponent = mt;
  rep.normal_exponents = {mh, ml};

  double spread = 0.0;
  for (const auto& o : per_orbit) {
    spread = std::max(spread, std::abs(o.tangential - mt));
    spread = std::max(spread, std::abs(o.normal_hi - mh));
    spread = std::max(spread, std::abs(o.normal_lo - ml));
  }
  rep.per_orbit_spread = spread;
  return rep;
}

Classification classify(const SpectrumReport& r, double gap) {
  const double tang = r.tangential_exponent;
  const double hi = r.normal_exponents[0];
  const double lo = r.normal_exponents[1];

  Classification c;
  if (hi < tang - gap && hi < -gap) {
    c.verdict = Verdict::NormallyAttracting;
    c.margin = std::min(tang - hi, -hi) - gap;
  } else if (lo > tang + gap && lo > gap) {
    c.verdict = Verdict::NormallyRepelling;
    c.margin = std::min(lo - tang, lo) - gap;
  } else if (hi > gap && lo < -gap) {
    c.verdict = Verdict::ContactAnomaly;
    c.margin = std::min(hi, -lo) - gap;
  } else {
    c.verdict = Verdict::NotNormallyHyperbolic;
    // The failing separation: how far the estimates are from either verdict.
    c.margin = std::min({tang - hi, -hi, lo - tang, lo}) - gap;
  }
  return c;
}

}  // namespace setdyn
