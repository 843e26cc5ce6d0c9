#include "setdyn/front.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace setdyn {

namespace {

constexpr double kMaxResidual = 0.1;
constexpr size_t kMaxLoopVertices = 1u << 20;

Eigen::Vector2d base2(const TangentPoint& p) { return {p.base[0], p.base[1]}; }

TangentPoint tangent_point(const Eigen::Vector2d& base, double theta) {
  Eigen::VectorXd b(2);
  b << base.x(), base.y();
  return TangentPoint{std::move(b), Direction::from_angle(theta)};
}

double segment_distance2(const Eigen::Vector2d& p, const Eigen::Vector2d& a,
                         const Eigen::Vector2d& b) {
  const Eigen::Vector2d ab = b - a;
  const double len2 = ab.squaredNorm();
  double t = len2 > 0.0 ? (p - a).dot(ab) / len2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  return (p - (a + t * ab)).squaredNorm();
}

bool segments_properly_intersect(const Eigen::Vector2d& a, const Eigen::Vector2d& b,
                                 const Eigen::Vector2d& c, const Eigen::Vector2d& d) {
  auto orient = [](const Eigen::Vector2d& p, const Eigen::Vector2d& q, const Eigen::Vector2d& r) {
    const double v = (q.x() - p.x()) * (r.y() - p.y()) - (q.y() - p.y()) * (r.x() - p.x());
    return v > 0 ? 1 : (v < 0 ? -1 : 0);
  };
  const int o1 = orient(a, b, c), o2 = orient(a, b, d);
  const int o3 = orient(c, d, a), o4 = orient(c, d, b);
  return o1 != o2 && o3 != o4 && o1 != 0 && o2 != 0 && o3 != 0 && o4 != 0;
}

}  // namespace

bool is_simple_polygon(const std::vector<Eigen::Vector2d>& vertices) {
  const size_t n = vertices.size();
  if (n < 3) return false;
  // Bucket segments on a coarse grid; only near pairs are tested.
  Eigen::Vector2d lo = vertices[0], hi = vertices[0];
  for (const auto& v : vertices) {
    lo = lo.cwiseMin(v);
    hi = hi.cwiseMax(v);
  }
  const double extent = std::max({hi.x() - lo.x(), hi.y() - lo.y(), 1e-12});
  const int nb = std::max(1, static_cast<int>(std::sqrt(static_cast<double>(n))));
  const double cell = extent / nb;
  std::vector<std::vector<int>> buckets(static_cast<size_t>(nb) * nb);
  auto bucket_range = [&](const Eigen::Vector2d& a, const Eigen::Vector2d& b, auto&& fn) {
    const int x0 = std::clamp(static_cast<int>((std::min(a.x(), b.x()) - lo.x()) / cell), 0, nb - 1);
    const int x1 = std::clamp(static_cast<int>((std::max(a.x(), b.x()) - lo.x()) / cell), 0, nb - 1);
    const int y0 = std::clamp(static_cast<int>((std::min(a.y(), b.y()) - lo.y()) / cell), 0, nb - 1);
    const int y1 = std::clamp(static_cast<int>((std::max(a.y(), b.y()) - lo.y()) / cell), 0, nb - 1);
    for (int y = y0; y <= y1; ++y)
      for (int x = x0; x <= x1; ++x) fn(buckets[static_cast<size_t>(y) * nb + x]);
  };
  for (size_t i = 0; i < n; ++i) {
    const Eigen::Vector2d& a = vertices[i];
    const Eigen::Vector2d& b = vertices[(i + 1) % n];
    bool bad = false;
    bucket_range(a, b, [&](std::vector<int>& bucket) {
      if (bad) return;
      for (int j : bucket) {
        const size_t jn = (static_cast<size_t>(j) + 1) % n;
        // Adjacent segments share an endpoint; skip them.
        if (jn == i || (i + 1) % n == static_cast<size_t>(j)) continue;
        if (static_cast<size_t>(j) == i) continue;
        if (segments_properly_intersect(a, b, vertices[j], vertices[jn])) bad = true;
      }
    });
    if (bad) return false;
    bucket_range(a, b, [&](std::vector<int>& bucket) { bucket.push_back(static_cast<int>(i)); });
  }
  return true;
}

ClosedCurve make_closed_curve(std::vector<Eigen::Vector2d> vertices) {
  if (vertices.size() < 16)
    raise(ErrorKind::TooFewVertices,
          "closed curve needs at least 16 vertices, got " + std::to_string(vertices.size()));
  for (size_t i = 0; i < vertices.size(); ++i)
    if ((vertices[(i + 1) % vertices.size()] - vertices[i]).norm() < 1e-14)
      raise(ErrorKind::ZeroEdge, "coincident consecutive vertices at index " + std::to_string(i));
  if (!is_simple_polygon(vertices))
    raise(ErrorKind::SelfIntersecting, "closed curve is self-intersecting");
  ClosedCurve c;
  if (polygon_signed_area(vertices) < 0.0) std::reverse(vertices.begin(), vertices.end());
  c.vertices = std::move(vertices);
  c.counterclockwise = true;
  return c;
}

ClosedCurve circle_curve(const Eigen::Vector2d& center, double radius, int n) {
  std::vector<Eigen::Vector2d> v;
  v.reserve(n);
  for (int i = 0; i < n; ++i) {
    const double t = 2.0 * std::numbers::pi * i / n;
    v.push_back(center + radius * Eigen::Vector2d(std::cos(t), std::sin(t)));
  }
  return make_closed_curve(std::move(v));
}

ClosedCurve ellipse_curve(const Eigen::Vector2d& center, double a, double b, int n) {
  std::vector<Eigen::Vector2d> v;
  v.reserve(n);
  for (int i = 0; i < n; ++i) {
    const double t = 2.0 * std::numbers::pi * i / n;
    v.push_back(center + Eigen::Vector2d(a * std::cos(t), b * std::sin(t)));
  }
  return make_closed_curve(std::move(v));
}

namespace {

std::vector<Eigen::Vector2d> drop_duplicates(const std::vector<Eigen::Vector2d>& v) {
  std::vector<Eigen::Vector2d> out;
  out.reserve(v.size());
  for (const auto& p : v)
    if (out.empty() || (p - out.back()).norm() >= 1e-14) out.push_back(p);
  while (out.size() > 1 && (out.front() - out.back()).norm() < 1e-14) out.pop_back();
  return out;
}

struct ArcTable {
  std::vector<double> cum;  // cum[i] = arclength up to vertex i; cum[n] = perimeter
  double perimeter = 0.0;
};

ArcTable arc_table(const std::vector<Eigen::Vector2d>& v) {
  ArcTable t;
  t.cum.resize(v.size() + 1);
  t.cum[0] = 0.0;
  for (size_t i = 0; i < v.size(); ++i)
    t.cum[i + 1] = t.cum[i] + (v[(i + 1) % v.size()] - v[i]).norm();
  t.perimeter = t.cum.back();
  return t;
}

size_t vertex_budget(double perimeter, double h) {
  const auto n = static_cast<long long>(std::llround(perimeter / h));
  if (n > static_cast<long long>(kMaxLoopVertices))
    raise(ErrorKind::NonConvergent, "front grew beyond the vertex budget");
  return static_cast<size_t>(std::max<long long>(16, n));
}

}  // namespace

std::vector<Eigen::Vector2d> resample_closed_polyline(
    const std::vector<Eigen::Vector2d>& vertices, double h) {
  const std::vector<Eigen::Vector2d> v = drop_duplicates(vertices);
  if (v.size() < 3) raise(ErrorKind::TooFewVertices, "degenerate polyline");
  const ArcTable t = arc_table(v);
  const size_t n_new = vertex_budget(t.perimeter, h);

  std::vector<Eigen::Vector2d> out;
  out.reserve(n_new);
  size_t edge = 0;
  for (size_t k = 0; k < n_new; ++k) {
    const double s = t.perimeter * k / n_new;
    while (t.cum[edge + 1] < s) ++edge;
    const double len = t.cum[edge + 1] - t.cum[edge];
    const double u = len > 0.0 ? (s - t.cum[edge]) / len : 0.0;
    out.push_back(v[edge] + u * (v[(edge + 1) % v.size()] - v[edge]));
  }
  return out;
}

LegendrianLoop lift_closed_curve(const ClosedCurve& c, double h_front) {
  if (!(h_front > 0.0)) raise(ErrorKind::ConfigError, "h_front must be positive");
  const std::vector<Eigen::Vector2d> rs = resample_closed_polyline(c.vertices, h_front);
  const size_t n = rs.size();
  LegendrianLoop loop;
  loop.target_edge_length = h_front;
  loop.points.reserve(n);
  for (size_t i = 0; i < n; ++i) {
    const Eigen::Vector2d tangent = rs[(i + 1) % n] - rs[(i + n - 1) % n];
    const Eigen::Vector2d outward(tangent.y(), -tangent.x());
    loop.points.push_back(tangent_point(rs[i], std::atan2(outward.y(), outward.x())));
  }
  return loop;
}

namespace {

// Resample a raw tangent-point loop: base by arclength interpolation, normal
// by angle interpolation between the surrounding raw vertices, renormalized
// through the angle chart.
LegendrianLoop resample_loop(const std::vector<TangentPoint>& raw, double h_front) {
  std::vector<Eigen::Vector2d> bases;
  std::vector<double> angles;
  bases.reserve(raw.size());
  for (const auto& p : raw) {
    const Eigen::Vector2d b = base2(p);
    if (!bases.empty() && (b - bases.back()).norm() < 1e-14) continue;
    bases.push_back(b);
    angles.push_back(p.normal.angle());
  }
  while (bases.size() > 1 && (bases.front() - bases.back()).norm() < 1e-14) {
    bases.pop_back();
    angles.pop_back();
  }
  if (bases.size() < 3) raise(ErrorKind::SingularFront, "front collapsed while resampling");

  const ArcTable t = arc_table(bases);
  const size_t n_new = vertex_budget(t.perimeter, h_front);

  LegendrianLoop out;
  out.target_edge_length = h_front;
  out.points.reserve(n_new);
  size_t edge = 0;
  const size_t n = bases.size();
  for (size_t k = 0; k < n_new; ++k) {
    const double s = t.perimeter * k / n_new;
    while (t.cum[edge + 1] < s) ++edge;
    const double len = t.cum[edge + 1] - t.cum[edge];
    const double u = len > 0.0 ? (s - t.cum[edge]) / len : 0.0;
    const size_t j = (edge + 1) % n;
    const Eigen::Vector2d base = bases[edge] + u * (bases[j] - bases[edge]);
    const double theta = angles[edge] + u * wrap_angle(angles[j] - angles[edge]);
    out.points.push_back(tangent_point(base, theta));
  }
  return out;
}

void require_propagable(const LegendrianLoop& l) {
  const double res = max_contact_residual(l);
  if (res > kMaxResidual)
    raise(ErrorKind::ContactDrift,
          "loop is not Legendrian: max contact residual " + std::to_string(res));
  const SingularityReport rep = detect_projection_singularities(l);
  if (!rep.flagged_indices.empty())
    raise(ErrorKind::SingularFront, std::to_string(rep.flagged_indices.size()) +
                                        " singular vertices on the input loop");
}

}  // namespace

LegendrianLoop propagate_loop(const LegendrianLoop& l, const Scenario& s, int steps) {
  require_propagable(l);
  LegendrianLoop cur = l;
  for (int k = 0; k < steps; ++k) {
    std::vector<TangentPoint> mapped;
    mapped.reserve(cur.points.size());
    for (const auto& p : cur.points) mapped.push_back(boundary_map(p, s));

    LegendrianLoop raw{std::move(mapped), cur.target_edge_length};
    const SingularityReport rep = detect_projection_singularities(raw);
    if (!rep.flagged_indices.empty())
      raise(ErrorKind::SingularFront, "projection singularity after step " + std::to_string(k + 1));

    cur = resample_loop(raw.points, cur.target_edge_length);
    const double res = max_contact_residual(cur);
    if (res > kMaxResidual)
      raise(ErrorKind::ContactDrift, "contact residual " + std::to_string(res) +
                                         " after step " + std::to_string(k + 1));
  }
  return cur;
}

ClosedCurve front_projection(const LegendrianLoop& l, bool* simple) {
  ClosedCurve c;
  c.vertices.reserve(l.points.size());
  for (const auto& p : l.points) c.vertices.push_back(base2(p));
  c.counterclockwise = polygon_signed_area(c.vertices) >= 0.0;
  if (simple) *simple = is_simple_polygon(c.vertices);
  return c;
}

LegendrianLoop offset_loop(const LegendrianLoop& l, double offset) {
  LegendrianLoop out;
  out.target_edge_length = l.target_edge_length;
  out.points.reserve(l.points.size());
  for (const auto& p : l.points) out.points.push_back(geodesic_shift(p, offset));
  return out;
}

std::pair<ClosedCurve, SingularityReport> equidistant_front(const ClosedCurve& c,
                                                            double offset, double h_front) {
  const LegendrianLoop lifted = lift_closed_curve(c, h_front);
  const LegendrianLoop shifted = offset_loop(lifted, offset);
  SingularityReport rep = detect_projection_singularities(shifted);
  return {front_projection(shifted), std::move(rep)};
}

SingularityReport detect_projection_singularities(const LegendrianLoop& l, double tau) {
  const size_t n = l.points.size();
  SingularityReport rep;
  rep.min_projection_speed = 1.0;
  if (n < 3) {
    rep.min_projection_speed = 0.0;
    return rep;
  }
  for (size_t i = 0; i < n; ++i) {
    const auto& prev = l.points[(i + n - 1) % n];
    const auto& next = l.points[(i + 1) % n];
    const double base_disp = (base2(next) - base2(prev)).norm();
    const double theta_disp = std::abs(wrap_angle(next.normal.angle() - prev.normal.angle()));
    const double denom = base_disp + theta_disp;
    const double speed = denom > 0.0 ? base_disp / denom : 0.0;
    rep.min_projection_speed = std::min(rep.min_projection_speed, speed);
    if (speed < tau) rep.flagged_indices.push_back(static_cast<int>(i));
  }
  return rep;
}

LegendrianLoop relax_to_invariant_loop(const LegendrianLoop& l0, const Scenario& s,
                                       double tol, int max_iter) {
  LegendrianLoop cur = l0;
  for (int k = 0; k < max_iter; ++k) {
    LegendrianLoop next = propagate_loop(cur, s, 1);
    const double d = loop_t1_distance(cur, next);
    if (d <= tol) return next;
    cur = std::move(next);
  }
  raise(ErrorKind::NonConvergent,
        "loop relaxation did not converge in " + std::to_string(max_iter) + " iterations");
}

ClosedCurve rasterized_minkowski_boundary(const ClosedCurve& c, double eps, double raster) {
  if (!(eps > 0.0)) raise(ErrorKind::ConfigError, "eps must be positive");
  if (raster > eps / 10.0)
    raise(ErrorKind::RasterTooCoarse, "raster must be at most eps/10");

  Eigen::Vector2d lo = c.vertices[0], hi = c.vertices[0];
  for (const auto& v : c.vertices) {
    lo = lo.cwiseMin(v);
    hi = hi.cwiseMax(v);
  }
  const double margin = eps + 5.0 * raster;
  RasterFrame frame;
  frame.x0 = lo.x() - margin;
  frame.y0 = lo.y() - margin;
  frame.cell = raster;
  frame.nx = static_cast<int>(std::ceil((hi.x() - lo.x() + 2.0 * margin) / raster));
  frame.ny = static_cast<int>(std::ceil((hi.y() - lo.y() + 2.0 * margin) / raster));

  std::vector<uint8_t> mask = fill_polygon(c.vertices, frame);
  // Mark boundary cells too; center-sampled fill can miss thin features.
  const size_t n = c.vertices.size();
  for (size_t i = 0; i < n; ++i) {
    const Eigen::Vector2d& a = c.vertices[i];
    const Eigen::Vector2d& b = c.vertices[(i + 1) % n];
    const int steps = std::max(1, static_cast<int>(std::ceil((b - a).norm() / (raster * 0.5))));
    for (int k = 0; k <= steps; ++k) {
      const Eigen::Vector2d p = a + (b - a) * (static_cast<double>(k) / steps);
      const int ix = static_cast<int>(std::floor((p.x() - frame.x0) / raster));
      const int iy = static_cast<int>(std::floor((p.y() - frame.y0) / raster));
      if (ix >= 0 && iy >= 0 && ix < frame.nx && iy < frame.ny) mask[frame.at(ix, iy)] = 1;
    }
  }

  const std::vector<uint8_t> fat = dilate_by_disk(mask, frame, eps);
  std::vector<Eigen::Vector2d> contour = outer_contour(marching_squares(fat, frame));
  if (contour.size() < 16) raise(ErrorKind::RasterTooCoarse, "outer contour degenerate");
  ClosedCurve out;
  out.vertices = std::move(contour);
  out.counterclockwise = true;
  return out;
}

bool normals_outward_consistent(const LegendrianLoop& l) {
  const size_t n = l.points.size();
  size_t good = 0;
  for (size_t i = 0; i < n; ++i) {
    const Eigen::Vector2d tangent =
        base2(l.points[(i + 1) % n]) - base2(l.points[(i + n - 1) % n]);
    const Eigen::Vector2d outward(tangent.y(), -tangent.x());
    if (outward.x() * l.points[i].normal[0] + outward.y() * l.points[i].normal[1] > 0.0) ++good;
  }
  return 2 * good > n;
}

namespace {

double point_to_loop_r4(const Eigen::Vector4d& p, const std::vector<Eigen::Vector4d>& loop) {
  double best = std::numeric_limits<double>::infinity();
  const size_t n = loop.size();
  for (size_t i = 0; i < n; ++i) {
    const Eigen::Vector4d& a = loop[i];
    const Eigen::Vector4d& b = loop[(i + 1) % n];
    const Eigen::Vector4d ab = b - a;
    const double len2 = ab.squaredNorm();
    double t = len2 > 0.0 ? (p - a).dot(ab) / len2 : 0.0;
    t = std::clamp(t, 0.0, 1.0);
    best = std::min(best, (p - (a + t * ab)).squaredNorm());
  }
  return std::sqrt(best);
}

std::vector<Eigen::Vector4d> loop_r4(const LegendrianLoop& l) {
  std::vector<Eigen::Vector4d> v;
  v.reserve(l.points.size());
  for (const auto& p : l.points)
    v.emplace_back(p.base[0], p.base[1], p.normal[0], p.normal[1]);
  return v;
}

}  // namespace

double loop_t1_distance(const LegendrianLoop& a, const LegendrianLoop& b) {
  const std::vector<Eigen::Vector4d> ra = loop_r4(a);
  const std::vector<Eigen::Vector4d> rb = loop_r4(b);
  auto directed = [](const std::vector<Eigen::Vector4d>& s, const std::vector<Eigen::Vector4d>& t) {
    double sup = 0.0;
    const size_t n = s.size();
    for (size_t i = 0; i < n; ++i) {
      sup = std::max(sup, point_to_loop_r4(s[i], t));
      const Eigen::Vector4d mid = 0.5 * (s[i] + s[(i + 1) % n]);
      sup = std::max(sup, point_to_loop_r4(mid, t));
    }
    return sup;
  };
  return std::max(directed(ra, rb), directed(rb, ra));
}

double curve_hausdorff(const std::vector<Eigen::Vector2d>& a,
                       const std::vector<Eigen::Vector2d>& b) {
  auto directed = [](const std::vector<Eigen::Vector2d>& s, const std::vector<Eigen::Vector2d>& t) {
    double sup = 0.0;
    const size_t ns = s.size(), nt = t.size();
    auto point_dist = [&](const Eigen::Vector2d& p) {
      double best = std::numeric_limits<double>::infinity();
      for (size_t j = 0; j < nt; ++j)
        best = std::min(best, segment_distance2(p, t[j], t[(j + 1) % nt]));
      return std::sqrt(best);
    };
    for (size_t i = 0; i < ns; ++i) {
      sup = std::max(sup, point_dist(s[i]));
      sup = std::max(sup, point_dist(0.5 * (s[i] + s[(i + 1) % ns])));
    }
    return sup;
  };
  return std::max(directed(a, b), directed(b, a));
}

double curve_hausdorff(const ClosedCurve& a, const ClosedCurve& b) {
  return curve_hausdorff(a.vertices, b.vertices);
}

double max_contact_residual(const LegendrianLoop& l) {
  return max_abs_contact_residual(l.points);
}

Eigen::Vector3d loop_chart_tangent(const LegendrianLoop& l, size_t i) {
  const size_t n = l.points.size();
  const auto& prev = l.points[(i + n - 1) % n];
  const auto& next = l.points[(i + 1) % n];
  Eigen::Vector3d t;
  t << next.base[0] - prev.base[0], next.base[1] - prev.base[1],
      wrap_angle(next.normal.angle() - prev.normal.angle());
  const double norm = t.norm();
  if (norm < 1e-300) raise(ErrorKind::SingularFront, "zero chart tangent");
  return t / norm;
}

size_t nearest_loop_vertex(const LegendrianLoop& l, const TangentPoint& p) {
  size_t best = 0;
  double best_d = std::numeric_limits<double>::infinity();
  for (size_t i = 0; i < l.points.size(); ++i) {
    const double d = t1_distance(l.points[i], p);
    if (d < best_d) {
      best_d = d;
      best = i;
    }
  }
  return best;
}

}  // namespace setdyn
