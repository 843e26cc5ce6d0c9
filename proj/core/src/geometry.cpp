#include "setdyn/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace setdyn {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::DegenerateDirection: return "DegenerateDirection";
    case ErrorKind::EmptySet: return "EmptySet";
    case ErrorKind::ZeroEdge: return "ZeroEdge";
    case ErrorKind::NonFinite: return "NonFinite";
    case ErrorKind::SingularJacobian: return "SingularJacobian";
    case ErrorKind::NoConvergence: return "NoConvergence";
    case ErrorKind::ValidationFailed: return "ValidationFailed";
    case ErrorKind::WindowEscape: return "WindowEscape";
    case ErrorKind::NoStabilization: return "NoStabilization";
    case ErrorKind::CertificateFailed: return "CertificateFailed";
    case ErrorKind::NotInvariant: return "NotInvariant";
    case ErrorKind::SelfIntersecting: return "SelfIntersecting";
    case ErrorKind::TooFewVertices: return "TooFewVertices";
    case ErrorKind::SingularFront: return "SingularFront";
    case ErrorKind::ContactDrift: return "ContactDrift";
    case ErrorKind::NonConvergent: return "NonConvergent";
    case ErrorKind::NotInvariantLoop: return "NotInvariantLoop";
    case ErrorKind::RasterTooCoarse: return "RasterTooCoarse";
    case ErrorKind::BaseNotAttracting: return "BaseNotAttracting";
    case ErrorKind::ConfigError: return "ConfigError";
  }
  return "UnknownError";
}

Direction::Direction(Eigen::VectorXd unit) : v_(std::move(unit)) {
  const double n = v_.norm();
  if (!std::isfinite(n) || std::abs(n - 1.0) > kNormTolerance)
    raise(ErrorKind::DegenerateDirection,
          "Direction constructed from non-unit vector, |v| = " + std::to_string(n));
}

Direction Direction::from_angle(double theta) {
  Eigen::VectorXd v(2);
  v << std::cos(theta), std::sin(theta);
  return Direction(std::move(v));
}

Direction normalize(const Eigen::VectorXd& v) {
  if (!v.allFinite()) raise(ErrorKind::DegenerateDirection, "non-finite input vector");
  const double n = v.norm();
  if (n < Direction::kDegenerateNorm)
    raise(ErrorKind::DegenerateDirection, "vector norm " + std::to_string(n) + " below 1e-14");
  return Direction(v / n);
}

double t1_distance(const TangentPoint& p, const TangentPoint& q) {
  const double dx2 = (p.base - q.base).squaredNorm();
  const double dn2 = (p.normal.vec() - q.normal.vec()).squaredNorm();
  return std::sqrt(dx2 + dn2);
}

namespace {

// Uniform-grid point index over a planar point set. Query cost is a ring
// expansion around the query cell; exact nearest distance is returned.
class PlanarGridIndex {
public:
  explicit PlanarGridIndex(std::span<const Point> pts) : pts_(pts) {
    lo_x_ = lo_y_ = std::numeric_limits<double>::infinity();
    double hi_x = -lo_x_, hi_y = -lo_y_;
    for (const auto& p : pts) {
      lo_x_ = std::min(lo_x_, p[0]);
      lo_y_ = std::min(lo_y_, p[1]);
      hi_x = std::max(hi_x, p[0]);
      hi_y = std::max(hi_y, p[1]);
    }
    const double extent = std::max({hi_x - lo_x_, hi_y - lo_y_, 1e-12});
    const int target = std::max(1, static_cast<int>(std::sqrt(static_cast<double>(pts.size()))));
    n_ = std::min(target, 1024);
    cell_ = extent / n_;
    nx_ = std::max(1, static_cast<int>(std::floor((hi_x - lo_x_) / cell_)) + 1);
    ny_ = std::max(1, static_cast<int>(std::floor((hi_y - lo_y_) / cell_)) + 1);
    buckets_.resize(static_cast<size_t>(nx_) * ny_);
    for (size_t i = 0; i < pts.size(); ++i)
      buckets_[bucket_of(pts[i][0], pts[i][1])].push_back(static_cast<int>(i));
  }

  double nearest_distance(const Point& q) const {
    const int cx = clampi(static_cast<int>(std::floor((q[0] - lo_x_) / cell_)), 0, nx_ - 1);
    const int cy = clampi(static_cast<int>(std::floor((q[1] - lo_y_) / cell_)), 0, ny_ - 1);
    double best2 = std::numeric_limits<double>::infinity();
    for (int ring = 0;; ++ring) {
      // Once a candidate is found, one extra ring guarantees exactness:
      // any point outside ring r is at least (r-1)*cell away.
      if (best2 < std::numeric_limits<double>::infinity()) {
        const double safe = (ring - 1) * cell_;
        if (safe > 0 && safe * safe > best2) break;
      }
      bool any_cell = false;
      for (int iy = cy - ring; iy <= cy + ring; ++iy) {
        for (int ix = cx - ring; ix <= cx + ring; ++ix) {
          if (std::max(std::abs(ix - cx), std::abs(iy - cy)) != ring) continue;
          if (ix < 0 || iy < 0 || ix >= nx_ || iy >= ny_) continue;
          any_cell = true;
          for (int idx : buckets_[static_cast<size_t>(iy) * nx_ + ix]) {
            const double dx = pts_[idx][0] - q[0];
            const double dy = pts_[idx][1] - q[1];
            best2 = std::min(best2, dx * dx + dy * dy);
          }
        }
      }
      if (!any_cell && ring > nx_ + ny_) break;
    }
    return std::sqrt(best2);
  }

private:
  static int clampi(int v, int lo, int hi) { return std::min(std::max(v, lo), hi); }
  size_t bucket_of(double x, double y) const {
    const int ix = clampi(static_cast<int>(std::floor((x - lo_x_) / cell_)), 0, nx_ - 1);
    const int iy = clampi(static_cast<int>(std::floor((y - lo_y_) / cell_)), 0, ny_ - 1);
    return static_cast<size_t>(iy) * nx_ + ix;
  }

  std::span<const Point> pts_;
  double lo_x_, lo_y_, cell_;
  int n_, nx_, ny_;
  std::vector<std::vector<int>> buckets_;
};

double directed_brute(std::span<const Point> a, std::span<const Point> b) {
  double sup = 0.0;
  for (const auto& x : a) {
    double inf2 = std::numeric_limits<double>::infinity();
    for (const auto& y : b) inf2 = std::min(inf2, (x - y).squaredNorm());
    sup = std::max(sup, std::sqrt(inf2));
  }
  return sup;
}

void check_nonempty(size_t na, size_t nb) {
  if (na == 0 || nb == 0) raise(ErrorKind::EmptySet, "Hausdorff distance of an empty set");
}

}  // namespace

double directed_hausdorff(std::span<const Point> a, std::span<const Point> b) {
  check_nonempty(a.size(), b.size());
  if (b[0].size() == 2 && a.size() * b.size() > 65536) {
    PlanarGridIndex index(b);
    double sup = 0.0;
    for (const auto& x : a) sup = std::max(sup, index.nearest_distance(x));
    return sup;
  }
  return directed_brute(a, b);
}

double hausdorff_distance(std::span<const Point> a, std::span<const Point> b) {
  return std::max(directed_hausdorff(a, b), directed_hausdorff(b, a));
}

double t1_hausdorff_distance(std::span<const TangentPoint> p,
                             std::span<const TangentPoint> q) {
  check_nonempty(p.size(), q.size());
  if (p[0].base.size() != q[0].base.size())
    raise(ErrorKind::EmptySet, "tangent point sets of mismatched ambient dimension");
  auto directed = [](std::span<const TangentPoint> s, std::span<const TangentPoint> t) {
    double sup = 0.0;
    for (const auto& x : s) {
      double inf = std::numeric_limits<double>::infinity();
      for (const auto& y : t) {
        const double dx2 = (x.base - y.base).squaredNorm();
        if (dx2 >= inf * inf) continue;
        const double d2 = dx2 + (x.normal.vec() - y.normal.vec()).squaredNorm();
        inf = std::min(inf, std::sqrt(d2));
      }
      sup = std::max(sup, inf);
    }
    return sup;
  };
  return std::max(directed(p, q), directed(q, p));
}

std::vector<double> contact_residual(std::span<const TangentPoint> loop) {
  if (loop.size() < 3)
    raise(ErrorKind::TooFewVertices, "contact residual needs at least 3 vertices");
  std::vector<double> res(loop.size());
  for (size_t i = 0; i < loop.size(); ++i) {
    const size_t j = (i + 1) % loop.size();
    const Eigen::VectorXd edge = loop[j].base - loop[i].base;
    const double len = edge.norm();
    if (len < 1e-14)
      raise(ErrorKind::ZeroEdge, "coincident consecutive base points at index " + std::to_string(i));
    res[i] = loop[i].normal.vec().dot(edge) / len;
  }
  return res;
}

double max_abs_contact_residual(std::span<const TangentPoint> loop) {
  double m = 0.0;
  for (double r : contact_residual(loop)) m = std::max(m, std::abs(r));
  return m;
}

}  // namespace setdyn
