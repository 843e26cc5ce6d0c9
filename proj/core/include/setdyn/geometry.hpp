#pragma once

#include <Eigen/Dense>
#include <span>
#include <vector>

#include "setdyn/errors.hpp"

namespace setdyn {

/// Ambient state-space points. Dimension is fixed per scenario (d >= 2).
using Point = Eigen::VectorXd;

/// Axis-aligned box, the working window of a scenario.
struct Box {
  Eigen::VectorXd lo;
  Eigen::VectorXd hi;

  int dimension() const { return static_cast<int>(lo.size()); }
  bool contains(const Eigen::VectorXd& x) const {
    for (int i = 0; i < lo.size(); ++i)
      if (x[i] < lo[i] || x[i] > hi[i]) return false;
    return true;
  }
  Eigen::VectorXd center() const { return 0.5 * (lo + hi); }
};

/// Unit vector in R^d. The norm-1 invariant is kept within 1e-12; every
/// construction path renormalizes, so drift cannot accumulate over long
/// iterations.
class Direction {
public:
  static constexpr double kNormTolerance = 1e-12;
  static constexpr double kDegenerateNorm = 1e-14;

  explicit Direction(Eigen::VectorXd unit);

  const Eigen::VectorXd& vec() const { return v_; }
  double operator[](Eigen::Index i) const { return v_[i]; }
  int dimension() const { return static_cast<int>(v_.size()); }

  /// Planar angle atan2(n2, n1); only meaningful for d = 2.
  double angle() const { return std::atan2(v_[1], v_[0]); }
  static Direction from_angle(double theta);

private:
  Eigen::VectorXd v_;
};

/// A point of the unit tangent bundle T1 R^d.
struct TangentPoint {
  Point base;
  Direction normal;
};

/// v / ||v||. Throws DegenerateDirection when ||v|| < 1e-14, which is how a
/// singular Jacobian application shows up downstream.
Direction normalize(const Eigen::VectorXd& v);

/// Product-metric distance on T1 R^d: sqrt(|dx|^2 + |dn|^2).
double t1_distance(const TangentPoint& p, const TangentPoint& q);

/// Hausdorff distance between finite non-empty point sets under the
/// Euclidean metric: max of the two directed sup-inf semi-distances.
/// Exact on the samples; planar sets use a uniform-grid index internally.
double hausdorff_distance(std::span<const Point> a, std::span<const Point> b);

/// Directed semi-distance sup_{x in a} dist(x, b).
double directed_hausdorff(std::span<const Point> a, std::span<const Point> b);

/// Hausdorff distance between finite TangentPoint sets under the product
/// metric. Dominates hausdorff_distance of the base projections.
double t1_hausdorff_distance(std::span<const TangentPoint> p,
                             std::span<const TangentPoint> q);

/// Per-edge contact residuals <n_i, x_{i+1}-x_i> / |x_{i+1}-x_i| of a cyclic
/// tangent-point sequence (indices mod size). Zero for an exact Legendrian;
/// O(h) for a discretization with edge length h. Throws ZeroEdge when
/// consecutive base points coincide within 1e-14.
std::vector<double> contact_residual(std::span<const TangentPoint> loop);

double max_abs_contact_residual(std::span<const TangentPoint> loop);

}  // namespace setdyn
