#include "setdyn/boundary.hpp"

#include <cmath>
#include <numbers>

namespace setdyn {

double wrap_angle(double a) {
  while (a > std::numbers::pi) a -= 2.0 * std::numbers::pi;
  while (a < -std::numbers::pi) a += 2.0 * std::numbers::pi;
  return a;
}

namespace {

// Normalized f'(x)^{-T} n without forming the inverse: solve f'(x)^T w = n.
Direction cotangent_push(const Eigen::MatrixXd& jac, const Direction& n) {
  const Eigen::VectorXd w = jac.transpose().partialPivLu().solve(n.vec());
  return normalize(w);
}

}  // namespace

TangentPoint half_map(const TangentPoint& p, const Scenario& s) {
  const Eigen::MatrixXd jac = eval_jacobian(s, p.base);
  return TangentPoint{eval_forward(s, p.base), cotangent_push(jac, p.normal)};
}

TangentPoint geodesic_shift(const TangentPoint& p, double t) {
  return TangentPoint{p.base + t * p.normal.vec(), p.normal};
}

TangentPoint boundary_map(const TangentPoint& p, const Scenario& s) {
  const Eigen::MatrixXd jac = eval_jacobian(s, p.base);
  const Direction w = cotangent_push(jac, p.normal);
  return TangentPoint{eval_forward(s, p.base) + s.epsilon * w.vec(), w};
}

TangentPoint boundary_map_inverse(const TangentPoint& q, const Scenario& s) {
  const Eigen::VectorXd x = eval_inverse(s, q.base - s.epsilon * q.normal.vec());
  const Eigen::MatrixXd jac = eval_jacobian(s, x);
  return TangentPoint{x, normalize(jac.transpose() * q.normal.vec())};
}

Eigen::Vector3d to_chart(const TangentPoint& p) {
  return {p.base[0], p.base[1], p.normal.angle()};
}

TangentPoint from_chart(const Eigen::Vector3d& c) {
  Eigen::VectorXd base(2);
  base << c[0], c[1];
  return TangentPoint{std::move(base), Direction::from_angle(c[2])};
}

namespace {

template <class Map>
Eigen::Matrix3d chart_differential(const TangentPoint& p, double h, Map&& map) {
  const Eigen::Vector3d c0 = to_chart(p);
  Eigen::Matrix3d d;
  for (int j = 0; j < 3; ++j) {
    Eigen::Vector3d cp = c0, cm = c0;
    cp[j] += h;
    cm[j] -= h;
    const Eigen::Vector3d yp = to_chart(map(from_chart(cp)));
    const Eigen::Vector3d ym = to_chart(map(from_chart(cm)));
    d(0, j) = (yp[0] - ym[0]) / (2.0 * h);
    d(1, j) = (yp[1] - ym[1]) / (2.0 * h);
    d(2, j) = wrap_angle(yp[2] - ym[2]) / (2.0 * h);
  }
  return d;
}

}  // namespace

Eigen::Matrix3d boundary_map_differential(const TangentPoint& p, const Scenario& s, double h) {
  return chart_differential(p, h, [&](const TangentPoint& q) { return boundary_map(q, s); });
}

Eigen::Matrix3d half_map_differential(const TangentPoint& p, const Scenario& s, double h) {
  return chart_differential(p, h, [&](const TangentPoint& q) { return half_map(q, s); });
}

double liouville_eval(const TangentPoint& p, const Eigen::Vector3d& chart_vector) {
  return p.normal[0] * chart_vector[0] + p.normal[1] * chart_vector[1];
}

BoundaryJet boundary_jet(const TangentPoint& p, const Scenario& s, double h) {
  return BoundaryJet{p, boundary_map(p, s), boundary_map_differential(p, s, h)};
}

}  // namespace setdyn
