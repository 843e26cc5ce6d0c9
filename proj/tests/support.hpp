#pragma once

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "setdyn/front.hpp"
#include "setdyn/systems.hpp"

namespace setdyn::test {

inline Point pt(double x, double y) {
  Eigen::VectorXd p(2);
  p << x, y;
  return p;
}

inline TangentPoint tp(double x, double y, double nx, double ny) {
  return TangentPoint{pt(x, y), normalize(pt(nx, ny))};
}

inline Box window2(double half) {
  Box b;
  b.lo = pt(-half, -half);
  b.hi = pt(half, half);
  return b;
}

inline Scenario affine_scenario(double lambda, double eps, double half = 1.2) {
  return make_scenario(make_affine_map(lambda), eps, window2(half));
}

inline Scenario rotation_scenario(double lambda, double theta, double eps, double half = 1.2) {
  return make_scenario(make_rotation_map(lambda, theta), eps, window2(half));
}

inline Scenario diagonal_scenario(double alpha, double beta, double eps, double half = 1.2) {
  return make_scenario(make_diagonal_map(alpha, beta), eps, window2(half));
}

inline Scenario radial_scenario(double lambda, double a, double eps, double half = 1.2) {
  return make_scenario(make_radial_map(lambda, a), eps, window2(half));
}

inline Scenario bump_scenario(double lambda, double delta, double eps, double half = 1.2,
                              double r0 = 0.8, double r1 = 1.15) {
  return make_scenario(make_bump_shear_map(lambda, delta, r0, r1), eps, window2(half));
}

// Scalar fixed-point oracle for the radial catalog map: the invariant-disk
// radius solves r = r (lambda + a r^2) + eps. Bisection to 1e-12, independent
// of any library code path.
inline double radial_fixed_radius(double lambda, double a, double eps) {
  auto g = [&](double r) { return r * (lambda + a * r * r) + eps - r; };
  double lo = 0.0, hi = 1.0;
  while (g(hi) > 0.0) hi *= 2.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (g(mid) > 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

// Dense samples of a circle, for point-set distance oracles.
inline std::vector<Point> circle_samples(double cx, double cy, double r, int n) {
  std::vector<Point> v;
  v.reserve(n);
  for (int i = 0; i < n; ++i) {
    const double t = 2.0 * std::numbers::pi * i / n;
    v.push_back(pt(cx + r * std::cos(t), cy + r * std::sin(t)));
  }
  return v;
}

inline std::vector<TangentPoint> lifted_circle_samples(double r, int n) {
  std::vector<TangentPoint> v;
  v.reserve(n);
  for (int i = 0; i < n; ++i) {
    const double t = 2.0 * std::numbers::pi * i / n;
    v.push_back(tp(r * std::cos(t), r * std::sin(t), std::cos(t), std::sin(t)));
  }
  return v;
}

// Smooth star-shaped curve r(phi) = r0 (1 + sum a_k cos(k phi + p_k)) with
// coefficients small enough to keep the curve convex-ish and simple.
inline ClosedCurve random_star_curve(std::mt19937_64& rng, double r0 = 0.7, int n = 720,
                                     double amp = 0.12) {
  std::uniform_real_distribution<double> u(0.0, 2.0 * std::numbers::pi);
  std::uniform_real_distribution<double> s(-1.0, 1.0);
  double a[4], p[4];
  for (int k = 0; k < 4; ++k) {
    a[k] = amp * s(rng) / ((k + 2) * (k + 2));
    p[k] = u(rng);
  }
  std::vector<Eigen::Vector2d> v;
  v.reserve(n);
  for (int i = 0; i < n; ++i) {
    const double t = 2.0 * std::numbers::pi * i / n;
    double r = 1.0;
    for (int k = 0; k < 4; ++k) r += a[k] * std::cos((k + 2) * t + p[k]);
    r *= r0;
    v.emplace_back(r * std::cos(t), r * std::sin(t));
  }
  return make_closed_curve(std::move(v));
}

// Brute-force O(N^2) Hausdorff oracle for cross-checking the indexed one.
inline double hausdorff_brute(const std::vector<Point>& a, const std::vector<Point>& b) {
  auto directed = [](const std::vector<Point>& s, const std::vector<Point>& t) {
    double sup = 0.0;
    for (const auto& x : s) {
      double inf = std::numeric_limits<double>::infinity();
      for (const auto& y : t) inf = std::min(inf, (x - y).norm());
      sup = std::max(sup, inf);
    }
    return sup;
  };
  return std::max(directed(a, b), directed(b, a));
}

}  // namespace setdyn::test
