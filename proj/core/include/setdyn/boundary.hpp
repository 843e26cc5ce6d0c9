#pragma once

#include "setdyn/systems.hpp"

namespace setdyn {

/// The boundary map E(x, n) = (f(x) + eps*w, w) with w the normalized
/// f'(x)^{-T} n, computed by solving the transposed linear system. Orbits of
/// E project to boundaries of the set-valued orbits downstairs.
TangentPoint boundary_map(const TangentPoint& p, const Scenario& s);

/// E^{-1}(x, n) = (f^{-1}(x - eps*n), normalized f'(.)^T n).
TangentPoint boundary_map_inverse(const TangentPoint& q, const Scenario& s);

/// First factor h_f(x, n) = (f(x), normalized f'(x)^{-T} n).
TangentPoint half_map(const TangentPoint& p, const Scenario& s);

/// Geodesic-flow time-t map phi_t(x, n) = (x + t*n, n).
TangentPoint geodesic_shift(const TangentPoint& p, double t);

// Planar chart (x1, x2, theta), n = (cos theta, sin theta).
Eigen::Vector3d to_chart(const TangentPoint& p);
TangentPoint from_chart(const Eigen::Vector3d& c);

/// Central-difference differential of E in the planar chart. The theta row is
/// unwrapped so the differential is immune to branch jumps.
Eigen::Matrix3d boundary_map_differential(const TangentPoint& p, const Scenario& s,
                                          double h = 1e-6);

/// Same stencil for the half map h_f (used by the conformal-factor checks).
Eigen::Matrix3d half_map_differential(const TangentPoint& p, const Scenario& s,
                                      double h = 1e-6);

/// Liouville form a = n dx evaluated on a chart vector: <n, v_base>.
double liouville_eval(const TangentPoint& p, const Eigen::Vector3d& chart_vector);

struct BoundaryJet {
  TangentPoint point;
  TangentPoint image;
  Eigen::Matrix3d differential;
};

BoundaryJet boundary_jet(const TangentPoint& p, const Scenario& s, double h = 1e-6);

/// Smallest absolute angular difference a - b on the circle.
double wrap_angle(double a);

}  // namespace setdyn
