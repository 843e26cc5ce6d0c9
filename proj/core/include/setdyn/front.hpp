#pragma once

#include <utility>

#include "setdyn/boundary.hpp"
#include "setdyn/raster.hpp"

namespace setdyn {

/// A simple closed polyline in the plane, stored counterclockwise.
struct ClosedCurve {
  std::vector<Eigen::Vector2d> vertices;
  bool counterclockwise = true;
};

/// Validates (>= 16 vertices, consecutive vertices distinct, simple by
/// segment sweep) and normalizes the orientation to counterclockwise.
ClosedCurve make_closed_curve(std::vector<Eigen::Vector2d> vertices);

bool is_simple_polygon(const std::vector<Eigen::Vector2d>& vertices);

ClosedCurve circle_curve(const Eigen::Vector2d& center, double radius, int n = 360);
ClosedCurve ellipse_curve(const Eigen::Vector2d& center, double a, double b, int n = 360);

/// Discretized Legendrian loop in T1 R^2: cyclic tangent points with a target
/// base edge length. Loops entering the propagation pipeline must satisfy
/// max |contact residual| <= 0.1.
struct LegendrianLoop {
  std::vector<TangentPoint> points;
  double target_edge_length = 0.0;
};

struct SingularityReport {
  std::vector<int> flagged_indices;
  double min_projection_speed = 1.0;
};

/// Arc-length uniform resampling of a closed polyline to edge length ~h
/// (vertex count max(16, round(perimeter/h))).
std::vector<Eigen::Vector2d> resample_closed_polyline(
    const std::vector<Eigen::Vector2d>& vertices, double h);

/// Lift to the outer unit normal bundle: resample to h_front, normal at i is
/// the cyclic central-difference tangent rotated by -90 degrees (outward for
/// counterclockwise input). The projection reproduces the resampled curve
/// exactly.
LegendrianLoop lift_closed_curve(const ClosedCurve& c, double h_front);

/// Applies the boundary map pointwise `steps` times; after each application
/// the loop is checked for projection singularities (SingularFront), then
/// resampled to h_front with normals carried by angle interpolation, then
/// checked for contact drift (max residual above 0.1 aborts).
LegendrianLoop propagate_loop(const LegendrianLoop& l, const Scenario& s, int steps);

/// Base polyline of the loop. Simple-ness of the projection is reported
/// through the optional flag, never enforced.
ClosedCurve front_projection(const LegendrianLoop& l, bool* simple = nullptr);

/// Lift, shift by the geodesic flow phi_offset, report singularities of the
/// shifted loop, project.
std::pair<ClosedCurve, SingularityReport> equidistant_front(const ClosedCurve& c,
                                                            double offset, double h_front);

/// Flags vertex i when the relative projection speed
/// |x_{i+1}-x_{i-1}| / (|x_{i+1}-x_{i-1}| + |theta_{i+1}-theta_{i-1}|)
/// drops below tau: the discrete rank drop of the front projection.
SingularityReport detect_projection_singularities(const LegendrianLoop& l, double tau = 0.05);

/// Iterates single propagation steps until consecutive loops are closer than
/// tol in the loop d1 metric; returns the fixed loop.
LegendrianLoop relax_to_invariant_loop(const LegendrianLoop& l0, const Scenario& s,
                                       double tol, int max_iter);

/// Brute-force equidistant oracle: even-odd rasterization of the region
/// bounded by c, dilation by a disk of radius eps, marching-squares outer
/// contour. Requires raster <= eps/10.
ClosedCurve rasterized_minkowski_boundary(const ClosedCurve& c, double eps, double raster);

/// phi_offset applied pointwise, without resampling.
LegendrianLoop offset_loop(const LegendrianLoop& l, double offset);

/// True when the carried normals agree with the loop's own outward side
/// (tangent rotated -90) at more than half the vertices. An inner offset
/// that has passed through its caustic fails this.
bool normals_outward_consistent(const LegendrianLoop& l);

/// Hausdorff distance between loops as curves in T1 R^2: vertices (and edge
/// midpoints) of one against the product-space segments of the other,
/// symmetrized. Robust against resampling phase drift, unlike the finite
/// point-set distance.
double loop_t1_distance(const LegendrianLoop& a, const LegendrianLoop& b);

/// Hausdorff distance between closed polylines as planar sets (vertex and
/// midpoint samples against segments, symmetrized).
double curve_hausdorff(const ClosedCurve& a, const ClosedCurve& b);
double curve_hausdorff(const std::vector<Eigen::Vector2d>& a,
                       const std::vector<Eigen::Vector2d>& b);

double max_contact_residual(const LegendrianLoop& l);

/// Cyclic central-difference chart tangent at vertex i, normalized.
Eigen::Vector3d loop_chart_tangent(const LegendrianLoop& l, size_t i);

/// Index of the loop vertex closest to p in the product metric.
size_t nearest_loop_vertex(const LegendrianLoop& l, const TangentPoint& p);

}  // namespace setdyn
