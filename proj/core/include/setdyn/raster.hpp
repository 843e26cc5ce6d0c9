#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

namespace setdyn {

/// A planar raster of square cells. Cell (ix, iy) has center
/// (x0 + (ix+0.5)*cell, y0 + (iy+0.5)*cell); masks are row-major, iy outer.
struct RasterFrame {
  double x0 = 0.0;
  double y0 = 0.0;
  double cell = 1.0;
  int nx = 0;
  int ny = 0;

  size_t size() const { return static_cast<size_t>(nx) * ny; }
  double cx(int ix) const { return x0 + (ix + 0.5) * cell; }
  double cy(int iy) const { return y0 + (iy + 0.5) * cell; }
  size_t at(int ix, int iy) const { return static_cast<size_t>(iy) * nx + ix; }
};

/// Even-odd scanline fill of a closed polygon, sampled at cell centers.
std::vector<uint8_t> fill_polygon(const std::vector<Eigen::Vector2d>& polygon,
                                  const RasterFrame& frame);

/// Exact Euclidean distance transform (Felzenszwalb-Huttenlocher): for each
/// cell, squared distance in cell units to the nearest nonzero mask cell.
/// Cells of an empty mask get +inf.
std::vector<double> edt_squared(const std::vector<uint8_t>& mask, int nx, int ny);

/// mask dilated by a closed disk of the given radius (world units), measured
/// center-to-center.
std::vector<uint8_t> dilate_by_disk(const std::vector<uint8_t>& mask,
                                    const RasterFrame& frame, double radius);

/// All closed iso-0.5 contours of a binary mask, traced through lattice-edge
/// midpoints (marching squares, foreground 4-connected at saddles). Loops
/// come out simple and counterclockwise.
std::vector<std::vector<Eigen::Vector2d>> marching_squares(
    const std::vector<uint8_t>& mask, const RasterFrame& frame);

/// The contour enclosing the largest area (the outer boundary).
std::vector<Eigen::Vector2d> outer_contour(
    const std::vector<std::vector<Eigen::Vector2d>>& contours);

double polygon_signed_area(const std::vector<Eigen::Vector2d>& polygon);
double polygon_perimeter(const std::vector<Eigen::Vector2d>& polygon);

}  // namespace setdyn
