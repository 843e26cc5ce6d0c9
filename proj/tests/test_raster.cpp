#include <doctest.h>

#include <numbers>

#include "setdyn/front.hpp"
#include "setdyn/raster.hpp"
#include "support.hpp"

using namespace setdyn;
using namespace setdyn::test;

namespace {

RasterFrame frame_square(double half, double cell) {
  RasterFrame f;
  f.x0 = -half;
  f.y0 = -half;
  f.cell = cell;
  f.nx = static_cast<int>(std::llround(2 * half / cell));
  f.ny = f.nx;
  return f;
}

}  // namespace

TEST_CASE("polygon fill covers a disk to cell accuracy") {
  const RasterFrame f = frame_square(1.0, 0.01);
  const ClosedCurve c = circle_curve({0, 0}, 0.5, 720);
  const auto mask = fill_polygon(c.vertices, f);
  for (int iy = 0; iy < f.ny; ++iy)
    for (int ix = 0; ix < f.nx; ++ix) {
      const bool inside = std::hypot(f.cx(ix), f.cy(iy)) <= 0.5;
      const bool filled = mask[f.at(ix, iy)] != 0;
      if (filled != inside)  // disagreement only right at the boundary
        CHECK(std::abs(std::hypot(f.cx(ix), f.cy(iy)) - 0.5) <= 0.012);
    }
}

TEST_CASE("edt squared is exact against brute force on a sparse mask") {
  const int nx = 40, ny = 32;
  std::vector<uint8_t> mask(static_cast<size_t>(nx) * ny, 0);
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> ux(0, nx - 1), uy(0, ny - 1);
  std::vector<std::pair<int, int>> sites;
  for (int k = 0; k < 25; ++k) {
    const int x = ux(rng), y = uy(rng);
    mask[static_cast<size_t>(y) * nx + x] = 1;
    sites.emplace_back(x, y);
  }
  const auto d2 = edt_squared(mask, nx, ny);
  for (int y = 0; y < ny; ++y)
    for (int x = 0; x < nx; ++x) {
      double best = std::numeric_limits<double>::infinity();
      for (auto [sx, sy] : sites)
        best = std::min(best, double((x - sx) * (x - sx) + (y - sy) * (y - sy)));
      CHECK(d2[static_cast<size_t>(y) * nx + x] == doctest::Approx(best));
    }
}

TEST_CASE("disk dilation of a disk is the enlarged disk") {
  const RasterFrame f = frame_square(1.0, 0.005);
  const auto mask = fill_polygon(circle_curve({0, 0}, 0.3, 720).vertices, f);
  const auto fat = dilate_by_disk(mask, f, 0.2);
  for (int iy = 0; iy < f.ny; ++iy)
    for (int ix = 0; ix < f.nx; ++ix) {
      const double r = std::hypot(f.cx(ix), f.cy(iy));
      if (fat[f.at(ix, iy)] != (r <= 0.5 ? 1 : 0))
        CHECK(std::abs(r - 0.5) <= 2.0 * f.cell);
    }
}

TEST_CASE("marching squares of a disk mask is a near-circle, counterclockwise") {
  const RasterFrame f = frame_square(1.0, 0.005);
  const auto mask = fill_polygon(circle_curve({0, 0}, 0.5, 1440).vertices, f);
  const auto contours = marching_squares(mask, f);
  REQUIRE(!contours.empty());
  const auto outer = outer_contour(contours);
  REQUIRE(outer.size() > 100);
  CHECK(polygon_signed_area(outer) > 0.0);
  CHECK(polygon_signed_area(outer) == doctest::Approx(std::numbers::pi * 0.25).epsilon(0.01));
  for (const auto& v : outer) CHECK(std::abs(v.norm() - 0.5) <= 2.0 * f.cell);
  CHECK(polygon_perimeter(outer) == doctest::Approx(std::numbers::pi).epsilon(0.05));
}

TEST_CASE("marching squares separates disjoint blobs") {
  const RasterFrame f = frame_square(1.0, 0.01);
  auto mask = fill_polygon(circle_curve({-0.5, 0}, 0.2, 360).vertices, f);
  const auto mask2 = fill_polygon(circle_curve({0.5, 0}, 0.3, 360).vertices, f);
  for (size_t i = 0; i < mask.size(); ++i) mask[i] |= mask2[i];
  const auto contours = marching_squares(mask, f);
  CHECK(contours.size() == 2);
  const auto outer = outer_contour(contours);
  CHECK(std::abs(polygon_signed_area(outer)) ==
        doctest::Approx(std::numbers::pi * 0.09).epsilon(0.02));
}
