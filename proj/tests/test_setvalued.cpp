#include <doctest.h>

#include <algorithm>
#include <numbers>

#include "setdyn/front.hpp"
#include "setdyn/io.hpp"
#include "setdyn/setvalued.hpp"
#include "support.hpp"

using namespace setdyn;
using namespace setdyn::test;

namespace {

BoxSet disk_covering(const Grid& g, const Eigen::Vector2d& center, double radius) {
  BoxSet s;
  s.grid = g;
  for (int iy = 0; iy < g.ny; ++iy)
    for (int ix = 0; ix < g.nx; ++ix)
      if ((g.center(ix, iy) - center).norm() <= radius) s.cells.push_back({ix, iy});
  return s;
}

double contour_radius_error(const BoxSet& s, double r_expected) {
  const auto contour = boxset_contour(s);
  double worst = 0.0;
  for (const auto& v : contour) worst = std::max(worst, std::abs(v.norm() - r_expected));
  return worst;
}

}  // namespace

TEST_CASE("grid construction validates the multiple-of-h invariant") {
  CHECK_NOTHROW(make_grid(window2(1.2), 0.01));
  CHECK_THROWS_AS(make_grid(window2(1.2), 0.013), Error);
  const Grid g = make_grid(window2(1.2), 0.01);
  CHECK(g.nx == 240);
  CHECK(g.ny == 240);
}

TEST_CASE("image of the invariant disk covering stays within one cell ring") {
  const Scenario s = affine_scenario(0.5, 0.25);
  const Grid g = make_grid(s.window, 0.01);
  const BoxSet disk = disk_covering(g, {0, 0}, 0.5);
  const BoxSet img = image_boxset(disk, s);
  CHECK(within_one_cell_ring(img, disk));
}

TEST_CASE("image of a point covering under the identity is the epsilon ball") {
  const Scenario s = affine_scenario(1.0, 0.25);
  const Grid g = make_grid(s.window, 0.01);
  BoxSet seed;
  seed.grid = g;
  int ix, iy;
  REQUIRE(g.cell_of({0.0, 0.0}, ix, iy));
  seed.cells.push_back({ix, iy});
  const Eigen::Vector2d c0 = g.center(ix, iy);

  const BoxSet img = image_boxset(seed, s);
  const double pad = 1.0 * g.cell_size * std::numbers::sqrt2 / 4.0;
  for (const Cell& c : img.cells) {
    const double d = (g.center(c.ix, c.iy) - c0).norm();
    CHECK(d <= 0.25 + pad + g.cell_size);
  }
  // Superset of the exact ball around the cell's own samples.
  for (int jy = 0; jy < g.ny; ++jy)
    for (int jx = 0; jx < g.nx; ++jx)
      if ((g.center(jx, jy) - c0).norm() <= 0.25 - g.cell_size) {
        const Cell probe{jx, jy};
        CHECK(std::binary_search(img.cells.begin(), img.cells.end(), probe,
                                 [](const Cell& a, const Cell& b) {
                                   return a.iy != b.iy ? a.iy < b.iy : a.ix < b.ix;
                                 }));
      }
}

TEST_CASE("expansive image escapes the window") {
  Box w = window2(2.0);
  const Scenario s = make_scenario(make_affine_map(2.0), 0.1, w);
  const Grid g = make_grid(w, 0.01);
  const BoxSet disk = disk_covering(g, {0, 0}, 1.0);
  CHECK_THROWS_AS(image_boxset(disk, s), Error);
  try {
    image_boxset(disk, s);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::WindowEscape);
  }
}

TEST_CASE("image is monotone in the covering") {
  const Scenario s = radial_scenario(0.5, 0.1, 0.25);
  const Grid g = make_grid(s.window, 0.02);
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-0.5, 0.5);
  auto cell_less = [](const Cell& a, const Cell& b) {
    return a.iy != b.iy ? a.iy < b.iy : a.ix < b.ix;
  };
  for (int it = 0; it < 5; ++it) {
    BoxSet big;
    big.grid = g;
    for (int k = 0; k < 40; ++k) {
      int ix, iy;
      if (g.cell_of({u(rng), u(rng)}, ix, iy)) big.cells.push_back({ix, iy});
    }
    std::sort(big.cells.begin(), big.cells.end(), cell_less);
    big.cells.erase(std::unique(big.cells.begin(), big.cells.end()), big.cells.end());
    BoxSet small;
    small.grid = g;
    for (size_t i = 0; i < big.cells.size(); i += 2) small.cells.push_back(big.cells[i]);

    const BoxSet bi = image_boxset(big, s);
    const BoxSet si = image_boxset(small, s);
    CHECK(std::includes(bi.cells.begin(), bi.cells.end(), si.cells.begin(), si.cells.end(),
                        cell_less));
  }
}

TEST_CASE("single-cell images move continuously") {
  const Scenario s = radial_scenario(0.5, 0.1, 0.25);
  const Grid g = make_grid(s.window, 0.02);
  // Window-wide Jacobian norm bound.
  double big_l = 0.0;
  for (double x = -1.1; x <= 1.1; x += 0.1)
    for (double y = -1.1; y <= 1.1; y += 0.1)
      big_l = std::max(big_l, s.diffeo->jacobian_norm2(x, y));

  std::mt19937_64 rng(29);
  std::uniform_real_distribution<double> u(-0.6, 0.6);
  std::uniform_real_distribution<double> step(-0.05, 0.05);
  for (int it = 0; it < 20; ++it) {
    const Eigen::Vector2d x(u(rng), u(rng));
    const Eigen::Vector2d x2 = x + Eigen::Vector2d(step(rng), step(rng));
    int ix, iy;
    BoxSet a, b;
    a.grid = b.grid = g;
    REQUIRE(g.cell_of(x, ix, iy));
    a.cells.push_back({ix, iy});
    REQUIRE(g.cell_of(x2, ix, iy));
    b.cells.push_back({ix, iy});
    const double dh = boxset_hausdorff(image_boxset(a, s), image_boxset(b, s));
    CHECK(dh <= big_l * (x - x2).norm() + 4.0 * g.cell_size);
  }
}

TEST_CASE("omega limit of the affine scenario is the invariant disk") {
  const Scenario s = affine_scenario(0.5, 0.25);
  const Grid g = make_grid(s.window, 0.01);
  const BoxSet m = omega_limit({0.9, 0.9}, s, g);
  CHECK(contour_radius_error(m, 0.5) <= 2.0 * g.cell_size);

  // A fixed covering: one more image application reproduces it exactly.
  const BoxSet img = image_boxset(m, s);
  CHECK(img.cells == m.cells);

  // Interior seeds reproduce the same covering within the certificate budget.
  const BoxSet m2 = omega_limit({0.1, 0.0}, s, g);
  CHECK(boxset_hausdorff(m2, m) <= 2.0 * g.cell_size);
}

TEST_CASE("omega limit escapes for expansive dynamics") {
  Box w = window2(2.0);
  const Scenario s = make_scenario(make_affine_map(2.0), 0.1, w);
  const Grid g = make_grid(w, 0.02);
  CHECK_THROWS_AS(omega_limit({0.5, 0.25}, s, g), Error);
}

TEST_CASE("omega limit reports no stabilization when starved of iterations") {
  const Scenario s = affine_scenario(0.5, 0.25);
  const Grid g = make_grid(s.window, 0.02);
  try {
    omega_limit({0.9, 0.9}, s, g, 50, 3);
    FAIL("expected NoStabilization");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NoStabilization);
  }
}

TEST_CASE("minimal invariant set with certificate on the affine catalog") {
  const Scenario s = affine_scenario(0.5, 0.25);
  const Grid g = make_grid(s.window, 0.01);
  const MinimalResult res = minimal_invariant_set(s, g, 8, 42);
  CHECK(res.certificate.pass);
  CHECK(res.certificate.max_defect <= 2.0 * g.cell_size);
  CHECK(res.certificate.seeds.size() == 8);
  CHECK(contour_radius_error(res.covering, 0.5) <= 2.0 * g.cell_size);
}

TEST_CASE("minimal invariant set of the rotation scenario is the same disk") {
  const Scenario s = rotation_scenario(0.5, std::numbers::pi / 5, 0.25);
  const Grid g = make_grid(s.window, 0.01);
  const MinimalResult res = minimal_invariant_set(s, g, 6, 1);
  CHECK(res.certificate.pass);
  CHECK(contour_radius_error(res.covering, 0.5) <= 2.0 * g.cell_size);
}

TEST_CASE("minimal invariant set of the radial scenario matches the scalar oracle") {
  const Scenario s = radial_scenario(0.5, 0.1, 0.25);
  const Grid g = make_grid(s.window, 0.01);
  const double r_star = radial_fixed_radius(0.5, 0.1, 0.25);
  CHECK(r_star == doctest::Approx(0.529730).epsilon(1e-4));
  const MinimalResult res = minimal_invariant_set(s, g, 6, 1);
  CHECK(res.certificate.pass);
  CHECK(contour_radius_error(res.covering, r_star) <= 2.0 * g.cell_size);
}

TEST_CASE("halving the cell size moves the boundary by at most the coarse cell budget") {
  const Scenario s = radial_scenario(0.5, 0.1, 0.25);
  const Grid coarse = make_grid(s.window, 0.02);
  const Grid fine = make_grid(s.window, 0.01);
  const auto mc = omega_limit(s.window.center().head<2>(), s, coarse);
  const auto mf = omega_limit(s.window.center().head<2>(), s, fine);
  CHECK(curve_hausdorff(boxset_contour(mc), boxset_contour(mf)) <= 2.0 * coarse.cell_size);
}

TEST_CASE("dual image of a point covering under f=2x is the half ball") {
  // Window chosen so the origin sits at a cell center.
  Box w = window2(1.21);
  const Scenario s = make_scenario(make_affine_map(2.0), 1.0, w);
  const Grid g = make_grid(w, 0.02);
  BoxSet seed;
  seed.grid = g;
  int ix, iy;
  REQUIRE(g.cell_of({0.0, 0.0}, ix, iy));
  seed.cells.push_back({ix, iy});
  const BoxSet dual = dual_image(seed, s);
  // Sampling the source cell (corners reach h/sqrt2 from its center) plus
  // the two padding stages bounds how far the covering can exceed the disk.
  const double l_inv = 0.5;
  const double slack = l_inv * (g.cell_size * std::numbers::sqrt2 / 2.0 +
                                g.cell_size * std::numbers::sqrt2 / 4.0) +
                       l_inv * g.cell_size * std::numbers::sqrt2 / 4.0 + g.cell_size;
  CHECK(contour_radius_error(dual, 0.5) <= slack);
}

TEST_CASE("dual image of a point covering under the affine scenario") {
  const Scenario s = affine_scenario(0.5, 0.25, 1.21);
  const Grid g = make_grid(s.window, 0.02);
  BoxSet seed;
  seed.grid = g;
  int ix, iy;
  REQUIRE(g.cell_of({0.0, 0.0}, ix, iy));
  seed.cells.push_back({ix, iy});
  const BoxSet dual = dual_image(seed, s);
  const double l_inv = 2.0;
  const double slack = l_inv * (g.cell_size * std::numbers::sqrt2 / 2.0 +
                                g.cell_size * std::numbers::sqrt2 / 4.0) +
                       l_inv * g.cell_size * std::numbers::sqrt2 / 4.0 + g.cell_size;
  CHECK(contour_radius_error(dual, 0.5) <= slack);
}

TEST_CASE("membership duality between image and dual image") {
  const Scenario s = affine_scenario(0.5, 0.25, 2.0);
  const Grid g = make_grid(s.window, 0.02);
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> ux(-0.5, 0.5);
  std::uniform_real_distribution<double> band(-4.0 * g.cell_size, 4.0 * g.cell_size);
  std::uniform_real_distribution<double> ang(0.0, 2.0 * std::numbers::pi);

  auto cell_less = [](const Cell& a, const Cell& b) {
    return a.iy != b.iy ? a.iy < b.iy : a.ix < b.ix;
  };
  auto in_ring1 = [&](const BoxSet& set, const Cell& c) {
    for (int dy = -1; dy <= 1; ++dy)
      for (int dx = -1; dx <= 1; ++dx) {
        const Cell probe{c.ix + dx, c.iy + dy};
        if (std::binary_search(set.cells.begin(), set.cells.end(), probe, cell_less))
          return true;
      }
    return false;
  };

  int tested = 0;
  for (int it = 0; it < 200; ++it) {
    const Eigen::Vector2d x(ux(rng), ux(rng));
    // Bias y towards the image boundary where membership actually flips.
    const double t = ang(rng);
    const Eigen::Vector2d fx(0.5 * x.x(), 0.5 * x.y());
    const Eigen::Vector2d y =
        fx + (0.25 + band(rng)) * Eigen::Vector2d(std::cos(t), std::sin(t));

    int ix, iy, jx, jy;
    if (!g.cell_of(x, ix, iy) || !g.cell_of(y, jx, jy)) continue;
    BoxSet sx, sy;
    sx.grid = sy.grid = g;
    sx.cells.push_back({ix, iy});
    sy.cells.push_back({jx, jy});

    const BoxSet img = image_boxset(sx, s);
    const BoxSet dual = dual_image(sy, s);
    const bool y_in_img =
        std::binary_search(img.cells.begin(), img.cells.end(), Cell{jx, jy}, cell_less);
    const bool x_in_dual =
        std::binary_search(dual.cells.begin(), dual.cells.end(), Cell{ix, iy}, cell_less);
    if (y_in_img) CHECK(in_ring1(dual, Cell{ix, iy}));
    if (x_in_dual) CHECK(in_ring1(img, Cell{jx, jy}));
    ++tested;
  }
  CHECK(tested > 150);
}

TEST_CASE("the invariant disk is an attractor with contraction-rate decay") {
  const Scenario s = affine_scenario(0.5, 0.25);
  const Grid g = make_grid(s.window, 0.01);
  const BoxSet m = omega_limit(s.window.center().head<2>(), s, g);

  const AttractorTrace trace = is_attractor(m, s, 0.3);
  CHECK(trace.attracting);
  REQUIRE(trace.distances.size() >= 3);
  // While the distance is well above the grid floor it contracts at ~lambda.
  for (size_t k = 0; k + 1 < trace.distances.size(); ++k) {
    if (trace.distances[k] > 20.0 * g.cell_size && trace.distances[k + 1] > 0.0) {
      const double ratio = trace.distances[k + 1] / trace.distances[k];
      CHECK(ratio > 0.3);
      CHECK(ratio < 0.7);
    }
  }
}

TEST_CASE("a shrunken disk is rejected as not invariant") {
  const Scenario s = affine_scenario(0.5, 0.25);
  const Grid g = make_grid(s.window, 0.01);
  const BoxSet small = disk_covering(g, {0, 0}, 0.3);
  try {
    is_attractor(small, s, 0.1);
    FAIL("expected NotInvariant");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotInvariant);
  }
}

TEST_CASE("rotation scenario attractor check") {
  const Scenario s = rotation_scenario(0.5, std::numbers::pi / 5, 0.25);
  const Grid g = make_grid(s.window, 0.01);
  const BoxSet m = omega_limit(s.window.center().head<2>(), s, g);
  CHECK(is_attractor(m, s, 0.2).attracting);
}

TEST_CASE("boxset csv export format") {
  const Grid g = make_grid(window2(1.2), 0.6);
  BoxSet s;
  s.grid = g;
  s.cells.push_back({0, 0});
  s.cells.push_back({3, 2});
  std::ostringstream os;
  write_boxset_csv(os, s);
  CHECK(os.str() == "ix,iy,cx,cy,h\n0,0,-0.9,-0.9,0.6\n3,2,0.9,0.3,0.6\n");
}
