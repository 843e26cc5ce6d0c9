#include <doctest.h>

#include <numbers>

#include "setdyn/boundary.hpp"
#include "support.hpp"

using namespace setdyn;
using namespace setdyn::test;

namespace {

std::vector<Scenario> boundary_catalog() {
  return {
      affine_scenario(0.5, 0.25),
      rotation_scenario(0.5, std::numbers::pi / 5, 0.25),
      diagonal_scenario(0.35, 0.65, 0.25),
      radial_scenario(0.5, 0.1, 0.25),
      bump_scenario(0.5, 0.05, 0.25),
  };
}

TangentPoint random_tangent_point(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> ub(-0.8, 0.8);
  std::uniform_real_distribution<double> ua(0.0, 2.0 * std::numbers::pi);
  return tp(ub(rng), ub(rng), std::cos(ua(rng)), std::sin(ua(rng)));
}

}  // namespace

TEST_CASE("boundary map fixed point of the affine scenario") {
  const Scenario s = affine_scenario(0.5, 0.25);
  const TangentPoint p = tp(0.5, 0, 1, 0);
  const TangentPoint q = boundary_map(p, s);
  CHECK(t1_distance(p, q) < 1e-14);
}

TEST_CASE("boundary map under an anisotropic stretch") {
  const Scenario s = make_scenario(make_diagonal_map(2.0, 0.5), 1.0, window2(5.0));

  const TangentPoint q1 = boundary_map(tp(1, 1, 1, 0), s);
  CHECK((q1.base - pt(3.0, 0.5)).norm() < 1e-12);
  CHECK((q1.normal.vec() - pt(1, 0)).norm() < 1e-12);

  const TangentPoint q2 = boundary_map(tp(1, 1, 0, 1), s);
  CHECK((q2.base - pt(2.0, 1.5)).norm() < 1e-12);
  CHECK((q2.normal.vec() - pt(0, 1)).norm() < 1e-12);
}

TEST_CASE("boundary map inverse closed forms") {
  const Scenario s = affine_scenario(0.5, 0.25, 3.0);
  const TangentPoint fixed = boundary_map_inverse(tp(0.5, 0, 1, 0), s);
  CHECK(t1_distance(fixed, tp(0.5, 0, 1, 0)) < 1e-14);

  const TangentPoint q = boundary_map_inverse(tp(1, 0, 1, 0), s);
  CHECK((q.base - pt(1.5, 0)).norm() < 1e-13);
  CHECK((q.normal.vec() - pt(1, 0)).norm() < 1e-13);
}

TEST_CASE("inverse round trip over the catalog") {
  std::mt19937_64 rng(101);
  for (const auto& s : boundary_catalog()) {
    double worst_a = 0.0, worst_b = 0.0;
    for (int i = 0; i < 2000; ++i) {
      const TangentPoint p = random_tangent_point(rng);
      worst_a = std::max(worst_a, t1_distance(boundary_map_inverse(boundary_map(p, s), s), p));
      worst_b = std::max(worst_b, t1_distance(boundary_map(boundary_map_inverse(p, s), s), p));
    }
    CHECK(worst_a <= 1e-10);
    CHECK(worst_b <= 1e-10);
  }
}

TEST_CASE("boundary map decomposes through the geodesic flow") {
  std::mt19937_64 rng(7);
  for (const auto& s : boundary_catalog()) {
    for (int i = 0; i < 200; ++i) {
      const TangentPoint p = random_tangent_point(rng);
      const TangentPoint via = geodesic_shift(half_map(p, s), s.epsilon);
      CHECK(t1_distance(via, boundary_map(p, s)) <= 1e-12);
    }
  }
}

TEST_CASE("chart differential of the affine boundary map") {
  const Scenario s = affine_scenario(0.5, 0.25);
  const Eigen::Matrix3d d = boundary_map_differential(tp(0.5, 0, 1, 0), s);
  Eigen::Matrix3d expected;
  expected << 0.5, 0, 0, 0, 0.5, 0.25, 0, 0, 1;
  CHECK((d - expected).cwiseAbs().maxCoeff() < 1e-5);

  const Eigen::Vector3cd eig = d.eigenvalues();
  std::vector<double> mags{std::abs(eig[0]), std::abs(eig[1]), std::abs(eig[2])};
  std::sort(mags.begin(), mags.end());
  CHECK(mags[0] == doctest::Approx(0.5).epsilon(1e-4));
  CHECK(mags[1] == doctest::Approx(0.5).epsilon(1e-4));
  CHECK(mags[2] == doctest::Approx(1.0).epsilon(1e-4));
}

TEST_CASE("liouville form evaluation") {
  CHECK(liouville_eval(tp(0, 0, 1, 0), {0, 1, 3.7}) == doctest::Approx(0.0));
  CHECK(liouville_eval(tp(0, 0, 1, 0), {1, 0, 0}) == doctest::Approx(1.0));
  CHECK(liouville_eval(tp(2, -1, 0.6, 0.8), {1, 1, 0}) == doctest::Approx(1.4));
}

TEST_CASE("the differential maps contact vectors to contact vectors") {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (const auto& s : boundary_catalog()) {
    for (int i = 0; i < 100; ++i) {
      const TangentPoint p = random_tangent_point(rng);
      // Chart vector in the kernel of the Liouville form at p.
      const double theta = p.normal.angle();
      const double tang = u(rng), vtheta = u(rng);
      const Eigen::Vector3d v(-tang * std::sin(theta), tang * std::cos(theta), vtheta);
      REQUIRE(std::abs(liouville_eval(p, v)) < 1e-14);

      const Eigen::Vector3d w = boundary_map_differential(p, s) * v;
      const TangentPoint q = boundary_map(p, s);
      CHECK(std::abs(liouville_eval(q, w)) <= 1e-6 * v.norm());
    }
  }
}

TEST_CASE("half map rescales the Liouville form by the cotangent stretch") {
  std::mt19937_64 rng(19);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (const auto& s : boundary_catalog()) {
    for (int i = 0; i < 100; ++i) {
      const TangentPoint p = random_tangent_point(rng);
      const Eigen::Vector3d v(u(rng), u(rng), u(rng));

      const double before = liouville_eval(p, v);
      const Eigen::Vector3d w = half_map_differential(p, s) * v;
      const double after = liouville_eval(half_map(p, s), w);

      const Eigen::MatrixXd jac = eval_jacobian(s, p.base);
      const double stretch = jac.transpose().partialPivLu().solve(p.normal.vec()).norm();
      CHECK(after == doctest::Approx(before / stretch).epsilon(1e-5).scale(1.0));
    }
  }
}

TEST_CASE("chain rule for the squared map") {
  std::mt19937_64 rng(23);
  const Scenario s = radial_scenario(0.5, 0.1, 0.25);
  for (int i = 0; i < 50; ++i) {
    const TangentPoint p = random_tangent_point(rng);
    const TangentPoint q = boundary_map(p, s);
    const Eigen::Matrix3d d1 = boundary_map_differential(p, s);
    const Eigen::Matrix3d d2 = boundary_map_differential(q, s);

    // Central differences of the twice-iterated map, directly.
    const auto e2 = [&](const TangentPoint& x) { return boundary_map(boundary_map(x, s), s); };
    const Eigen::Vector3d c0 = to_chart(p);
    Eigen::Matrix3d dd;
    const double h = 1e-6;
    for (int j = 0; j < 3; ++j) {
      Eigen::Vector3d cp = c0, cm = c0;
      cp[j] += h;
      cm[j] -= h;
      const Eigen::Vector3d yp = to_chart(e2(from_chart(cp)));
      const Eigen::Vector3d ym = to_chart(e2(from_chart(cm)));
      dd(0, j) = (yp[0] - ym[0]) / (2 * h);
      dd(1, j) = (yp[1] - ym[1]) / (2 * h);
      dd(2, j) = wrap_angle(yp[2] - ym[2]) / (2 * h);
    }
    const Eigen::Matrix3d composed = d2 * d1;
    CHECK((dd - composed).cwiseAbs().maxCoeff() <=
          1e-4 * std::max(1.0, composed.cwiseAbs().maxCoeff()));
  }
}

TEST_CASE("boundary jet ties the pieces together") {
  const Scenario s = affine_scenario(0.5, 0.25);
  const BoundaryJet jet = boundary_jet(tp(0.3, 0.2, 0, 1), s);
  CHECK(t1_distance(jet.image, boundary_map(jet.point, s)) < 1e-14);
  const Eigen::Vector3d c0 = to_chart(jet.point);
  for (int j = 0; j < 3; ++j) {
    Eigen::Vector3d cp = c0;
    cp[j] += 1e-6;
    const Eigen::Vector3d fd =
        (to_chart(boundary_map(from_chart(cp), s)) - to_chart(jet.image)) / 1e-6;
    CHECK((jet.differential.col(j) - fd).norm() < 1e-4);
  }
}

TEST_CASE("singular jacobian surfaces as an error") {
  // A shear perturbation strong enough to cross det = 0 inside the window.
  const auto bad = make_bump_shear_map(0.05, 2.0, 0.8, 1.15);
  const Scenario s = make_scenario(bad, 0.25, window2(1.2));
  bool raised = false;
  for (double x = -1.0; x <= 1.0 && !raised; x += 0.05)
    for (double y = -1.0; y <= 1.0 && !raised; y += 0.05) {
      try {
        boundary_map(tp(x, y, 1, 0), s);
      } catch (const Error& e) {
        raised = e.kind() == ErrorKind::SingularJacobian;
      }
    }
  CHECK(raised);
}
