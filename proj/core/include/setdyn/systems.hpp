#pragma once

#include <Eigen/Dense>
#include <functional>
#include <map>
#include <memory>
#include <string>

#include "setdyn/geometry.hpp"

namespace setdyn {

/// A diffeomorphism evaluator: forward map, Jacobian (closed form or central
/// differences), and inverse (closed form or damped Newton from the image
/// point). Implementations must be diffeomorphisms on the scenario window;
/// validate_scenario enforces that numerically.
class DiffeoMap {
public:
  virtual ~DiffeoMap() = default;

  virtual int dimension() const = 0;
  virtual Eigen::VectorXd forward(const Eigen::VectorXd& x) const = 0;

  /// d x d Jacobian at x. Default: central differences, step 1e-6 * (1+|x|).
  virtual Eigen::MatrixXd jacobian(const Eigen::VectorXd& x) const;

  /// Preimage of y. Default: damped Newton iteration started at y using the
  /// Jacobian, step halved on residual increase, up to 100 iterations.
  virtual Eigen::VectorXd inverse(const Eigen::VectorXd& y) const;

  virtual bool has_closed_jacobian() const { return false; }
  virtual bool has_closed_inverse() const { return false; }

  /// Planar fast path used by the box-covering engine.
  virtual void forward2(double x0, double x1, double& y0, double& y1) const;

  /// Operator (spectral) norm of the Jacobian at a planar point; feeds the
  /// box-covering padding rule. Default computes it from jacobian().
  virtual double jacobian_norm2(double x0, double x1) const;

  /// True when the Jacobian is constant (the map is affine-linear); the
  /// box-covering engine then rasterizes whole cell rows as capsules.
  virtual bool constant_jacobian() const { return false; }

  virtual std::string kind() const = 0;
  virtual std::map<std::string, double> parameters() const = 0;
};

/// A scenario (f, epsilon): the diffeomorphism, the noise radius, and the
/// compact working window all computations are confined to.
struct Scenario {
  std::shared_ptr<const DiffeoMap> diffeo;
  double epsilon = 0.0;
  Box window;

  int dimension() const { return diffeo->dimension(); }
};

Scenario make_scenario(std::shared_ptr<const DiffeoMap> map, double epsilon, Box window);

/// One-parameter perturbation of a base scenario; perturbed(0) reproduces the
/// base bit-identically.
struct PerturbationFamily {
  Scenario base;
  std::function<Scenario(double)> perturbed;
  std::string kind;
};

Eigen::VectorXd eval_forward(const Scenario& s, const Eigen::VectorXd& x);
Eigen::MatrixXd eval_jacobian(const Scenario& s, const Eigen::VectorXd& x);
Eigen::VectorXd eval_inverse(const Scenario& s, const Eigen::VectorXd& y);

struct ValidationReport {
  int samples = 0;
  double max_roundtrip_error = 0.0;
  double min_abs_det = 0.0;
  bool det_sign_constant = true;
  double max_jacobian_fd_discrepancy = 0.0;
  bool pass = false;
};

/// Samples the window on a uniform lattice (at least `samples` points) and
/// checks the diffeomorphism invariants: round trips within 1e-9, |det f'|
/// >= 1e-10 with constant sign, closed-form Jacobian within 1e-5 relative of
/// central differences. Throws ValidationFailed naming the first violation.
ValidationReport validate_scenario(const Scenario& s, int samples);

// Builtin catalog.
std::shared_ptr<const DiffeoMap> make_affine_map(double lambda);
std::shared_ptr<const DiffeoMap> make_rotation_map(double lambda, double theta);
std::shared_ptr<const DiffeoMap> make_diagonal_map(double alpha, double beta);
std::shared_ptr<const DiffeoMap> make_radial_map(double lambda, double a);
/// lambda*x + delta*bump(|x|)*(x2^2, 0): the affine map plus a shear term
/// truncated by a C^2 radial bump (1 inside r0, 0 outside r1).
std::shared_ptr<const DiffeoMap> make_bump_shear_map(double lambda, double delta,
                                                     double r0, double r1);

std::shared_ptr<const DiffeoMap> make_map(const std::string& kind,
                                          const std::map<std::string, double>& params);

/// epsilon -> epsilon + delta, map unchanged.
PerturbationFamily make_epsilon_family(const Scenario& base);
/// f -> f + delta*bump*(x2^2, 0), epsilon unchanged. Base map must be affine.
PerturbationFamily make_shear_family(const Scenario& base, double r0, double r1);

}  // namespace setdyn
