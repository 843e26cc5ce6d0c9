#include "setdyn/systems.hpp"

#include <cmath>

namespace setdyn {

Eigen::MatrixXd DiffeoMap::jacobian(const Eigen::VectorXd& x) const {
  const int d = dimension();
  const double h = 1e-6 * (1.0 + x.norm());
  Eigen::MatrixXd j(d, d);
  Eigen::VectorXd xp = x, xm = x;
  for (int c = 0; c < d; ++c) {
    xp[c] = x[c] + h;
    xm[c] = x[c] - h;
    j.col(c) = (forward(xp) - forward(xm)) / (2.0 * h);
    xp[c] = x[c];
    xm[c] = x[c];
  }
  return j;
}

Eigen::VectorXd DiffeoMap::inverse(const Eigen::VectorXd& y) const {
  Eigen::VectorXd x = y;
  double res = (forward(x) - y).norm();
  for (int it = 0; it < 100; ++it) {
    if (res <= 1e-13) return x;
    const Eigen::MatrixXd j = jacobian(x);
    Eigen::VectorXd step = j.partialPivLu().solve(forward(x) - y);
    // Damp: halve the step while the residual grows.
    double scale = 1.0;
    for (int k = 0; k < 30; ++k) {
      Eigen::VectorXd cand = x - scale * step;
      const double cand_res = (forward(cand) - y).norm();
      if (cand_res < res || cand_res <= 1e-13) {
        x = std::move(cand);
        res = cand_res;
        break;
      }
      scale *= 0.5;
      if (k == 29) raise(ErrorKind::NoConvergence, "Newton inverse stalled, residual " + std::to_string(res));
    }
  }
  if (res <= 1e-13) return x;
  raise(ErrorKind::NoConvergence, "Newton inverse did not converge in 100 iterations");
}

void DiffeoMap::forward2(double x0, double x1, double& y0, double& y1) const {
  Eigen::VectorXd x(2);
  x << x0, x1;
  const Eigen::VectorXd y = forward(x);
  y0 = y[0];
  y1 = y[1];
}

double DiffeoMap::jacobian_norm2(double x0, double x1) const {
  Eigen::VectorXd x(2);
  x << x0, x1;
  const Eigen::MatrixXd j = jacobian(x);
  const double t = j.squaredNorm();
  const double det = j.determinant();
  const double disc = std::max(0.0, t * t - 4.0 * det * det);
  return std::sqrt(0.5 * (t + std::sqrt(disc)));
}

Scenario make_scenario(std::shared_ptr<const DiffeoMap> map, double epsilon, Box window) {
  if (epsilon <= 0.0) raise(ErrorKind::ConfigError, "epsilon must be positive");
  if (window.dimension() != map->dimension())
    raise(ErrorKind::ConfigError, "window dimension does not match map dimension");
  for (int i = 0; i < window.dimension(); ++i)
    if (!(window.hi[i] > window.lo[i]))
      raise(ErrorKind::ConfigError, "degenerate window");
  return Scenario{std::move(map), epsilon, std::move(window)};
}

Eigen::VectorXd eval_forward(const Scenario& s, const Eigen::VectorXd& x) {
  Eigen::VectorXd y = s.diffeo->forward(x);
  if (!y.allFinite()) raise(ErrorKind::NonFinite, "forward map overflow");
  return y;
}

Eigen::MatrixXd eval_jacobian(const Scenario& s, const Eigen::VectorXd& x) {
  Eigen::MatrixXd j = s.diffeo->jacobian(x);
  if (!j.allFinite()) raise(ErrorKind::NonFinite, "Jacobian overflow");
  if (std::abs(j.determinant()) < 1e-10)
    raise(ErrorKind::SingularJacobian, "det f' below 1e-10");
  return j;
}

Eigen::VectorXd eval_inverse(const Scenario& s, const Eigen::VectorXd& y) {
  return s.diffeo->inverse(y);
}

ValidationReport validate_scenario(const Scenario& s, int samples) {
  if (samples < 100) raise(ErrorKind::ConfigError, "validation needs at least 100 samples");
  const int d = s.dimension();
  const int per_axis = static_cast<int>(std::ceil(std::pow(static_cast<double>(samples), 1.0 / d)));

  ValidationReport rep;
  rep.min_abs_det = std::numeric_limits<double>::infinity();
  int det_sign = 0;

  std::vector<Eigen::VectorXd> lattice;
  Eigen::VectorXd x(d);
  std::vector<int> idx(d, 0);
  for (;;) {
    for (int k = 0; k < d; ++k)
      x[k] = s.window.lo[k] + (s.window.hi[k] - s.window.lo[k]) * (idx[k] + 0.5) / per_axis;
    lattice.push_back(x);
    int k = 0;
    while (k < d && ++idx[k] == per_axis) idx[k++] = 0;
    if (k == d) break;
  }
  rep.samples = static_cast<int>(lattice.size());

  for (const auto& p : lattice) {
    const Eigen::VectorXd y = s.diffeo->forward(p);
    const Eigen::VectorXd back = s.diffeo->inverse(y);
    rep.max_roundtrip_error = std::max(rep.max_roundtrip_error, (back - p).norm());

    const Eigen::MatrixXd j = s.diffeo->jacobian(p);
    const double det = j.determinant();
    rep.min_abs_det = std::min(rep.min_abs_det, std::abs(det));
    const int sign = det > 0 ? 1 : (det < 0 ? -1 : 0);
    if (det_sign == 0) det_sign = sign;
    if (sign != det_sign) rep.det_sign_constant = false;

    if (s.diffeo->has_closed_jacobian()) {
      const double h = 1e-6 * (1.0 + p.norm());
      Eigen::VectorXd xp = p, xm = p;
      for (int c = 0; c < d; ++c) {
        xp[c] = p[c] + h;
        xm[c] = p[c] - h;
        const Eigen::VectorXd fd = (s.diffeo->forward(xp) - s.diffeo->forward(xm)) / (2.0 * h);
        xp[c] = p[c];
        xm[c] = p[c];
        for (int r = 0; r < d; ++r) {
          const double scale = std::max(1.0, std::abs(j(r, c)));
          rep.max_jacobian_fd_discrepancy =
              std::max(rep.max_jacobian_fd_discrepancy, std::abs(fd[r] - j(r, c)) / scale);
        }
      }
    }
  }

  if (!rep.det_sign_constant)
    raise(ErrorKind::ValidationFailed, "det f' changes sign over the window");
  if (rep.min_abs_det < 1e-10)
    raise(ErrorKind::ValidationFailed, "min |det f'| below 1e-10");
  if (rep.max_roundtrip_error > 1e-9)
    raise(ErrorKind::ValidationFailed,
          "inverse round-trip error " + std::to_string(rep.max_roundtrip_error) + " above 1e-9");
  if (rep.max_jacobian_fd_discrepancy > 1e-5)
    raise(ErrorKind::ValidationFailed, "closed-form Jacobian disagrees with finite differences");
  rep.pass = true;
  return rep;
}

namespace {

class AffineMap final : public DiffeoMap {
public:
  explicit AffineMap(double lambda) : lambda_(lambda) {}
  int dimension() const override { return 2; }
  Eigen::VectorXd forward(const Eigen::VectorXd& x) const override { return lambda_ * x; }
  Eigen::MatrixXd jacobian(const Eigen::VectorXd&) const override {
    return lambda_ * Eigen::MatrixXd::Identity(2, 2);
  }
  Eigen::VectorXd inverse(const Eigen::VectorXd& y) const override { return y / lambda_; }
  bool has_closed_jacobian() const override { return true; }
  bool has_closed_inverse() const override { return true; }
  void forward2(double x0, double x1, double& y0, double& y1) const override {
    y0 = lambda_ * x0;
    y1 = lambda_ * x1;
  }
  double jacobian_norm2(double, double) const override { return std::abs(lambda_); }
  bool constant_jacobian() const override { return true; }
  std::string kind() const override { return "affine"; }
  std::map<std::string, double> parameters() const override { return {{"lambda", lambda_}}; }

private:
  double lambda_;
};

class RotationMap final : public DiffeoMap {
public:
  RotationMap(double lambda, double theta)
      : lambda_(lambda), theta_(theta), c_(std::cos(theta)), s_(std::sin(theta)) {}
  int dimension() const override { return 2; }
  Eigen::VectorXd forward(const Eigen::VectorXd& x) const override {
    Eigen::VectorXd y(2);
    y << lambda_ * (c_ * x[0] - s_ * x[1]), lambda_ * (s_ * x[0] + c_ * x[1]);
    return y;
  }
  Eigen::MatrixXd jacobian(const Eigen::VectorXd&) const override {
    Eigen::MatrixXd j(2, 2);
    j << lambda_ * c_, -lambda_ * s_, lambda_ * s_, lambda_ * c_;
    return j;
  }
  Eigen::VectorXd inverse(const Eigen::VectorXd& y) const override {
    Eigen::VectorXd x(2);
    x << (c_ * y[0] + s_ * y[1]) / lambda_, (-s_ * y[0] + c_ * y[1]) / lambda_;
    return x;
  }
  bool has_closed_jacobian() const override { return true; }
  bool has_closed_inverse() const override { return true; }
  void forward2(double x0, double x1, double& y0, double& y1) const override {
    y0 = lambda_ * (c_ * x0 - s_ * x1);
    y1 = lambda_ * (s_ * x0 + c_ * x1);
  }
  double jacobian_norm2(double, double) const override { return std::abs(lambda_); }
  bool constant_jacobian() const override { return true; }
  std::string kind() const override { return "rotation"; }
  std::map<std::string, double> parameters() const override {
    return {{"lambda", lambda_}, {"theta", theta_}};
  }

private:
  double lambda_, theta_, c_, s_;
};

class DiagonalMap final : public DiffeoMap {
public:
  DiagonalMap(double alpha, double beta) : alpha_(alpha), beta_(beta) {}
  int dimension() const override { return 2; }
  Eigen::VectorXd forward(const Eigen::VectorXd& x) const override {
    Eigen::VectorXd y(2);
    y << alpha_ * x[0], beta_ * x[1];
    return y;
  }
  Eigen::MatrixXd jacobian(const Eigen::VectorXd&) const override {
    Eigen::MatrixXd j = Eigen::MatrixXd::Zero(2, 2);
    j(0, 0) = alpha_;
    j(1, 1) = beta_;
    return j;
  }
  Eigen::VectorXd inverse(const Eigen::VectorXd& y) const override {
    Eigen::VectorXd x(2);
    x << y[0] / alpha_, y[1] / beta_;
    return x;
  }
  bool has_closed_jacobian() const override { return true; }
  bool has_closed_inverse() const override { return true; }
  void forward2(double x0, double x1, double& y0, double& y1) const override {
    y0 = alpha_ * x0;
    y1 = beta_ * x1;
  }
  double jacobian_norm2(double, double) const override {
    return std::max(std::abs(alpha_), std::abs(beta_));
  }
  bool constant_jacobian() const override { return true; }
  std::string kind() const override { return "diagonal"; }
  std::map<std::string, double> parameters() const override {
    return {{"alpha", alpha_}, {"beta", beta_}};
  }

private:
  double alpha_, beta_;
};

// f(x) = x * (lambda + a |x|^2). Radially symmetric; the radius map
// r -> r (lambda + a r^2) is strictly increasing for a, lambda > 0, so the
// inverse reduces to a scalar Newton solve along the ray of y.
class RadialMap final : public DiffeoMap {
public:
  RadialMap(double lambda, double a) : lambda_(lambda), a_(a) {}
  int dimension() const override { return 2; }
  Eigen::VectorXd forward(const Eigen::VectorXd& x) const override {
    return x * (lambda_ + a_ * x.squaredNorm());
  }
  Eigen::MatrixXd jacobian(const Eigen::VectorXd& x) const override {
    const double psi = lambda_ + a_ * x.squaredNorm();
    return psi * Eigen::MatrixXd::Identity(2, 2) + 2.0 * a_ * x * x.transpose();
  }
  Eigen::VectorXd inverse(const Eigen::VectorXd& y) const override {
    const double s = y.norm();
    if (s == 0.0) return Eigen::VectorXd::Zero(2);
    // Solve r (lambda + a r^2) = s for r >= 0.
    double r = s / lambda_;
    for (int it = 0; it < 60; ++it) {
      const double g = r * (lambda_ + a_ * r * r) - s;
      const double dg = lambda_ + 3.0 * a_ * r * r;
      const double step = g / dg;
      r -= step;
      if (std::abs(step) < 1e-16 * (1.0 + r)) break;
    }
    return y * (r / s);
  }
  bool has_closed_jacobian() const override { return true; }
  bool has_closed_inverse() const override { return true; }
  void forward2(double x0, double x1, double& y0, double& y1) const override {
    const double psi = lambda_ + a_ * (x0 * x0 + x1 * x1);
    y0 = psi * x0;
    y1 = psi * x1;
  }
  double jacobian_norm2(double x0, double x1) const override {
    return lambda_ + 3.0 * a_ * (x0 * x0 + x1 * x1);
  }
  std::string kind() const override { return "radial"; }
  std::map<std::string, double> parameters() const override {
    return {{"lambda", lambda_}, {"a", a_}};
  }

private:
  double lambda_, a_;
};

// C^2 radial cutoff: 1 for |x| <= r0, 0 for |x| >= r1, quintic smoothstep in
// between (in the |x|^2 variable, so the gradient stays polynomial).
struct Bump {
  double r0sq, r1sq;

  double value(double rsq) const {
    if (rsq <= r0sq) return 1.0;
    if (rsq >= r1sq) return 0.0;
    const double u = (rsq - r0sq) / (r1sq - r0sq);
    return 1.0 - u * u * u * (10.0 + u * (-15.0 + 6.0 * u));
  }
  // d/d(rsq)
  double slope(double rsq) const {
    if (rsq <= r0sq || rsq >= r1sq) return 0.0;
    const double u = (rsq - r0sq) / (r1sq - r0sq);
    return -30.0 * u * u * (u - 1.0) * (u - 1.0) / (r1sq - r0sq);
  }
};

class BumpShearMap final : public DiffeoMap {
public:
  BumpShearMap(double lambda, double delta, double r0, double r1)
      : lambda_(lambda), delta_(delta), bump_{r0 * r0, r1 * r1}, r0_(r0), r1_(r1) {}
  int dimension() const override { return 2; }
  Eigen::VectorXd forward(const Eigen::VectorXd& x) const override {
    const double chi = bump_.value(x.squaredNorm());
    Eigen::VectorXd y(2);
    y << lambda_ * x[0] + delta_ * chi * x[1] * x[1], lambda_ * x[1];
    return y;
  }
  Eigen::MatrixXd jacobian(const Eigen::VectorXd& x) const override {
    const double rsq = x.squaredNorm();
    const double chi = bump_.value(rsq);
    const double dchi = bump_.slope(rsq);
    Eigen::MatrixXd j(2, 2);
    j(0, 0) = lambda_ + delta_ * x[1] * x[1] * dchi * 2.0 * x[0];
    j(0, 1) = delta_ * (2.0 * chi * x[1] + x[1] * x[1] * dchi * 2.0 * x[1]);
    j(1, 0) = 0.0;
    j(1, 1) = lambda_;
    return j;
  }
  bool has_closed_jacobian() const override { return true; }
  void forward2(double x0, double x1, double& y0, double& y1) const override {
    const double chi = bump_.value(x0 * x0 + x1 * x1);
    y0 = lambda_ * x0 + delta_ * chi * x1 * x1;
    y1 = lambda_ * x1;
  }
  std::string kind() const override { return "bump_shear"; }
  std::map<std::string, double> parameters() const override {
    return {{"lambda", lambda_}, {"delta", delta_}, {"r0", r0_}, {"r1", r1_}};
  }

private:
  double lambda_, delta_;
  Bump bump_;
  double r0_, r1_;
};

double require_param(const std::map<std::string, double>& params, const std::string& name) {
  auto it = params.find(name);
  if (it == params.end()) raise(ErrorKind::ConfigError, "missing map parameter '" + name + "'");
  return it->second;
}

}  // namespace

std::shared_ptr<const DiffeoMap> make_affine_map(double lambda) {
  return std::make_shared<AffineMap>(lambda);
}
std::shared_ptr<const DiffeoMap> make_rotation_map(double lambda, double theta) {
  return std::make_shared<RotationMap>(lambda, theta);
}
std::shared_ptr<const DiffeoMap> make_diagonal_map(double alpha, double beta) {
  return std::make_shared<DiagonalMap>(alpha, beta);
}
std::shared_ptr<const DiffeoMap> make_radial_map(double lambda, double a) {
  return std::make_shared<RadialMap>(lambda, a);
}
std::shared_ptr<const DiffeoMap> make_bump_shear_map(double lambda, double delta,
                                                     double r0, double r1) {
  if (!(r1 > r0 && r0 > 0.0)) raise(ErrorKind::ConfigError, "bump radii need 0 < r0 < r1");
  return std::make_shared<BumpShearMap>(lambda, delta, r0, r1);
}

std::shared_ptr<const DiffeoMap> make_map(const std::string& kind,
                                          const std::map<std::string, double>& params) {
  if (kind == "affine") return make_affine_map(require_param(params, "lambda"));
  if (kind == "rotation")
    return make_rotation_map(require_param(params, "lambda"), require_param(params, "theta"));
  if (kind == "diagonal")
    return make_diagonal_map(require_param(params, "alpha"), require_param(params, "beta"));
  if (kind == "radial")
    return make_radial_map(require_param(params, "lambda"), require_param(params, "a"));
  if (kind == "bump_shear")
    return make_bump_shear_map(require_param(params, "lambda"), require_param(params, "delta"),
                               require_param(params, "r0"), require_param(params, "r1"));
  raise(ErrorKind::ConfigError, "unknown map kind '" + kind + "'");
}

PerturbationFamily make_epsilon_family(const Scenario& base) {
  PerturbationFamily fam;
  fam.base = base;
  fam.kind = "epsilon";
  fam.perturbed = [base](double delta) {
    if (delta == 0.0) return base;
    Scenario s = base;
    s.epsilon = base.epsilon + delta;
    return s;
  };
  return fam;
}

PerturbationFamily make_shear_family(const Scenario& base, double r0, double r1) {
  const auto params = base.diffeo->parameters();
  if (base.diffeo->kind() != "affine")
    raise(ErrorKind::ConfigError, "shear family requires an affine base map");
  const double lambda = params.at("lambda");
  PerturbationFamily fam;
  fam.base = base;
  fam.kind = "shear_bump";
  fam.perturbed = [base, lambda, r0, r1](double delta) {
    if (delta == 0.0) return base;
    Scenario s = base;
    s.diffeo = make_bump_shear_map(lambda, delta, r0, r1);
    return s;
  };
  return fam;
}

}  // namespace setdyn
