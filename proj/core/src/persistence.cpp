#include "setdyn/persistence.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace setdyn {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double normal_deviation(const LegendrianLoop& base, const LegendrianLoop& perturbed) {
  // Max angle between normals at nearest-base-point matches.
  double worst = 0.0;
  for (const auto& p : perturbed.points) {
    double best_d = std::numeric_limits<double>::infinity();
    size_t best_i = 0;
    for (size_t i = 0; i < base.points.size(); ++i) {
      const double d = (base.points[i].base - p.base).squaredNorm();
      if (d < best_d) {
        best_d = d;
        best_i = i;
      }
    }
    const double dtheta =
        std::abs(wrap_angle(p.normal.angle() - base.points[best_i].normal.angle()));
    worst = std::max(worst, dtheta);
  }
  return worst;
}

Classification classify_loop(const LegendrianLoop& l, const Scenario& s,
                             const PersistenceOptions& opts) {
  const SpectrumReport rep =
      estimate_spectrum(l, s, opts.n_orbits, opts.spectrum_iter, opts.rng_seed);
  return classify(rep);
}

}  // namespace

PersistenceTable run_persistence_experiment(const PerturbationFamily& fam,
                                            const ClosedCurve& initial_curve,
                                            std::vector<double> deltas, double tol,
                                            const PersistenceOptions& opts) {
  std::sort(deltas.begin(), deltas.end(), std::greater<double>());
  deltas.erase(std::unique(deltas.begin(), deltas.end()), deltas.end());
  if (deltas.empty()) raise(ErrorKind::ConfigError, "no deltas given");

  // Base loop + attraction precondition.
  LegendrianLoop base_loop;
  PersistenceTable table;
  try {
    const LegendrianLoop l0 = lift_closed_curve(initial_curve, opts.h_front);
    base_loop = relax_to_invariant_loop(l0, fam.base, opts.relax_tol, opts.relax_max_iter);
    table.base_verdict = classify_loop(base_loop, fam.base, opts);
  } catch (const Error& e) {
    raise(ErrorKind::BaseNotAttracting, std::string("base scenario: ") + e.what());
  }
  if (table.base_verdict.verdict != Verdict::NormallyAttracting)
    raise(ErrorKind::BaseNotAttracting,
          std::string("base verdict ") + to_string(table.base_verdict.verdict));

  const ClosedCurve base_front = front_projection(base_loop);

  for (size_t r = 0; r < deltas.size(); ++r) {
    const double delta = deltas[r];
    PersistenceRow row;
    row.delta = delta;
    try {
      const Scenario pert = fam.perturbed(delta);
      const LegendrianLoop loop =
          relax_to_invariant_loop(base_loop, pert, tol, opts.relax_max_iter);
      row.hausdorff_c0 = curve_hausdorff(base_front, front_projection(loop));
      row.normal_deviation_c1 = normal_deviation(base_loop, loop);
      row.verdict = classify_loop(loop, pert, opts);
      row.converged = true;

      if (r == 0) {
        // Cold-start cross-check at the largest delta: the perturbed loop is
        // unique, so a fresh start from a round circle must land on it.
        const LegendrianLoop cold0 = lift_closed_curve(initial_curve, opts.h_front);
        const LegendrianLoop cold =
            relax_to_invariant_loop(cold0, pert, tol, opts.relax_max_iter);
        if (loop_t1_distance(cold, loop) > 2.0 * (tol + opts.h_front)) row.converged = false;
      }
    } catch (const Error&) {
      row.converged = false;
      row.hausdorff_c0 = kNaN;
      row.normal_deviation_c1 = kNaN;
      row.verdict = Classification{Verdict::NotNormallyHyperbolic, 0.0};
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

EquivalenceReport verify_equivalence(const Scenario& s, const Grid& grid, double h_front,
                                     const ClosedCurve& initial_curve,
                                     const PersistenceOptions& opts) {
  EquivalenceReport rep;
  rep.h_box = grid.cell_size;
  rep.h_front = h_front;

  const MinimalResult box_route = minimal_invariant_set(s, grid, 20, opts.rng_seed);
  rep.certificate = box_route.certificate;

  const LegendrianLoop l0 = lift_closed_curve(initial_curve, h_front);
  const LegendrianLoop loop =
      relax_to_invariant_loop(l0, s, opts.relax_tol, opts.relax_max_iter);

  const std::vector<Eigen::Vector2d> contour = boxset_contour(box_route.covering);
  rep.front_to_boxset_dh = curve_hausdorff(contour, front_projection(loop).vertices);
  rep.pass = rep.certificate.pass &&
             rep.front_to_boxset_dh <= 2.0 * (grid.cell_size + h_front);
  return rep;
}

BoundaryAttractionTrace attracting_boundary_check(const Scenario& s, const LegendrianLoop& l,
                                                  double eta, int max_iter, int burn_in) {
  {
    const LegendrianLoop stepped = propagate_loop(l, s, 1);
    if (loop_t1_distance(l, stepped) > 1e-4)
      raise(ErrorKind::NotInvariantLoop, "loop is not invariant within 1e-4");
  }
  if (!(eta > 0.0)) raise(ErrorKind::ConfigError, "eta must be positive");

  auto make_offset = [&](double off) {
    LegendrianLoop shifted = offset_loop(l, off);
    const SingularityReport rep = detect_projection_singularities(shifted);
    if (!rep.flagged_indices.empty())
      raise(ErrorKind::SingularFront, "offset front is singular");
    if (!normals_outward_consistent(shifted))
      raise(ErrorKind::SingularFront, "offset front collapsed through its caustic");
    return shifted;
  };

  BoundaryAttractionTrace trace;
  const double h = l.target_edge_length;
  auto run = [&](LegendrianLoop cur, std::vector<double>& distances) {
    for (int k = 0; k < max_iter; ++k) {
      cur = propagate_loop(cur, s, 1);
      const double d = loop_t1_distance(cur, l);
      distances.push_back(d);
      if (d < 2.0 * h) return true;
    }
    return false;
  };
  auto monotone_tail = [&](const std::vector<double>& distances) {
    for (size_t k = static_cast<size_t>(std::max(0, burn_in)); k + 1 < distances.size(); ++k)
      if (distances[k + 1] > distances[k] + h / 2.0) return false;
    return true;
  };

  const bool inner_ok = run(make_offset(-eta), trace.inner);
  const bool outer_ok = run(make_offset(eta), trace.outer);
  trace.attracting = inner_ok && outer_ok && monotone_tail(trace.inner) &&
                     monotone_tail(trace.outer);
  return trace;
}

}  // namespace setdyn
