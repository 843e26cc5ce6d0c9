#pragma once

#include "setdyn/hyperbolicity.hpp"
#include "setdyn/setvalued.hpp"

namespace setdyn {

struct PersistenceRow {
  double delta = 0.0;
  double hausdorff_c0 = 0.0;         // NaN when not converged
  double normal_deviation_c1 = 0.0;  // radians; NaN when not converged
  Classification verdict;
  bool converged = false;
};

struct PersistenceTable {
  std::vector<PersistenceRow> rows;  // strictly decreasing delta
  Classification base_verdict;
};

struct PersistenceOptions {
  double h_front = 0.005;
  double relax_tol = 2e-5;
  int relax_max_iter = 400;
  int n_orbits = 8;
  int spectrum_iter = 200;
  uint64_t rng_seed = 1;
};

/// For each delta (sorted decreasing): relax the base invariant loop under
/// the perturbed scenario (warm start), record the C0 front deviation, the
/// C1 normal deviation at nearest-base matches, and the perturbed
/// classification. Rows that fail to relax are reported with converged =
/// false and NaN distances. For the largest delta a cold start from a round
/// circle cross-checks uniqueness of the perturbed loop. Requires the base
/// loop to relax and classify as NormallyAttracting.
PersistenceTable run_persistence_experiment(const PerturbationFamily& fam,
                                            const ClosedCurve& initial_curve,
                                            std::vector<double> deltas, double tol,
                                            const PersistenceOptions& opts = {});

struct EquivalenceReport {
  double front_to_boxset_dh = 0.0;
  double h_box = 0.0;
  double h_front = 0.0;
  MinimalityCertificate certificate;
  bool pass = false;
};

/// Runs both routes to the minimal invariant set boundary: the box covering
/// (marching-squares contour) and the invariant Legendrian loop (front), and
/// compares them. Passes when the Hausdorff distance between the two curves
/// is at most 2*(h_box + h_front) and the minimality certificate holds.
EquivalenceReport verify_equivalence(const Scenario& s, const Grid& grid, double h_front,
                                     const ClosedCurve& initial_curve,
                                     const PersistenceOptions& opts = {});

struct BoundaryAttractionTrace {
  bool attracting = false;
  std::vector<double> inner;
  std::vector<double> outer;
};

/// Lifts the inner and outer eta-offsets of the invariant loop's front and
/// propagates both; true when both converge to the loop below 2*h_front in
/// the loop d1 metric with non-increasing tails. Offsets that cross their
/// caustic (flagged singularities or inverted normals) raise SingularFront.
BoundaryAttractionTrace attracting_boundary_check(const Scenario& s, const LegendrianLoop& l,
                                                  double eta, int max_iter = 200,
                                                  int burn_in = 5);

}  // namespace setdyn
