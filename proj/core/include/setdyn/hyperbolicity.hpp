#pragma once

#include <array>
#include <cstdint>

#include "setdyn/front.hpp"

namespace setdyn {

/// Per-step log rates of the boundary map along an invariant loop: the
/// numerical shadow of the tangential / normal rate constants.
struct SpectrumReport {
  double tangential_exponent = 0.0;
  std::array<double, 2> normal_exponents{0.0, 0.0};  // sorted descending
  double per_orbit_spread = 0.0;
  int iterations_used = 0;
};

enum class Verdict {
  NormallyAttracting,
  NormallyRepelling,
  NotNormallyHyperbolic,
  ContactAnomaly,
};

const char* to_string(Verdict v);
Verdict verdict_from_string(const std::string& s);

struct Classification {
  Verdict verdict = Verdict::NotNormallyHyperbolic;
  double margin = 0.0;
};

/// Pushes an orthonormal 3-frame along n_orbits boundary-map orbits started
/// at loop vertices drawn from rng_seed. Each step applies the chart
/// differential, re-aligns the first frame vector to the discrete loop
/// tangent at the nearest loop vertex, and re-orthonormalizes the rest;
/// exponents are the Birkhoff means of the per-step log stretches. The loop
/// must be invariant within 1e-4 (one propagation step, loop d1 metric).
SpectrumReport estimate_spectrum(const LegendrianLoop& l, const Scenario& s,
                                 int n_orbits, int n_iter, uint64_t rng_seed = 1);

/// NormallyAttracting when both normal exponents sit below both the
/// tangential exponent and zero by more than gap; NormallyRepelling in the
/// mirrored case; ContactAnomaly when the normal exponents straddle zero by
/// more than gap on each side (a numerical saddle, impossible for an exact
/// contactomorphism); NotNormallyHyperbolic otherwise. margin is the
/// smallest relevant separation minus gap.
Classification classify(const SpectrumReport& r, double gap = 0.05);

}  // namespace setdyn
