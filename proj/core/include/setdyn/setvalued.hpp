#pragma once

#include <cstdint>
#include <vector>

#include "setdyn/raster.hpp"
#include "setdyn/systems.hpp"

namespace setdyn {

/// Uniform planar grid over the scenario window. Window edge lengths must be
/// integer multiples of the cell size within 1e-12.
struct Grid {
  Box window;
  double cell_size = 0.0;
  int nx = 0;
  int ny = 0;

  RasterFrame frame() const {
    return RasterFrame{window.lo[0], window.lo[1], cell_size, nx, ny};
  }
  Eigen::Vector2d center(int ix, int iy) const {
    return {window.lo[0] + (ix + 0.5) * cell_size, window.lo[1] + (iy + 0.5) * cell_size};
  }
  bool cell_of(const Eigen::Vector2d& p, int& ix, int& iy) const;
};

Grid make_grid(const Box& window, double cell_size);

struct Cell {
  int32_t ix = 0;
  int32_t iy = 0;
  friend bool operator==(const Cell&, const Cell&) = default;
};

/// A finite covering of the window by grid cells: the computational stand-in
/// for compact sets. Cells are kept sorted row-major (iy, then ix), unique.
struct BoxSet {
  Grid grid;
  std::vector<Cell> cells;

  bool empty() const { return cells.empty(); }
  size_t size() const { return cells.size(); }
  std::vector<Point> cell_centers() const;
};

struct MinimalityCertificate {
  std::vector<Point> seeds;
  double max_defect = 0.0;
  bool pass = false;
};

struct MinimalResult {
  BoxSet covering;
  MinimalityCertificate certificate;
};

struct AttractorTrace {
  bool attracting = false;
  std::vector<double> distances;
};

/// One step of the set-valued dynamics at grid resolution: all cells whose
/// center lies within epsilon + pad of f(sample) for some sample (the four
/// corners and the center) of some cell of S. pad = L_local * h * sqrt(2)/2
/// with L_local the largest Jacobian operator norm over that cell's samples,
/// which keeps the covering a superset of the true image of the sampled
/// sub-boxes. Throws WindowEscape when the image touches the outermost cell
/// ring of the window.
BoxSet image_boxset(const BoxSet& s, const Scenario& scenario);

/// Iterates image_boxset from the seed's cell and returns the first
/// repeated covering (exact cell-set equality) after the burn-in.
BoxSet omega_limit(const Eigen::Vector2d& seed, const Scenario& scenario, const Grid& grid,
                   int burn_in = 50, int max_iter = 10000);

/// Omega limit from the window center plus a seed-sampling minimality
/// certificate: n_seeds interior cells of the candidate covering, stratified
/// over the cell list with the stratum representative drawn from rng_seed,
/// must reproduce the covering within 2*h in Hausdorff distance.
MinimalResult minimal_invariant_set(const Scenario& scenario, const Grid& grid,
                                    int n_seeds = 20, uint64_t rng_seed = 1,
                                    int burn_in = 50, int max_iter = 10000);

/// The dual (lower inverse) dynamics: covering of the union over samples y of
/// S of f^{-1}(closed ball of radius epsilon + pad around y), computed by
/// pulling back dense ball samples through the inverse map with the same
/// half-diagonal padding rule applied at the preimage side.
BoxSet dual_image(const BoxSet& s, const Scenario& scenario);

/// Inflates M by eta, iterates the image, and reports whether the directed
/// semi-distance to M falls below 2*h with a non-increasing tail. Requires M
/// invariant at grid resolution (image within one cell ring of M).
AttractorTrace is_attractor(const BoxSet& m, const Scenario& scenario, double eta,
                            int max_iter = 200, int burn_in = 5);

/// Exact center-to-center distances between coverings (distance-transform
/// based); the grid analogue of the Hausdorff semi-distance / distance.
double boxset_directed_distance(const BoxSet& a, const BoxSet& b);
double boxset_hausdorff(const BoxSet& a, const BoxSet& b);

/// True when a and b differ by at most a one-cell boundary ring (each cell of
/// one within Chebyshev distance 1 of the other).
bool within_one_cell_ring(const BoxSet& a, const BoxSet& b);

/// Marching-squares outer contour of a covering, counterclockwise.
std::vector<Eigen::Vector2d> boxset_contour(const BoxSet& s);

}  // namespace setdyn
