#include "setdyn/setvalued.hpp"

#include <atomic>
#include <cmath>
#include <numbers>
#include <random>

#include "parallel.hpp"

namespace setdyn {

Grid make_grid(const Box& window, double cell_size) {
  if (window.dimension() != 2) raise(ErrorKind::ConfigError, "grids are planar (d = 2)");
  if (!(cell_size > 0.0)) raise(ErrorKind::ConfigError, "cell size must be positive");
  Grid g;
  g.window = window;
  g.cell_size = cell_size;
  const double lx = window.hi[0] - window.lo[0];
  const double ly = window.hi[1] - window.lo[1];
  g.nx = static_cast<int>(std::llround(lx / cell_size));
  g.ny = static_cast<int>(std::llround(ly / cell_size));
  if (g.nx < 3 || g.ny < 3) raise(ErrorKind::ConfigError, "window too small for the grid");
  if (std::abs(g.nx * cell_size - lx) > 1e-12 || std::abs(g.ny * cell_size - ly) > 1e-12)
    raise(ErrorKind::ConfigError, "window edges are not integer multiples of the cell size");
  return g;
}

bool Grid::cell_of(const Eigen::Vector2d& p, int& ix, int& iy) const {
  ix = static_cast<int>(std::floor((p.x() - window.lo[0]) / cell_size));
  iy = static_cast<int>(std::floor((p.y() - window.lo[1]) / cell_size));
  return ix >= 0 && iy >= 0 && ix < nx && iy < ny;
}

std::vector<Point> BoxSet::cell_centers() const {
  std::vector<Point> pts;
  pts.reserve(cells.size());
  for (const Cell& c : cells) {
    Eigen::VectorXd p(2);
    p << grid.window.lo[0] + (c.ix + 0.5) * grid.cell_size,
        grid.window.lo[1] + (c.iy + 0.5) * grid.cell_size;
    pts.push_back(std::move(p));
  }
  return pts;
}

namespace {

bool same_grid(const Grid& a, const Grid& b) {
  return a.nx == b.nx && a.ny == b.ny && a.cell_size == b.cell_size &&
         a.window.lo == b.window.lo && a.window.hi == b.window.hi;
}

std::vector<uint8_t> to_bitmap(const BoxSet& s) {
  std::vector<uint8_t> bm(static_cast<size_t>(s.grid.nx) * s.grid.ny, 0);
  for (const Cell& c : s.cells) bm[static_cast<size_t>(c.iy) * s.grid.nx + c.ix] = 1;
  return bm;
}

BoxSet from_bitmap(const Grid& grid, const std::vector<uint8_t>& bm) {
  BoxSet out;
  out.grid = grid;
  const uint64_t* words = reinterpret_cast<const uint64_t*>(bm.data());
  const size_t n_words = bm.size() / 8;
  // Row-major scan gives the canonical (iy, ix) ordering.
  for (int iy = 0; iy < grid.ny; ++iy) {
    const size_t row = static_cast<size_t>(iy) * grid.nx;
    for (int ix = 0; ix < grid.nx; ++ix) {
      const size_t idx = row + ix;
      if (idx / 8 < n_words && idx % 8 == 0 && words[idx / 8] == 0) {
        ix += 7;
        continue;
      }
      if (bm[idx]) out.cells.push_back({ix, iy});
    }
  }
  return out;
}

// x-interval of {p : dist(p, segment AB) <= r} on the horizontal line y.
// The distance to a segment is convex in p, so the sublevel set meets the
// row in one interval; its endpoints are circle or offset-line crossings.
bool capsule_row_span(double ax, double ay, double bx, double by, double r, double y,
                      double& x_lo, double& x_hi) {
  const double dx = bx - ax, dy = by - ay;
  const double len2 = dx * dx + dy * dy;
  bool any = false;
  x_lo = std::numeric_limits<double>::infinity();
  x_hi = -x_lo;
  auto admit = [&](double x) {
    x_lo = std::min(x_lo, x);
    x_hi = std::max(x_hi, x);
    any = true;
  };
  auto t_of = [&](double x) {
    return len2 > 0.0 ? ((x - ax) * dx + (y - ay) * dy) / len2 : 0.0;
  };
  const double sa = r * r - (y - ay) * (y - ay);
  if (sa >= 0.0) {
    const double s = std::sqrt(sa);
    if (t_of(ax - s) <= 1e-12) admit(ax - s);
    if (t_of(ax + s) <= 1e-12) admit(ax + s);
  }
  const double sb = r * r - (y - by) * (y - by);
  if (sb >= 0.0) {
    const double s = std::sqrt(sb);
    if (t_of(bx - s) >= 1.0 - 1e-12) admit(bx - s);
    if (t_of(bx + s) >= 1.0 - 1e-12) admit(bx + s);
  }
  if (std::abs(dy) > 1e-300) {
    // |cross((B-A), (x,y)-A)| = r * |AB|
    const double rl = r * std::sqrt(len2);
    for (double sign : {-1.0, 1.0}) {
      const double x = ax + (dx * (y - ay) - sign * rl) / dy;
      const double t = t_of(x);
      if (t >= -1e-12 && t <= 1.0 + 1e-12) admit(x);
    }
  }
  return any;
}

// Paints all cells whose center lies in the closed ball B_r(fx, fy); returns
// true when the ball's index range touches the window's outermost cell ring
// (or leaves the window entirely).
bool paint_ball(uint8_t* bm, const Grid& g, double fx, double fy, double r) {
  const double inv_h = 1.0 / g.cell_size;
  const double x0 = g.window.lo[0], y0 = g.window.lo[1];
  const int iy_lo = static_cast<int>(std::ceil((fy - r - y0) * inv_h - 0.5));
  const int iy_hi = static_cast<int>(std::floor((fy + r - y0) * inv_h - 0.5));
  if (iy_lo <= 0 || iy_hi >= g.ny - 1) return true;
  const double r2 = r * r;
  for (int iy = iy_lo; iy <= iy_hi; ++iy) {
    const double dy = y0 + (iy + 0.5) * g.cell_size - fy;
    const double s = r2 - dy * dy;
    if (s < 0.0) continue;
    const double dx = std::sqrt(s);
    const int ix_lo = static_cast<int>(std::ceil((fx - dx - x0) * inv_h - 0.5));
    const int ix_hi = static_cast<int>(std::floor((fx + dx - x0) * inv_h - 0.5));
    if (ix_lo <= 0 || ix_hi >= g.nx - 1) return true;
    if (ix_lo > ix_hi) continue;
    uint8_t* row = bm + static_cast<size_t>(iy) * g.nx;
    std::fill(row + ix_lo, row + ix_hi + 1, uint8_t{1});
  }
  return false;
}

// Capsule analogue of paint_ball for a whole row-run of cell centers mapped
// to the segment AB (constant-Jacobian maps send collinear centers to a
// segment, so the union of their balls is this convex capsule).
bool paint_capsule(uint8_t* bm, const Grid& g, double ax, double ay, double bx, double by,
                   double r) {
  const double inv_h = 1.0 / g.cell_size;
  const double x0 = g.window.lo[0], y0 = g.window.lo[1];
  const int iy_lo = static_cast<int>(std::ceil((std::min(ay, by) - r - y0) * inv_h - 0.5));
  const int iy_hi = static_cast<int>(std::floor((std::max(ay, by) + r - y0) * inv_h - 0.5));
  if (iy_lo <= 0 || iy_hi >= g.ny - 1) return true;
  for (int iy = iy_lo; iy <= iy_hi; ++iy) {
    const double y = y0 + (iy + 0.5) * g.cell_size;
    double xl, xr;
    if (!capsule_row_span(ax, ay, bx, by, r, y, xl, xr)) continue;
    const int ix_lo = static_cast<int>(std::ceil((xl - x0) * inv_h - 0.5));
    const int ix_hi = static_cast<int>(std::floor((xr - x0) * inv_h - 0.5));
    if (ix_lo <= 0 || ix_hi >= g.nx - 1) return true;
    if (ix_lo > ix_hi) continue;
    uint8_t* row = bm + static_cast<size_t>(iy) * g.nx;
    std::fill(row + ix_lo, row + ix_hi + 1, uint8_t{1});
  }
  return false;
}

// Reusable state for iterated image computations: per-worker bitmaps plus
// corner-lattice bookkeeping so shared cell corners are evaluated once.
class ImageEngine {
  struct Run {
    int iy, ix_begin, ix_end;
  };

public:
  ImageEngine(const Grid& grid, const Scenario& scenario)
      : grid_(grid),
        scenario_(scenario),
        workers_(std::max(1, detail::worker_count())),
        cnx_(grid.nx + 1),
        cny_(grid.ny + 1) {
    bitmaps_.resize(workers_);
    for (auto& bm : bitmaps_) bm.assign(grid_.frame().size() + 8, 0);
    corner_mark_.assign(static_cast<size_t>(cnx_) * cny_, 0);
    corner_jn_.assign(static_cast<size_t>(cnx_) * cny_, 0.0f);
  }

  BoxSet image(const BoxSet& s) {
    if (s.empty()) raise(ErrorKind::EmptySet, "image of an empty covering");
    if (!same_grid(s.grid, grid_)) raise(ErrorKind::ConfigError, "grid mismatch");
    const double h = grid_.cell_size;
    const double pad_factor = h * std::numbers::sqrt2 / 4.0;
    const auto& map = *scenario_.diffeo;
    if (map.constant_jacobian()) return image_linear(s, pad_factor);

    // Unique corners of the active cells; corners only feed the local
    // Jacobian bound, the balls themselves are painted at cell centers.
    corner_list_.clear();
    for (const Cell& c : s.cells) {
      const int corners[4] = {corner_id(c.ix, c.iy), corner_id(c.ix + 1, c.iy),
                              corner_id(c.ix, c.iy + 1), corner_id(c.ix + 1, c.iy + 1)};
      for (int id : corners) {
        if (!corner_mark_[id]) {
          corner_mark_[id] = 1;
          corner_list_.push_back(id);
        }
      }
    }

    // Jacobian norms at unique corners, then cell pads scattered onto them.
    detail::parallel_chunks(corner_list_.size(), 4096, [&](size_t b, size_t e, int) {
      for (size_t i = b; i < e; ++i) {
        const int id = corner_list_[i];
        corner_jn_[id] = static_cast<float>(map.jacobian_norm2(corner_x(id), corner_y(id)));
      }
    });

    center_rad_.resize(s.cells.size());
    for (size_t k = 0; k < s.cells.size(); ++k) {
      const Cell& c = s.cells[k];
      const double cx = grid_.window.lo[0] + (c.ix + 0.5) * h;
      const double cy = grid_.window.lo[1] + (c.iy + 0.5) * h;
      double jn = map.jacobian_norm2(cx, cy);
      const int ids[4] = {corner_id(c.ix, c.iy), corner_id(c.ix + 1, c.iy),
                          corner_id(c.ix, c.iy + 1), corner_id(c.ix + 1, c.iy + 1)};
      for (int id : ids) jn = std::max(jn, static_cast<double>(corner_jn_[id]));
      center_rad_[k] = static_cast<float>(scenario_.epsilon + jn * pad_factor);
    }

    // Paint each cell's ball around the image of its center.
    for (auto& bm : bitmaps_) std::fill(bm.begin(), bm.end(), uint8_t{0});
    std::atomic<bool> escaped{false};
    std::atomic<bool> non_finite{false};
    detail::parallel_chunks(s.cells.size(), 2048, [&](size_t b, size_t e, int w) {
      uint8_t* bm = bitmaps_[w].data();
      for (size_t i = b; i < e; ++i) {
        if (escaped.load(std::memory_order_relaxed) ||
            non_finite.load(std::memory_order_relaxed))
          return;
        const Cell& c = s.cells[i];
        const double px = grid_.window.lo[0] + (c.ix + 0.5) * h;
        const double py = grid_.window.lo[1] + (c.iy + 0.5) * h;
        double fx, fy;
        map.forward2(px, py, fx, fy);
        if (!std::isfinite(fx) || !std::isfinite(fy)) {
          non_finite.store(true, std::memory_order_relaxed);
          return;
        }
        if (paint_ball(bm, grid_, fx, fy, center_rad_[i])) {
          escaped.store(true, std::memory_order_relaxed);
          return;
        }
      }
    });

    for (int id : corner_list_) corner_mark_[id] = 0;
    if (non_finite.load()) raise(ErrorKind::NonFinite, "forward map overflow");
    if (escaped.load())
      raise(ErrorKind::WindowEscape, "image reaches the window boundary ring");

    // Deterministic union of the worker bitmaps.
    auto& acc = bitmaps_[0];
    for (int w = 1; w < workers_; ++w) {
      uint64_t* a = reinterpret_cast<uint64_t*>(acc.data());
      const uint64_t* b = reinterpret_cast<const uint64_t*>(bitmaps_[w].data());
      for (size_t i = 0; i < acc.size() / 8; ++i) a[i] |= b[i];
    }
    return from_bitmap(grid_, acc);
  }

  // Linear maps send each row-run of cell centers to a segment, so the union
  // of the per-center balls is a capsule per run: far fewer paint calls.
  BoxSet image_linear(const BoxSet& s, double pad_factor) {
    const double h = grid_.cell_size;
    const auto& map = *scenario_.diffeo;
    const double rad = scenario_.epsilon + map.jacobian_norm2(0.0, 0.0) * pad_factor;

    runs_.clear();
    for (size_t i = 0; i < s.cells.size();) {
      size_t j = i + 1;
      while (j < s.cells.size() && s.cells[j].iy == s.cells[i].iy &&
             s.cells[j].ix == s.cells[j - 1].ix + 1)
        ++j;
      runs_.push_back({s.cells[i].iy, s.cells[i].ix, s.cells[j - 1].ix});
      i = j;
    }

    for (auto& bm : bitmaps_) std::fill(bm.begin(), bm.end(), uint8_t{0});
    std::atomic<bool> escaped{false};
    std::atomic<bool> non_finite{false};
    detail::parallel_chunks(runs_.size(), 64, [&](size_t b, size_t e, int w) {
      uint8_t* bm = bitmaps_[w].data();
      for (size_t i = b; i < e; ++i) {
        if (escaped.load(std::memory_order_relaxed) ||
            non_finite.load(std::memory_order_relaxed))
          return;
        const auto& run = runs_[i];
        const double y = grid_.window.lo[1] + (run.iy + 0.5) * h;
        double ax, ay, bx, by;
        map.forward2(grid_.window.lo[0] + (run.ix_begin + 0.5) * h, y, ax, ay);
        map.forward2(grid_.window.lo[0] + (run.ix_end + 0.5) * h, y, bx, by);
        if (!std::isfinite(ax) || !std::isfinite(ay) || !std::isfinite(bx) ||
            !std::isfinite(by)) {
          non_finite.store(true, std::memory_order_relaxed);
          return;
        }
        if (paint_capsule(bm, grid_, ax, ay, bx, by, rad)) {
          escaped.store(true, std::memory_order_relaxed);
          return;
        }
      }
    });
    if (non_finite.load()) raise(ErrorKind::NonFinite, "forward map overflow");
    if (escaped.load())
      raise(ErrorKind::WindowEscape, "image reaches the window boundary ring");

    auto& acc = bitmaps_[0];
    for (int w = 1; w < workers_; ++w) {
      uint64_t* a = reinterpret_cast<uint64_t*>(acc.data());
      const uint64_t* b = reinterpret_cast<const uint64_t*>(bitmaps_[w].data());
      for (size_t i = 0; i < acc.size() / 8; ++i) a[i] |= b[i];
    }
    return from_bitmap(grid_, acc);
  }

  BoxSet omega(const Eigen::Vector2d& seed, int burn_in, int max_iter) {
    int ix, iy;
    if (!grid_.cell_of(seed, ix, iy))
      raise(ErrorKind::ConfigError, "omega-limit seed outside the window");
    BoxSet cur;
    cur.grid = grid_;
    cur.cells.push_back({ix, iy});
    for (int k = 0; k < max_iter; ++k) {
      BoxSet next = image(cur);
      if (k >= burn_in && next.cells == cur.cells) return cur;
      cur = std::move(next);
    }
    raise(ErrorKind::NoStabilization,
          "covering did not stabilize in " + std::to_string(max_iter) + " iterations");
  }

private:
  int corner_id(int ix, int iy) const { return iy * cnx_ + ix; }
  double corner_x(int id) const { return grid_.window.lo[0] + (id % cnx_) * grid_.cell_size; }
  double corner_y(int id) const { return grid_.window.lo[1] + (id / cnx_) * grid_.cell_size; }

  Grid grid_;
  const Scenario& scenario_;
  int workers_;
  int cnx_, cny_;
  std::vector<std::vector<uint8_t>> bitmaps_;
  std::vector<uint8_t> corner_mark_;
  std::vector<float> corner_jn_;
  std::vector<Run> runs_;
  std::vector<int> corner_list_;
  std::vector<float> center_rad_;
};

}  // namespace

BoxSet image_boxset(const BoxSet& s, const Scenario& scenario) {
  ImageEngine engine(s.grid, scenario);
  return engine.image(s);
}

BoxSet omega_limit(const Eigen::Vector2d& seed, const Scenario& scenario, const Grid& grid,
                   int burn_in, int max_iter) {
  ImageEngine engine(grid, scenario);
  return engine.omega(seed, burn_in, max_iter);
}

MinimalResult minimal_invariant_set(const Scenario& scenario, const Grid& grid, int n_seeds,
                                    uint64_t rng_seed, int burn_in, int max_iter) {
  if (n_seeds < 5) raise(ErrorKind::ConfigError, "certificate needs at least 5 seeds");
  ImageEngine engine(grid, scenario);

  MinimalResult result;
  result.covering = engine.omega(grid.window.center().head<2>(), burn_in, max_iter);
  const BoxSet& m = result.covering;

  // Interior cells (all 8 neighbours covered) are the seed candidates.
  const std::vector<uint8_t> bm = to_bitmap(m);
  std::vector<Cell> interior;
  for (const Cell& c : m.cells) {
    if (c.ix == 0 || c.iy == 0 || c.ix == grid.nx - 1 || c.iy == grid.ny - 1) continue;
    bool ok = true;
    for (int dy = -1; dy <= 1 && ok; ++dy)
      for (int dx = -1; dx <= 1 && ok; ++dx)
        ok = bm[static_cast<size_t>(c.iy + dy) * grid.nx + (c.ix + dx)] != 0;
    if (ok) interior.push_back(c);
  }
  if (interior.empty()) interior = m.cells;

  // One seed per stratum of the row-major cell order, drawn from rng_seed.
  std::mt19937_64 rng(rng_seed);
  result.certificate.max_defect = 0.0;
  for (int k = 0; k < n_seeds; ++k) {
    const size_t lo = interior.size() * k / n_seeds;
    const size_t hi = std::max(lo + 1, interior.size() * (k + 1) / n_seeds);
    std::uniform_int_distribution<size_t> pick(lo, hi - 1);
    const Cell c = interior[pick(rng)];
    const Eigen::Vector2d seed = grid.center(c.ix, c.iy);
    Eigen::VectorXd seed_pt(2);
    seed_pt << seed.x(), seed.y();
    result.certificate.seeds.push_back(seed_pt);

    const BoxSet w = engine.omega(seed, burn_in, max_iter);
    result.certificate.max_defect =
        std::max(result.certificate.max_defect, boxset_hausdorff(w, m));
  }
  result.certificate.pass = result.certificate.max_defect <= 2.0 * grid.cell_size;
  return result;
}

BoxSet dual_image(const BoxSet& s, const Scenario& scenario) {
  if (s.empty()) raise(ErrorKind::EmptySet, "dual image of an empty covering");
  const Grid& grid = s.grid;
  const double h = grid.cell_size;
  const double pad_src = h * std::numbers::sqrt2 / 4.0;
  const double radius = scenario.epsilon + pad_src;
  const double step = h / 2.0;

  std::vector<uint8_t> bm(grid.frame().size() + 8, 0);
  bool escaped = false;

  // Sample points of each cell (corners + center), then pull back a dense
  // sampling of the ball around each through the inverse map.
  std::vector<Eigen::Vector2d> samples;
  for (const Cell& c : s.cells) {
    const double x = grid.window.lo[0] + c.ix * h;
    const double y = grid.window.lo[1] + c.iy * h;
    samples.push_back({x, y});
    samples.push_back({x + h, y});
    samples.push_back({x, y + h});
    samples.push_back({x + h, y + h});
    samples.push_back({x + h / 2, y + h / 2});
  }

  Eigen::VectorXd z(2);
  for (const auto& y0 : samples) {
    if (escaped) break;
    // Interior lattice plus the boundary circle of the ball.
    std::vector<Eigen::Vector2d> ball;
    const int n = static_cast<int>(std::ceil(radius / step));
    for (int i = -n; i <= n; ++i)
      for (int j = -n; j <= n; ++j) {
        const double dx = i * step, dy = j * step;
        if (dx * dx + dy * dy <= radius * radius) ball.push_back({y0.x() + dx, y0.y() + dy});
      }
    const int arc = std::max(8, static_cast<int>(std::ceil(2.0 * std::numbers::pi * radius / step)));
    for (int i = 0; i < arc; ++i) {
      const double t = 2.0 * std::numbers::pi * i / arc;
      ball.push_back({y0.x() + radius * std::cos(t), y0.y() + radius * std::sin(t)});
    }

    for (const auto& zb : ball) {
      z << zb.x(), zb.y();
      const Eigen::VectorXd x = scenario.diffeo->inverse(z);
      const Eigen::MatrixXd j = scenario.diffeo->jacobian(x);
      const double det = std::abs(j.determinant());
      if (det < 1e-10) raise(ErrorKind::SingularJacobian, "dual image at singular point");
      // ||J^{-1}||_2 = 1 / sigma_min(J)
      const double t2 = j.squaredNorm();
      const double disc = std::max(0.0, t2 * t2 - 4.0 * det * det);
      const double smin = std::sqrt(std::max(1e-300, 0.5 * (t2 - std::sqrt(disc))));
      const double pad = (1.0 / smin) * h * std::numbers::sqrt2 / 4.0;
      if (paint_ball(bm.data(), grid, x[0], x[1], pad)) {
        escaped = true;
        break;
      }
    }
  }
  if (escaped) raise(ErrorKind::WindowEscape, "dual image reaches the window boundary ring");
  return from_bitmap(grid, bm);
}

AttractorTrace is_attractor(const BoxSet& m, const Scenario& scenario, double eta,
                            int max_iter, int burn_in) {
  if (!(eta > 0.0)) raise(ErrorKind::ConfigError, "eta must be positive");
  ImageEngine engine(m.grid, scenario);
  {
    const BoxSet im = engine.image(m);
    if (!within_one_cell_ring(im, m))
      raise(ErrorKind::NotInvariant, "covering is not invariant at grid resolution");
  }
  const Grid& grid = m.grid;
  const double h = grid.cell_size;

  // V = B_eta(M) at grid resolution.
  std::vector<uint8_t> bm(grid.frame().size() + 8, 0);
  for (const Cell& c : m.cells) {
    if (paint_ball(bm.data(), grid, grid.window.lo[0] + (c.ix + 0.5) * h,
                   grid.window.lo[1] + (c.iy + 0.5) * h, eta))
      raise(ErrorKind::WindowEscape, "eta-neighbourhood reaches the window boundary ring");
  }
  BoxSet cur = from_bitmap(grid, bm);

  const std::vector<double> m_edt = edt_squared(to_bitmap(m), grid.nx, grid.ny);
  auto directed_to_m = [&](const BoxSet& s) {
    double worst = 0.0;
    for (const Cell& c : s.cells)
      worst = std::max(worst, m_edt[static_cast<size_t>(c.iy) * grid.nx + c.ix]);
    return std::sqrt(worst) * h;
  };

  AttractorTrace trace;
  bool reached = false;
  for (int k = 0; k < max_iter; ++k) {
    cur = engine.image(cur);
    const double d = directed_to_m(cur);
    trace.distances.push_back(d);
    if (d < 2.0 * h) {
      reached = true;
      break;
    }
  }
  bool monotone = true;
  for (size_t k = std::max(0, burn_in); k + 1 < trace.distances.size(); ++k)
    if (trace.distances[k + 1] > trace.distances[k] + h / 2.0) monotone = false;
  trace.attracting = reached && monotone;
  return trace;
}

double boxset_directed_distance(const BoxSet& a, const BoxSet& b) {
  if (a.empty() || b.empty()) raise(ErrorKind::EmptySet, "distance of an empty covering");
  if (!same_grid(a.grid, b.grid)) raise(ErrorKind::ConfigError, "grid mismatch");
  const std::vector<double> b_edt = edt_squared(to_bitmap(b), b.grid.nx, b.grid.ny);
  double worst = 0.0;
  for (const Cell& c : a.cells)
    worst = std::max(worst, b_edt[static_cast<size_t>(c.iy) * a.grid.nx + c.ix]);
  return std::sqrt(worst) * a.grid.cell_size;
}

double boxset_hausdorff(const BoxSet& a, const BoxSet& b) {
  return std::max(boxset_directed_distance(a, b), boxset_directed_distance(b, a));
}

bool within_one_cell_ring(const BoxSet& a, const BoxSet& b) {
  if (!same_grid(a.grid, b.grid)) raise(ErrorKind::ConfigError, "grid mismatch");
  const int nx = a.grid.nx, ny = a.grid.ny;
  auto covered = [&](const BoxSet& s, const BoxSet& of) {
    const std::vector<uint8_t> bm = to_bitmap(of);
    for (const Cell& c : s.cells) {
      bool hit = false;
      for (int dy = -1; dy <= 1 && !hit; ++dy)
        for (int dx = -1; dx <= 1 && !hit; ++dx) {
          const int x = c.ix + dx, y = c.iy + dy;
          if (x < 0 || y < 0 || x >= nx || y >= ny) continue;
          hit = bm[static_cast<size_t>(y) * nx + x] != 0;
        }
      if (!hit) return false;
    }
    return true;
  };
  return covered(a, b) && covered(b, a);
}

std::vector<Eigen::Vector2d> boxset_contour(const BoxSet& s) {
  if (s.empty()) raise(ErrorKind::EmptySet, "contour of an empty covering");
  return outer_contour(marching_squares(to_bitmap(s), s.grid.frame()));
}

}  // namespace setdyn
