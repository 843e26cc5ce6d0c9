#include "setdyn/raster.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

namespace setdyn {

std::vector<uint8_t> fill_polygon(const std::vector<Eigen::Vector2d>& polygon,
                                  const RasterFrame& frame) {
  std::vector<uint8_t> mask(frame.size(), 0);
  const size_t n = polygon.size();
  std::vector<double> xs;
  for (int iy = 0; iy < frame.ny; ++iy) {
    const double y = frame.cy(iy);
    xs.clear();
    for (size_t i = 0; i < n; ++i) {
      const Eigen::Vector2d& a = polygon[i];
      const Eigen::Vector2d& b = polygon[(i + 1) % n];
      // Half-open rule on the y interval avoids double-counting vertices.
      if ((a.y() <= y && b.y() > y) || (b.y() <= y && a.y() > y)) {
        const double t = (y - a.y()) / (b.y() - a.y());
        xs.push_back(a.x() + t * (b.x() - a.x()));
      }
    }
    std::sort(xs.begin(), xs.end());
    for (size_t k = 0; k + 1 < xs.size(); k += 2) {
      int lo = static_cast<int>(std::ceil((xs[k] - frame.x0) / frame.cell - 0.5));
      int hi = static_cast<int>(std::floor((xs[k + 1] - frame.x0) / frame.cell - 0.5));
      lo = std::max(lo, 0);
      hi = std::min(hi, frame.nx - 1);
      if (lo <= hi) std::fill(mask.begin() + frame.at(lo, iy), mask.begin() + frame.at(hi, iy) + 1, 1);
    }
  }
  return mask;
}

namespace {

// 1-d squared distance transform: lower envelope of parabolas
// (Felzenszwalb-Huttenlocher). Values must be finite; callers encode "no
// site" as a large sentinel that can never win against a real site.
void dt_1d(const double* f, int n, double* d, int* v, double* z) {
  int k = 0;
  v[0] = 0;
  z[0] = -std::numeric_limits<double>::infinity();
  z[1] = std::numeric_limits<double>::infinity();
  for (int q = 1; q < n; ++q) {
    double s = ((f[q] + q * q) - (f[v[k]] + v[k] * v[k])) / (2.0 * (q - v[k]));
    while (s <= z[k]) {
      --k;
      s = ((f[q] + q * q) - (f[v[k]] + v[k] * v[k])) / (2.0 * (q - v[k]));
    }
    ++k;
    v[k] = q;
    z[k] = s;
    z[k + 1] = std::numeric_limits<double>::infinity();
  }
  k = 0;
  for (int q = 0; q < n; ++q) {
    while (z[k + 1] < q) ++k;
    const double dq = q - v[k];
    d[q] = dq * dq + f[v[k]];
  }
}

}  // namespace

std::vector<double> edt_squared(const std::vector<uint8_t>& mask, int nx, int ny) {
  std::vector<double> dist(static_cast<size_t>(nx) * ny);
  // Any value above nx^2 + ny^2 can never be undercut by a true site, so the
  // sentinel stays inert through both passes.
  const double sentinel =
      static_cast<double>(nx) * nx + static_cast<double>(ny) * ny + 1.0;
  bool any_site = false;
  for (size_t i = 0; i < dist.size(); ++i) {
    dist[i] = mask[i] ? 0.0 : sentinel;
    any_site = any_site || mask[i];
  }
  if (!any_site) {
    std::fill(dist.begin(), dist.end(), std::numeric_limits<double>::infinity());
    return dist;
  }

  const int n_max = std::max(nx, ny);
  std::vector<double> f(n_max), d(n_max), z(n_max + 1);
  std::vector<int> v(n_max);

  for (int ix = 0; ix < nx; ++ix) {
    for (int iy = 0; iy < ny; ++iy) f[iy] = dist[static_cast<size_t>(iy) * nx + ix];
    dt_1d(f.data(), ny, d.data(), v.data(), z.data());
    for (int iy = 0; iy < ny; ++iy) dist[static_cast<size_t>(iy) * nx + ix] = d[iy];
  }
  for (int iy = 0; iy < ny; ++iy) {
    double* row = dist.data() + static_cast<size_t>(iy) * nx;
    std::copy(row, row + nx, f.data());
    dt_1d(f.data(), nx, d.data(), v.data(), z.data());
    std::copy(d.data(), d.data() + nx, row);
  }
  return dist;
}

std::vector<uint8_t> dilate_by_disk(const std::vector<uint8_t>& mask,
                                    const RasterFrame& frame, double radius) {
  const std::vector<double> d2 = edt_squared(mask, frame.nx, frame.ny);
  const double r_cells = radius / frame.cell;
  const double r2 = r_cells * r_cells;
  std::vector<uint8_t> out(mask.size());
  for (size_t i = 0; i < mask.size(); ++i) out[i] = d2[i] <= r2 ? 1 : 0;
  return out;
}

namespace {

// Contour vertices sit on lattice-edge midpoints. Key them by doubled cell
// coordinates so lookups stay integral.
struct EdgeKey {
  int64_t x2, y2;
  bool operator<(const EdgeKey& o) const { return x2 != o.x2 ? x2 < o.x2 : y2 < o.y2; }
  bool operator==(const EdgeKey& o) const { return x2 == o.x2 && y2 == o.y2; }
};

}  // namespace

std::vector<std::vector<Eigen::Vector2d>> marching_squares(
    const std::vector<uint8_t>& mask, const RasterFrame& frame) {
  const int nx = frame.nx, ny = frame.ny;
  auto sample = [&](int ix, int iy) -> int {
    if (ix < 0 || iy < 0 || ix >= nx || iy >= ny) return 0;
    return mask[frame.at(ix, iy)] ? 1 : 0;
  };

  // Segments between edge midpoints in doubled-index coordinates (cell
  // (ix,iy) center at (2ix, 2iy)), oriented with the filled region on the
  // left so outer contours come out counterclockwise.
  std::vector<std::pair<EdgeKey, EdgeKey>> segments;
  for (int iy = -1; iy < ny; ++iy) {
    for (int ix = -1; ix < nx; ++ix) {
      const int bl = sample(ix, iy);
      const int br = sample(ix + 1, iy);
      const int tl = sample(ix, iy + 1);
      const int tr = sample(ix + 1, iy + 1);
      const int code = bl | (br << 1) | (tr << 2) | (tl << 3);
      if (code == 0 || code == 15) continue;

      const EdgeKey bottom{2 * ix + 1, 2 * iy};
      const EdgeKey right{2 * ix + 2, 2 * iy + 1};
      const EdgeKey top{2 * ix + 1, 2 * iy + 2};
      const EdgeKey left{2 * ix, 2 * iy + 1};

      switch (code) {
        case 1: segments.push_back({bottom, left}); break;
        case 2: segments.push_back({right, bottom}); break;
        case 3: segments.push_back({right, left}); break;
        case 4: segments.push_back({top, right}); break;
        case 6: segments.push_back({top, bottom}); break;
        case 7: segments.push_back({top, left}); break;
        case 8: segments.push_back({left, top}); break;
        case 9: segments.push_back({bottom, top}); break;
        case 11: segments.push_back({right, top}); break;
        case 12: segments.push_back({left, right}); break;
        case 13: segments.push_back({bottom, right}); break;
        case 14: segments.push_back({left, bottom}); break;
        case 5:  // saddle, foreground kept 4-connected
          segments.push_back({bottom, left});
          segments.push_back({top, right});
          break;
        case 10:
          segments.push_back({right, bottom});
          segments.push_back({left, top});
          break;
        default: break;
      }
    }
  }

  std::map<EdgeKey, std::pair<EdgeKey, bool>> next;  // tail -> (head, visited)
  for (const auto& s : segments) next[s.first] = {s.second, false};

  std::vector<std::vector<Eigen::Vector2d>> loops;
  for (const auto& s : segments) {
    auto it = next.find(s.first);
    if (it->second.second) continue;
    std::vector<Eigen::Vector2d> loop;
    EdgeKey cur = s.first;
    while (true) {
      auto jt = next.find(cur);
      if (jt == next.end() || jt->second.second) break;
      jt->second.second = true;
      loop.emplace_back(frame.x0 + (jt->first.x2 * 0.5 + 0.5) * frame.cell,
                        frame.y0 + (jt->first.y2 * 0.5 + 0.5) * frame.cell);
      cur = jt->second.first;
      if (cur == s.first) break;
    }
    if (loop.size() >= 3) loops.push_back(std::move(loop));
  }
  return loops;
}

std::vector<Eigen::Vector2d> outer_contour(
    const std::vector<std::vector<Eigen::Vector2d>>& contours) {
  const std::vector<Eigen::Vector2d>* best = nullptr;
  double best_area = -1.0;
  for (const auto& c : contours) {
    const double a = std::abs(polygon_signed_area(c));
    if (a > best_area) {
      best_area = a;
      best = &c;
    }
  }
  return best ? *best : std::vector<Eigen::Vector2d>{};
}

double polygon_signed_area(const std::vector<Eigen::Vector2d>& polygon) {
  double a = 0.0;
  const size_t n = polygon.size();
  for (size_t i = 0; i < n; ++i) {
    const auto& p = polygon[i];
    const auto& q = polygon[(i + 1) % n];
    a += p.x() * q.y() - q.x() * p.y();
  }
  return 0.5 * a;
}

double polygon_perimeter(const std::vector<Eigen::Vector2d>& polygon) {
  double len = 0.0;
  const size_t n = polygon.size();
  for (size_t i = 0; i < n; ++i) len += (polygon[(i + 1) % n] - polygon[i]).norm();
  return len;
}

}  // namespace setdyn
