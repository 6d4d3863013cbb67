#include "makeev/polyline.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <unordered_map>

namespace makeev {

namespace {

bool on_segment(cplx a, cplx b, cplx p) {
  return std::min(a.real(), b.real()) <= p.real() && p.real() <= std::max(a.real(), b.real()) &&
         std::min(a.imag(), b.imag()) <= p.imag() && p.imag() <= std::max(a.imag(), b.imag());
}

double param_along(cplx a, cplx b, cplx p) {
  const cplx d = b - a;
  const double len2 = std::norm(d);
  if (len2 == 0.0) return 0.0;
  return std::clamp(((p - a) * std::conj(d)).real() / len2, 0.0, 1.0);
}

}  // namespace

std::optional<SegmentCrossing> intersect_segments(cplx p0, cplx p1, cplx q0, cplx q1) {
  const double d1 = orient(q0, q1, p0);
  const double d2 = orient(q0, q1, p1);
  const double d3 = orient(p0, p1, q0);
  const double d4 = orient(p0, p1, q1);

  if (((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) && ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0))) {
    const double lambda = d1 / (d1 - d2);
    const double mu = d3 / (d3 - d4);
    return SegmentCrossing{lambda, mu, p0 + lambda * (p1 - p0)};
  }
  auto touch = [&](cplx point) {
    return SegmentCrossing{param_along(p0, p1, point), param_along(q0, q1, point), point};
  };
  if (d3 == 0 && on_segment(p0, p1, q0)) return touch(q0);
  if (d4 == 0 && on_segment(p0, p1, q1)) return touch(q1);
  if (d1 == 0 && on_segment(q0, q1, p0)) return touch(p0);
  if (d2 == 0 && on_segment(q0, q1, p1)) return touch(p1);
  return std::nullopt;
}

std::vector<SelfIntersection> self_intersections(std::span<const cplx> pts, bool closed) {
  std::vector<SelfIntersection> out;
  const std::size_t n = pts.size();
  if (n < 4) return out;
  const std::size_t nseg = closed ? n : n - 1;

  double xmin = pts[0].real(), xmax = xmin, ymin = pts[0].imag(), ymax = ymin;
  double total = 0.0;
  for (std::size_t i = 0; i < nseg; ++i) {
    const cplx a = pts[i], b = pts[(i + 1) % n];
    total += std::abs(b - a);
    xmin = std::min(xmin, a.real());
    xmax = std::max(xmax, a.real());
    ymin = std::min(ymin, a.imag());
    ymax = std::max(ymax, a.imag());
  }
  const double extent = std::max(xmax - xmin, ymax - ymin);
  double cell = std::max(total / static_cast<double>(nseg), extent / std::sqrt(static_cast<double>(nseg)));
  if (!(cell > 0.0)) cell = 1.0;

  auto key = [](long long cx, long long cy) { return (cx * 73856093LL) ^ (cy * 19349663LL); };
  struct Cell {
    long long cx, cy;
    std::vector<std::size_t> segs;
  };
  std::unordered_map<long long, std::vector<Cell>> grid;
  auto bucket = [&](long long cx, long long cy) -> std::vector<std::size_t>& {
    auto& cells = grid[key(cx, cy)];
    for (auto& c : cells)
      if (c.cx == cx && c.cy == cy) return c.segs;
    cells.push_back(Cell{cx, cy, {}});
    return cells.back().segs;
  };

  auto cell_range = [&](std::size_t i) {
    const cplx a = pts[i], b = pts[(i + 1) % n];
    const auto lo_x = static_cast<long long>(std::floor((std::min(a.real(), b.real()) - xmin) / cell));
    const auto hi_x = static_cast<long long>(std::floor((std::max(a.real(), b.real()) - xmin) / cell));
    const auto lo_y = static_cast<long long>(std::floor((std::min(a.imag(), b.imag()) - ymin) / cell));
    const auto hi_y = static_cast<long long>(std::floor((std::max(a.imag(), b.imag()) - ymin) / cell));
    return std::array<long long, 4>{lo_x, hi_x, lo_y, hi_y};
  };

  for (std::size_t i = 0; i < nseg; ++i) {
    const auto r = cell_range(i);
    for (long long cx = r[0]; cx <= r[1]; ++cx)
      for (long long cy = r[2]; cy <= r[3]; ++cy) bucket(cx, cy).push_back(i);
  }

  auto adjacent = [&](std::size_t i, std::size_t j) {
    if (j == i + 1) return true;
    return closed && i == 0 && j == nseg - 1;
  };

  for (std::size_t i = 0; i < nseg; ++i) {
    const auto r = cell_range(i);
    std::vector<std::size_t> candidates;
    for (long long cx = r[0]; cx <= r[1]; ++cx)
      for (long long cy = r[2]; cy <= r[3]; ++cy)
        for (std::size_t j : bucket(cx, cy))
          if (j > i && !adjacent(i, j)) candidates.push_back(j);
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
    for (std::size_t j : candidates) {
      if (auto hit = intersect_segments(pts[i], pts[(i + 1) % n], pts[j], pts[(j + 1) % n])) {
        out.push_back(SelfIntersection{i, j, *hit});
      }
    }
  }
  return out;
}

double polygon_area(std::span<const cplx> pts) noexcept {
  const std::size_t n = pts.size();
  double twice = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const cplx a = pts[i], b = pts[(i + 1) % n];
    twice += a.real() * b.imag() - b.real() * a.imag();
  }
  return 0.5 * twice;
}

double turning_number(std::span<const cplx> vectors) noexcept {
  const std::size_t n = vectors.size();
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) total += std::arg(vectors[(i + 1) % n] / vectors[i]);
  return total / (2.0 * std::numbers::pi);
}

}  // namespace makeev
