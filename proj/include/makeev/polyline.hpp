#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace makeev {

using cplx = std::complex<double>;

// Twice the signed area of triangle (a, b, c); positive when counter-clockwise.
inline double orient(cplx a, cplx b, cplx c) noexcept {
  return (b.real() - a.real()) * (c.imag() - a.imag()) - (b.imag() - a.imag()) * (c.real() - a.real());
}

struct SegmentCrossing {
  double lambda = 0.0;  // position along the first segment, in [0, 1]
  double mu = 0.0;      // position along the second segment, in [0, 1]
  cplx point;
};

// Intersection of closed segments [p0, p1] and [q0, q1]. Collinear overlaps
// report the first overlapping point of the second segment.
std::optional<SegmentCrossing> intersect_segments(cplx p0, cplx p1, cplx q0, cplx q1);

struct SelfIntersection {
  std::size_t i = 0;  // segment i runs from pts[i] to pts[i+1] (wrapping when closed)
  std::size_t j = 0;  // i < j
  SegmentCrossing crossing;
};

// All pairs of non-adjacent intersecting segments, found with a uniform-grid
// spatial hash. Results are sorted by (i, j).
std::vector<SelfIntersection> self_intersections(std::span<const cplx> pts, bool closed);

// Green's-theorem area of the closed polygon through pts (shoelace formula);
// positive for counter-clockwise traversal.
double polygon_area(std::span<const cplx> pts) noexcept;

// Net turning of the closed sequence of nonzero vectors, in full turns
// (accumulated principal arguments of consecutive ratios, divided by 2*pi).
double turning_number(std::span<const cplx> vectors) noexcept;

}  // namespace makeev
