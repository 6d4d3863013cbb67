#pragma once

#include <array>
#include <complex>

#include "makeev/polyline.hpp"

namespace makeev {

struct QuadTolerances {
  double concyclic = 1e-9;  // on Im / |.| of the cross-ratio
  double base = 1e-12;      // minimal |b - a|
  double area = 1e-12;      // minimal relative triangle area
};

struct ShapeRatios {
  cplx r;  // (c - a) / (b - a)
  cplx q;  // (d - a) / (b - a)
};

// Orientation-preserving similarity z -> alpha z + beta.
struct SimilarityMap {
  cplx alpha{1.0, 0.0};
  cplx beta{0.0, 0.0};

  cplx operator()(cplx z) const noexcept { return alpha * z + beta; }
  double determinant() const noexcept { return std::norm(alpha); }
};

cplx apply(const SimilarityMap& sigma, cplx z) noexcept;
SimilarityMap similarity_from_pair(cplx a, cplx b, cplx a_image, cplx b_image, double tol_base = 1e-12);

struct Circumdata {
  cplx center;
  double radius = 0.0;
  std::array<cplx, 4> offsets{};  // r_a, r_b, r_c, r_d
};

cplx circumcenter(cplx p1, cplx p2, cplx p3, double tol_area = 1e-12);

// (a - c)(b - d) / ((a - d)(b - c)); real exactly when the points are concyclic
// or collinear.
cplx cross_ratio(cplx a, cplx b, cplx c, cplx d) noexcept;

// Four concyclic points a, b, c, d with a, b, c pairwise distinct and not
// collinear. The fourth point may coincide with one of the first three.
class Quadrangle {
 public:
  Quadrangle(cplx a, cplx b, cplx c, cplx d, QuadTolerances tol = {});

  cplx a() const noexcept { return pts_[0]; }
  cplx b() const noexcept { return pts_[1]; }
  cplx c() const noexcept { return pts_[2]; }
  cplx d() const noexcept { return pts_[3]; }
  const std::array<cplx, 4>& points() const noexcept { return pts_; }

  // Cyclic relabeling (a, b, c, d) -> (b, c, d, a), applied `steps` times.
  Quadrangle rotated_roles(int steps) const;
  Quadrangle mapped(const SimilarityMap& sigma) const;

  // Normalized imaginary part of the cross-ratio.
  double concyclic_defect() const noexcept;

 private:
  std::array<cplx, 4> pts_;
  QuadTolerances tol_;
};

double concyclic_defect(cplx a, cplx b, cplx c, cplx d) noexcept;

ShapeRatios shape_ratios(const Quadrangle& quad);
Circumdata circumdata(const Quadrangle& quad);

}  // namespace makeev
