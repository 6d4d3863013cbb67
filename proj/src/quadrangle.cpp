#include "makeev/quadrangle.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "makeev/error.hpp"

namespace makeev {

cplx apply(const SimilarityMap& sigma, cplx z) noexcept { return sigma(z); }

SimilarityMap similarity_from_pair(cplx a, cplx b, cplx a_image, cplx b_image, double tol_base) {
  if (std::abs(b - a) < tol_base)
    throw GeometryError(ErrorKind::DegenerateBase, "similarity base points coincide");
  const cplx alpha = (b_image - a_image) / (b - a);
  if (alpha == cplx(0.0)) throw GeometryError(ErrorKind::DegenerateBase, "image base points coincide");
  return SimilarityMap{alpha, a_image - alpha * a};
}

cplx circumcenter(cplx p1, cplx p2, cplx p3, double tol_area) {
  const cplx u = p2 - p1;
  const cplx v = p3 - p1;
  const double twice_area = orient(p1, p2, p3);
  const double scale = std::max({std::norm(u), std::norm(v), std::norm(p3 - p2)});
  if (std::abs(twice_area) <= tol_area * scale || scale == 0.0)
    throw GeometryError(ErrorKind::CollinearPoints, "circumcenter of collinear points is undefined");
  // Solve |o - p1| = |o - p2| = |o - p3| with o = p1 + w.
  const double nu = std::norm(u), nv = std::norm(v);
  const double det = 2.0 * (u.real() * v.imag() - u.imag() * v.real());
  const double wx = (nu * v.imag() - nv * u.imag()) / det;
  const double wy = (nv * u.real() - nu * v.real()) / det;
  return p1 + cplx(wx, wy);
}

cplx cross_ratio(cplx a, cplx b, cplx c, cplx d) noexcept { return (a - c) * (b - d) / ((a - d) * (b - c)); }

double concyclic_defect(cplx a, cplx b, cplx c, cplx d) noexcept {
  const double scale = std::max({std::abs(a - b), std::abs(a - c), std::abs(b - c)});
  for (cplx p : {a, b, c}) {
    if (std::abs(d - p) <= 1e-14 * scale) return 0.0;
  }
  const cplx cr = cross_ratio(a, b, c, d);
  const double mag = std::abs(cr);
  if (mag == 0.0 || !std::isfinite(mag)) return 0.0;
  return std::abs(cr.imag()) / mag;
}

Quadrangle::Quadrangle(cplx a, cplx b, cplx c, cplx d, QuadTolerances tol) : pts_{a, b, c, d}, tol_(tol) {
  for (cplx p : pts_) {
    if (!std::isfinite(p.real()) || !std::isfinite(p.imag()))
      throw GeometryError(ErrorKind::InvalidInput, "quadrangle point is not finite");
  }
  const double scale = std::max({std::abs(a - b), std::abs(a - c), std::abs(b - c)});
  if (std::abs(b - a) <= tol.base * std::max(1.0, scale) || std::abs(c - a) <= tol.base * std::max(1.0, scale) ||
      std::abs(c - b) <= tol.base * std::max(1.0, scale))
    throw GeometryError(ErrorKind::DegenerateBase, "quadrangle vertices a, b, c must be pairwise distinct");
  if (std::abs(orient(a, b, c)) <= tol.area * scale * scale)
    throw GeometryError(ErrorKind::CollinearPoints, "quadrangle vertices a, b, c are collinear");
  const double defect = makeev::concyclic_defect(a, b, c, d);
  if (defect > tol.concyclic) {
    std::ostringstream os;
    os.precision(6);
    const cplx cr = cross_ratio(a, b, c, d);
    os << "points are not concyclic: cross-ratio (" << cr.real() << ", " << cr.imag()
       << ") has normalized imaginary defect " << std::scientific << defect << " > " << tol.concyclic;
    throw GeometryError(ErrorKind::NotConcyclic, os.str());
  }
}

double Quadrangle::concyclic_defect() const noexcept { return makeev::concyclic_defect(a(), b(), c(), d()); }

Quadrangle Quadrangle::rotated_roles(int steps) const {
  std::array<cplx, 4> p = pts_;
  const int s = ((steps % 4) + 4) % 4;
  return Quadrangle(p[s % 4], p[(s + 1) % 4], p[(s + 2) % 4], p[(s + 3) % 4], tol_);
}

Quadrangle Quadrangle::mapped(const SimilarityMap& sigma) const {
  return Quadrangle(sigma(a()), sigma(b()), sigma(c()), sigma(d()), tol_);
}

ShapeRatios shape_ratios(const Quadrangle& quad) {
  const cplx base = quad.b() - quad.a();
  if (std::abs(base) < 1e-12) throw GeometryError(ErrorKind::DegenerateBase, "|b - a| below tolerance");
  return ShapeRatios{(quad.c() - quad.a()) / base, (quad.d() - quad.a()) / base};
}

Circumdata circumdata(const Quadrangle& quad) {
  Circumdata out;
  out.center = circumcenter(quad.a(), quad.b(), quad.c());
  out.radius = std::abs(quad.a() - out.center);
  for (std::size_t i = 0; i < 4; ++i) out.offsets[i] = quad.points()[i] - out.center;
  return out;
}

}  // namespace makeev
