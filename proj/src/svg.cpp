#include "makeev/svg.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "makeev/error.hpp"

namespace makeev::svg {

void Canvas::polyline(const std::vector<cplx>& pts, const std::string& stroke, double width) {
  shapes_.push_back({Shape::line, pts, 0.0, stroke, "none", width});
}

void Canvas::polygon(const std::vector<cplx>& pts, const std::string& stroke, double width, const std::string& fill) {
  shapes_.push_back({Shape::poly, pts, 0.0, stroke, fill, width});
}

void Canvas::circle(cplx center, double radius, const std::string& stroke, double width, const std::string& fill) {
  shapes_.push_back({Shape::ring, {center}, radius, stroke, fill, width});
}

void Canvas::dot(cplx p, const std::string& fill, double radius_px) {
  shapes_.push_back({Shape::marker, {p}, radius_px, "none", fill, 0.0});
}

std::string Canvas::render() const {
  double lo_x = std::numeric_limits<double>::infinity(), lo_y = lo_x;
  double hi_x = -lo_x, hi_y = -lo_x;
  auto grow = [&](cplx p, double r) {
    lo_x = std::min(lo_x, p.real() - r);
    hi_x = std::max(hi_x, p.real() + r);
    lo_y = std::min(lo_y, p.imag() - r);
    hi_y = std::max(hi_y, p.imag() + r);
  };
  for (const auto& s : shapes_)
    for (const auto& p : s.pts)
      if (std::isfinite(p.real()) && std::isfinite(p.imag())) grow(p, s.kind == Shape::ring ? s.radius : 0.0);
  if (!(lo_x <= hi_x)) lo_x = lo_y = -1.0, hi_x = hi_y = 1.0;
  const double span = std::max({hi_x - lo_x, hi_y - lo_y, 1e-12});
  const double margin = 0.05 * span;
  const double scale = size_ / (span + 2.0 * margin);
  const double cx = 0.5 * (lo_x + hi_x), cy = 0.5 * (lo_y + hi_y);
  auto X = [&](cplx p) { return 0.5 * size_ + scale * (p.real() - cx); };
  auto Y = [&](cplx p) { return 0.5 * size_ - scale * (p.imag() - cy); };

  std::ostringstream out;
  out.precision(6);
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << size_ << "\" height=\"" << size_ << "\" viewBox=\"0 0 "
      << size_ << ' ' << size_ << "\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  for (const auto& s : shapes_) {
    switch (s.kind) {
      case Shape::line:
      case Shape::poly: {
        out << (s.kind == Shape::line ? "<polyline" : "<polygon") << " points=\"";
        for (const auto& p : s.pts)
          if (std::isfinite(p.real()) && std::isfinite(p.imag())) out << X(p) << ',' << Y(p) << ' ';
        out << "\" fill=\"" << s.fill << "\" stroke=\"" << s.stroke << "\" stroke-width=\"" << s.width << "\"/>\n";
        break;
      }
      case Shape::ring:
        out << "<circle cx=\"" << X(s.pts[0]) << "\" cy=\"" << Y(s.pts[0]) << "\" r=\"" << scale * s.radius
            << "\" fill=\"" << s.fill << "\" stroke=\"" << s.stroke << "\" stroke-width=\"" << s.width << "\"/>\n";
        break;
      case Shape::marker:
        out << "<circle cx=\"" << X(s.pts[0]) << "\" cy=\"" << Y(s.pts[0]) << "\" r=\"" << s.radius << "\" fill=\""
            << s.fill << "\"/>\n";
        break;
    }
  }
  out << "</svg>\n";
  return out.str();
}

void Canvas::save(const std::string& path) const {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw GeometryError(ErrorKind::InvalidInput, "cannot write " + path);
  f << render();
}

}  // namespace makeev::svg
