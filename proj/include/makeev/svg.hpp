#pragma once

#include <complex>
#include <string>
#include <vector>

namespace makeev::svg {

using cplx = std::complex<double>;

// Accumulates shapes in world coordinates; bounds are fitted on render, y points up.
class Canvas {
 public:
  explicit Canvas(double size_px = 600.0) : size_(size_px) {}

  void polyline(const std::vector<cplx>& pts, const std::string& stroke, double width = 1.0);
  void polygon(const std::vector<cplx>& pts, const std::string& stroke, double width = 1.0,
               const std::string& fill = "none");
  void circle(cplx center, double radius, const std::string& stroke, double width = 1.0,
              const std::string& fill = "none");
  void dot(cplx p, const std::string& fill, double radius_px = 3.0);

  std::string render() const;
  void save(const std::string& path) const;

 private:
  struct Shape {
    enum Kind { line, poly, ring, marker } kind;
    std::vector<cplx> pts;
    double radius;
    std::string stroke, fill;
    double width;
  };
  double size_;
  std::vector<Shape> shapes_;
};

}  // namespace makeev::svg
