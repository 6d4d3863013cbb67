#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <vector>

#include "makeev/curve.hpp"
#include "makeev/quadrangle.hpp"
#include "makeev/rng.hpp"

namespace fixtures {

using makeev::cplx;
using makeev::PlaneCurve;
using makeev::Quadrangle;

inline constexpr double pi = std::numbers::pi;

// Near-circular curve with decaying random harmonics; simple and convex-ish
// for amp <= 0.15.
inline PlaneCurve random_curve(std::uint64_t seed, int degree = 4, double amp = 0.15) {
  const makeev::CounterRng rng(seed, 0xC0);
  std::vector<cplx> c(2 * degree + 1);
  for (int k = -degree; k <= degree; ++k) {
    if (k == 0) continue;
    const int idx = k + degree;
    c[idx] = std::polar(amp / (k * k) * rng.uniform(2 * idx), 2.0 * pi * rng.uniform(2 * idx + 1));
  }
  c[degree + 1] = 1.0;
  return PlaneCurve(c, "random");
}

inline Quadrangle on_circle(double a, double b, double c, double d, double radius = 1.0, cplx center = 0.0) {
  return Quadrangle(center + std::polar(radius, a), center + std::polar(radius, b), center + std::polar(radius, c),
                    center + std::polar(radius, d));
}

// Square, kite, two irregular convex quadrangles and one with crossed labels.
inline std::vector<Quadrangle> quadrangle_corpus(double radius = 1.0, cplx center = 0.0) {
  return {on_circle(0.0, pi / 2, pi, 3 * pi / 2, radius, center), on_circle(0.0, 1.0, pi, 4.1, radius, center),
          on_circle(0.0, 2.0, 4.2, 5.0, radius, center), on_circle(0.3, 0.9, 2.5, 4.4, radius, center),
          on_circle(0.0, 2.5, 1.2, 4.0, radius, center)};
}

inline std::vector<PlaneCurve> smooth_corpus() {
  return {PlaneCurve::circle(1.0), PlaneCurve::ellipse(2.0, 1.0), PlaneCurve::ellipse(1.5, 1.0), random_curve(11),
          random_curve(12)};
}

}  // namespace fixtures
