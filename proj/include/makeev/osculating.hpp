#pragma once

#include <vector>

#include "makeev/curve.hpp"
#include "makeev/kernels.hpp"

namespace makeev {

struct OsculatingOptions {
  double tol_curvature = 1e-6;
  double tol_report = 1e-8;
  int containment_samples = 256;
  Exec exec = Exec::parallel;
};

// Circle of second-order contact at f(base_t), for a counter-clockwise curve.
struct OsculatingCircle {
  cplx center;
  double radius = 0.0;
  double base_t = 0.0;
};

OsculatingCircle osculating_circle(const PlaneCurve& curve, double t, double tol_curvature = 1e-6);

// The point of the osculating circle at a = f(t) reached by turning a
// counter-clockwise through the angle alpha about the center.
cplx b_of_a(const PlaneCurve& curve, double t, double alpha, double tol_curvature = 1e-6);

struct ChordSolution {
  double a_t = 0.0;
  cplx a;
  cplx b;
  double alpha = 0.0;
  double residual = 0.0;  // distance from b to the curve
};

struct ChordSet {
  std::vector<ChordSolution> solutions;
  // b(a) lies on the curve for most a (circle-like degeneracy); solutions then
  // holds evenly spaced representatives of the family.
  bool continuum = false;
};

// Strict convexity at every check sample of the counter-clockwise curve.
bool is_strictly_convex(const PlaneCurve& curve, double tol_curvature = 1e-6);

// Chords [a, b] of the curve whose endpoints lie on the osculating circle at a
// with counter-clockwise angular measure alpha. The curve is taken
// counter-clockwise; a_t refers to that parameterization.
ChordSet find_chords(const PlaneCurve& curve, double alpha, const OsculatingOptions& options = {});

// Parameters of the local extrema of the curvature.
std::vector<double> vertex_points(const PlaneCurve& curve, const OsculatingOptions& options = {});

// Signed distances from the curve of sampled points of the osculating circle
// at t: max <= 0 means the circle lies in the closed inner region, min >= 0 in
// the closed outer one.
struct Containment {
  double max_signed_distance = 0.0;
  double min_signed_distance = 0.0;
};
Containment osculating_containment(const PlaneCurve& curve, double t, const OsculatingOptions& options = {});

// Observed order p in max over +-h of |f(t + h) - nearest point of the circle|
// ~ h^p, from a least-squares fit of log error against log h.
double contact_order(const PlaneCurve& curve, double t, const std::vector<double>& steps = {1e-2, 5e-3, 2.5e-3});

}  // namespace makeev
