#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "makeev/polyline.hpp"

namespace makeev {

struct CurveOptions {
  double tol_on_curve = 1e-9;
  double tol_tangent = 1e-12;
  int n_seed = 64;     // coarse samples for closest-point seeding
  int n_check = 2048;  // samples for immersion / simplicity / winding checks
};

// Position and first two derivatives at one parameter value.
struct CurveJet {
  cplx f;
  cplx df;
  cplx ddf;
};

struct CurvePoint {
  double t = 0.0;
  cplx z;
  cplx tangent;
  double curvature = 0.0;
};

// Closed plane curve t -> sum_k c_k exp(2 pi i k t), period 1, identified with
// a map R -> C. Immutable; caches its check polyline at construction.
class PlaneCurve {
 public:
  // coeffs lists c_{-K} .. c_K (odd length, K >= 1).
  explicit PlaneCurve(std::vector<cplx> coeffs, std::string name = {}, CurveOptions options = {});

  static PlaneCurve circle(double radius, cplx center = 0.0, CurveOptions options = {});
  static PlaneCurve ellipse(double a, double b, CurveOptions options = {});
  static PlaneCurve fourier(std::vector<cplx> coeffs, CurveOptions options = {});

  int degree() const noexcept { return degree_; }
  const std::vector<cplx>& coeffs() const noexcept { return coeffs_; }
  cplx coeff(int k) const noexcept;
  const std::string& name() const noexcept { return name_; }
  const CurveOptions& options() const noexcept { return options_; }

  cplx eval(double t) const noexcept;
  cplx derivative(double t, int order) const;
  CurveJet jet(double t) const noexcept;
  CurvePoint point(double t) const;
  double curvature(double t) const;

  // (i/2) * closed integral of f d(conj f) = pi * sum k |c_k|^2.
  double signed_area() const noexcept;
  // +1 for counter-clockwise, -1 for clockwise.
  int orientation() const noexcept { return signed_area() >= 0.0 ? 1 : -1; }

  PlaneCurve reversed() const;              // t -> -t
  PlaneCurve shifted(double offset) const;  // t -> t + offset
  PlaneCurve normalized_ccw() const;        // reversed() when clockwise

  // Cached samples f(j / n_check), j = 0 .. n_check-1.
  std::span<const cplx> check_samples() const noexcept { return samples_; }
  // Cached samples f(j / m), m = max(n_seed, 16 K), seeding closest-point searches.
  std::span<const cplx> seed_samples() const noexcept { return seed_samples_; }

 private:
  std::vector<cplx> coeffs_;
  int degree_ = 0;
  std::string name_;
  CurveOptions options_;
  std::vector<cplx> samples_;
  std::vector<cplx> seed_samples_;
};

bool is_immersed(const PlaneCurve& curve);
bool is_simple(const PlaneCurve& curve);
// Throws InvalidInput naming the failed invariant.
void validate(const PlaneCurve& curve);

int winding_number(const PlaneCurve& curve, cplx p);

struct ClosestPoint {
  double t = 0.0;  // in [0, 1)
  double dist = 0.0;
};
ClosestPoint closest_point(const PlaneCurve& curve, cplx p);

enum class Snap { on_curve, exact };

// Distance to the curve, negative inside. Snap::on_curve returns zero within
// tol_on_curve; Snap::exact never snaps (used by solvers that need to resolve
// residuals below tol_on_curve).
double signed_distance(const PlaneCurve& curve, cplx p, Snap snap = Snap::on_curve);

// Signed distance together with its gradient (the outward unit normal at the
// closest point, as a complex number).
struct SignedDistance {
  double value = 0.0;
  cplx gradient;
  double t = 0.0;
};
SignedDistance signed_distance_with_gradient(const PlaneCurve& curve, cplx p, Snap snap = Snap::on_curve);

PlaneCurve perturb(const PlaneCurve& curve, double magnitude, std::uint64_t seed);
// Upper bound for sup|delta f| + sup|delta f'| of perturb(curve, magnitude, .).
double perturbation_c1_bound(int degree, double magnitude);

}  // namespace makeev
