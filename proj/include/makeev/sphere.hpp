#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "makeev/kernels.hpp"

namespace makeev {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

// Second-order forward-mode jet in the ambient coordinates (x, y, z).
struct Jet {
  double v = 0.0;
  Vec3 g = Vec3::Zero();
  Mat3 h = Mat3::Zero();

  static Jet constant(double c);
  static Jet coordinate(const Vec3& p, int axis);
};

Jet operator+(const Jet& a, const Jet& b);
Jet operator-(const Jet& a, const Jet& b);
Jet operator-(const Jet& a);
Jet operator*(const Jet& a, const Jet& b);
Jet operator*(double c, const Jet& a);
Jet operator+(double c, const Jet& a);
// u -> F(u) given F, F', F'' at u.v.
Jet compose(const Jet& u, double f0, double f1, double f2);

enum class Parity { even, odd, none };

// A scalar field on the unit sphere, given through an ambient extension whose
// value, gradient and Hessian are exact (jets), not differenced.
class SphereField {
 public:
  using Eval = std::function<Jet(const Vec3&)>;

  SphereField(Eval eval, Parity parity, std::string name);

  Jet jet(const Vec3& p) const { return eval_(p); }
  double value(const Vec3& p) const { return eval_(p).v; }
  Vec3 gradient(const Vec3& p) const { return eval_(p).g; }
  Mat3 hessian(const Vec3& p) const { return eval_(p).h; }
  Parity parity() const noexcept { return parity_; }
  const std::string& name() const noexcept { return name_; }

 private:
  Eval eval_;
  Parity parity_;
  std::string name_;
};

SphereField linear_field(const Vec3& coeffs, std::string name = "linear");
// p^T Q p for symmetric Q.
SphereField quadratic_field(const Mat3& q, std::string name = "quadratic");

// Orthonormal tangent basis at y: e_s is the axis of smallest |y_k|
// orthogonalized against y, e_t = y x e_s.
struct TangentFrame {
  Vec3 y, e_s, e_t;
};
TangentFrame tangent_frame(const Vec3& y);

// First and second derivatives of F(u, v) = f(P(u, v)) at the chart origin.
struct ChartDerivatives {
  double fs = 0.0, ft = 0.0, fss = 0.0, fst = 0.0, ftt = 0.0;
};
struct ChartMap {
  Vec3 p, pu, pv, puu, puv, pvv;
};
ChartDerivatives chart_derivatives(const SphereField& field, const ChartMap& chart);
// The chart p(s, t) = normalize(y + s e_s + t e_t) of tangent_frame(y).
ChartMap gnomonic_chart(const Vec3& y);
double c_combination(const ChartDerivatives& d);
double c_invariant(const SphereField& field, const Vec3& y);
// Norm of the tangential part of the ambient gradient.
double surface_gradient_norm(const SphereField& field, const Vec3& y);

enum class HessianClass { positive_definite, negative_definite, indefinite, degenerate };
std::string_view to_string(HessianClass c);
HessianClass classify_hessian(const SphereField& field, const Vec3& y, double tol = 1e-12);

SphereField build_g0(double a, double b, double d);

struct BumpSpec {
  double eps = 0.1;
  double amp_phi = 6.9;    // phi(0) = amp_phi exp(-phi_exponent)
  double amp_psi = 0.136;  // psi(0) = amp_psi / e
  double global_scale = 0.1;
  // phi(s) = amp_phi exp(-phi_exponent / (1 - (s / 2 eps)^2)); its inflection
  // sits at s = eps exactly when phi_exponent = 21/8.
  double phi_exponent = 21.0 / 8.0;
  double miss_height = 0.08;  // z-offset of L at (+-1, 0, 0)
  double miss_width = 0.3;    // support half-width of that offset in y
  double band = 0.2;          // h's cutoff: w = 1 on |z| <= band, 0 on |z| >= 2 band
  int pattern_samples = 4001;
};

// One-variable profile with exact first and second derivatives.
struct Profile {
  double v = 0.0, d1 = 0.0, d2 = 0.0;
};
Profile phi_profile(const BumpSpec& spec, double s);
Profile psi_profile(const BumpSpec& spec, double s);
// Throws ConvexityPatternFailed unless phi is positive on |s| < 2 eps, zero
// outside, strictly concave on (-eps, eps) and strictly convex on
// eps < |s| < 2 eps, and psi is positive exactly on |s| < eps / 2.
void check_bump_pattern(const BumpSpec& spec);

// g0 rewritten near (0, +-1, 0) through s~ = sx x / scale, t~ = tz z / scale,
// where g0 = B + scale^2 (s~^2 - t~^2) on the sphere.
struct AffineMatch {
  double sx = 1.0;
  double tz = 1.0;
  double scale = 1.0;
  double t_inner = 0.0;  // the t~ cutoff is 1 for |t~| <= t_inner
  double t_outer = 0.0;  // and 0 for |t~| >= t_outer
};

// L = {z = Lambda(theta)} near the equator, odd: Lambda(theta + pi) = -Lambda(theta).
class OddCurve {
 public:
  OddCurve(BumpSpec spec, AffineMatch match);

  // The graph height Xi(x, y) whose zero set z = Xi w(z) defines L.
  Jet height(const Vec3& p) const;
  double longitude_profile(double theta) const;
  Vec3 point(double theta) const;
  // n points at theta_k = 2 pi (k + 1/2) / n.
  std::vector<Vec3> samples(int n) const;
  // n points concentrated on the modification windows near (0, +-1, 0).
  std::vector<Vec3> window_samples(int n) const;
  double window_half_width() const;  // in theta
  const BumpSpec& spec() const noexcept { return spec_; }
  const AffineMatch& match() const noexcept { return match_; }

 private:
  BumpSpec spec_;
  AffineMatch match_;
};

Profile band_cutoff(const BumpSpec& spec, double z);

struct GAndL {
  SphereField g;
  OddCurve L;
  AffineMatch match;
};
GAndL build_g_and_L(const SphereField& g0, double a, double b, double d, const BumpSpec& spec = {});

SphereField build_h(const OddCurve& L, double tol_zero = 1e-10);
SphereField build_f(const SphereField& g, const SphereField& h);

// The local model through the (s~, t~) chart: returns C(g) there divided by
// 8 scale^6, which equals psi^2 + psi^3 phi'' - s~^2 on L inside the window.
double model_chart_c(const SphereField& g, const AffineMatch& match, double s_tilde, double t_tilde, int y_sign);

struct CheckResult {
  std::string name;
  bool pass = false;
  double worst = 0.0;  // worst measured value, in the check's own units
  double bound = 0.0;
  std::size_t samples = 0;
};

struct ObstructionReport {
  std::vector<CheckResult> checks;
  std::size_t critical_points = 0;  // samples with |df| < grad_min
  std::vector<std::string> critical_classes;
  bool pass() const;
};

struct ObstructionOptions {
  int n_samples = 1000;
  double tol_zero = 1e-10;
  double grad_min = 1e-3;
  double c_match = 1e-6;
  bool include_windows = true;
  Exec exec = Exec::parallel;
};

ObstructionReport verify_obstruction(const SphereField& f, const SphereField& g, const SphereField& h,
                                     const std::vector<Vec3>& l_samples, const ObstructionOptions& options = {});
ObstructionReport verify_obstruction(const SphereField& f, const SphereField& g, const SphereField& h,
                                     const OddCurve& L, const ObstructionOptions& options = {});

struct Counterexample {
  double a = 3.0, b = 2.0, d = 1.0;
  BumpSpec spec;
  SphereField g0;
  SphereField g;
  OddCurve L;
  SphereField h;
  SphereField f;
  AffineMatch match;
};
Counterexample build_counterexample(double a = 3.0, double b = 2.0, double d = 1.0, const BumpSpec& spec = {});

// Every check of the construction: parities, the odd-part identity, the
// obstruction on L, the model identity in the window, derivative oracles.
struct BuildReport {
  std::vector<CheckResult> checks;
  bool pass() const;
};
BuildReport verify_build(const Counterexample& ce, std::uint64_t seed = 0, int n_random = 1000);

// Worst relative mismatch between exact and fourth-order central-difference
// derivatives (step h) at n random sphere points, normalized by max(1, |exact|).
struct DerivativeCheck {
  double gradient = 0.0;
  double hessian = 0.0;
  std::size_t samples = 0;
};
DerivativeCheck derivative_check(const SphereField& field, int n, std::uint64_t seed, double h = 1e-5);

struct SphereQuadruple {
  double a = 0.0, b = 0.0;
  Vec3 x1, x2, x3, x4;
};
SphereQuadruple quadruple(double a, double b);

double spread(const SphereField& f, const SphereQuadruple& q, const Mat3& rotation);

struct SpreadResult {
  double value = 0.0;
  Mat3 rotation = Mat3::Identity();
  int start = 0;
};
struct SpreadOptions {
  int restarts = 4;
  int max_iterations = 3000;
  double initial_size = 0.3;
  Exec exec = Exec::parallel;
};
// Deterministic low-discrepancy rotations; the first n of a larger request
// coincide with a smaller one.
std::vector<Mat3> start_rotations(int n, std::uint64_t seed);
SpreadResult min_spread(const SphereField& f, const SphereQuadruple& q, int n_starts, std::uint64_t seed,
                        const SpreadOptions& options = {});

}  // namespace makeev
