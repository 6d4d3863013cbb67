#include "makeev/sphere.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "makeev/error.hpp"
#include "makeev/rng.hpp"

namespace makeev {

namespace {

constexpr double kPi = std::numbers::pi;

double sgn(double v) noexcept { return v < 0.0 ? -1.0 : 1.0; }

// exp(-p / (1 - u^2)) on |u| < 1 with derivatives in u.
Profile bump(double u, double p) {
  if (!(std::abs(u) < 1.0)) return {};
  const double m = 1.0 - u * u;
  const double b = std::exp(-p / m);
  const double q1 = -2.0 * p * u / (m * m);
  const double q2 = -2.0 * p * (1.0 + 3.0 * u * u) / (m * m * m);
  return {b, b * q1, b * (q2 + q1 * q1)};
}

// Sign of the second derivative of bump(u, p): the numerator of q'' + q'^2.
double bump_curvature_sign(double u, double p) {
  const double u2 = u * u;
  return -2.0 * p * (1.0 + 2.0 * u2 - 3.0 * u2 * u2) + 4.0 * p * p * u2;
}

// Smooth step: 0 for x <= 0, 1 for x >= 1, flat to all orders at both ends.
Profile smoothstep(double x) {
  if (x <= 0.0) return {0.0, 0.0, 0.0};
  if (x >= 1.0) return {1.0, 0.0, 0.0};
  auto zeta = [](double v) -> Profile {
    if (v <= 0.0) return {};
    const double e = std::exp(-1.0 / v);
    return {e, e / (v * v), e * (1.0 - 2.0 * v) / (v * v * v * v)};
  };
  const Profile a = zeta(x);
  const Profile bz = zeta(1.0 - x);
  const Profile b{bz.v, -bz.d1, bz.d2};
  const double d = a.v + b.v, d1 = a.d1 + b.d1, d2 = a.d2 + b.d2;
  const double num1 = a.d1 * d - a.v * d1;
  return {a.v / d, num1 / (d * d), (a.d2 * d - a.v * d2) / (d * d) - 2.0 * d1 * num1 / (d * d * d)};
}

// 1 on |x| <= inner, 0 on |x| >= outer; even.
Profile plateau(double x, double inner, double outer) {
  const double width = outer - inner;
  const double sg = sgn(x);
  const Profile s = smoothstep((std::abs(x) - inner) / width);
  return {1.0 - s.v, -s.d1 * sg / width, -s.d2 / (width * width)};
}

Jet apply(const Jet& u, const Profile& p) { return compose(u, p.v, p.d1, p.d2); }

Vec3 random_unit(const CounterRng& rng, std::uint64_t k) {
  const double z = 2.0 * rng.uniform(2 * k) - 1.0;
  const double th = 2.0 * kPi * rng.uniform(2 * k + 1);
  const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
  return {r * std::cos(th), r * std::sin(th), z};
}

}  // namespace

Jet Jet::constant(double c) {
  Jet j;
  j.v = c;
  return j;
}

Jet Jet::coordinate(const Vec3& p, int axis) {
  Jet j;
  j.v = p[axis];
  j.g[axis] = 1.0;
  return j;
}

Jet operator+(const Jet& a, const Jet& b) { return {a.v + b.v, a.g + b.g, a.h + b.h}; }
Jet operator-(const Jet& a, const Jet& b) { return {a.v - b.v, a.g - b.g, a.h - b.h}; }
Jet operator-(const Jet& a) { return {-a.v, -a.g, -a.h}; }
Jet operator*(const Jet& a, const Jet& b) {
  return {a.v * b.v, a.v * b.g + b.v * a.g, a.v * b.h + b.v * a.h + a.g * b.g.transpose() + b.g * a.g.transpose()};
}
Jet operator*(double c, const Jet& a) { return {c * a.v, c * a.g, c * a.h}; }
Jet operator+(double c, const Jet& a) { return {c + a.v, a.g, a.h}; }

Jet compose(const Jet& u, double f0, double f1, double f2) {
  return {f0, f1 * u.g, f1 * u.h + f2 * u.g * u.g.transpose()};
}

SphereField::SphereField(Eval eval, Parity parity, std::string name)
    : eval_(std::move(eval)), parity_(parity), name_(std::move(name)) {}

SphereField linear_field(const Vec3& coeffs, std::string name) {
  return SphereField([coeffs](const Vec3& p) { return Jet{coeffs.dot(p), coeffs, Mat3::Zero()}; }, Parity::odd,
                     std::move(name));
}

SphereField quadratic_field(const Mat3& q, std::string name) {
  const Mat3 sym = 0.5 * (q + q.transpose());
  return SphereField([sym](const Vec3& p) { return Jet{p.dot(sym * p), 2.0 * sym * p, 2.0 * sym}; }, Parity::even,
                     std::move(name));
}

TangentFrame tangent_frame(const Vec3& y) {
  int axis = 0;
  for (int k = 1; k < 3; ++k)
    if (std::abs(y[k]) < std::abs(y[axis])) axis = k;
  Vec3 e = Vec3::Zero();
  e[axis] = 1.0;
  const Vec3 es = (e - e.dot(y) * y).normalized();
  return {y, es, y.cross(es)};
}

ChartDerivatives chart_derivatives(const SphereField& field, const ChartMap& c) {
  const Jet j = field.jet(c.p);
  return {j.g.dot(c.pu), j.g.dot(c.pv), c.pu.dot(j.h * c.pu) + j.g.dot(c.puu), c.pu.dot(j.h * c.pv) + j.g.dot(c.puv),
          c.pv.dot(j.h * c.pv) + j.g.dot(c.pvv)};
}

ChartMap gnomonic_chart(const Vec3& y) {
  const TangentFrame fr = tangent_frame(y);
  return {y, fr.e_s, fr.e_t, -y, Vec3::Zero(), -y};
}

double c_combination(const ChartDerivatives& d) {
  return d.fss * d.ft * d.ft - 2.0 * d.fst * d.fs * d.ft + d.ftt * d.fs * d.fs;
}

double c_invariant(const SphereField& field, const Vec3& y) {
  return c_combination(chart_derivatives(field, gnomonic_chart(y)));
}

double surface_gradient_norm(const SphereField& field, const Vec3& y) {
  const Vec3 g = field.gradient(y);
  return (g - g.dot(y) * y).norm();
}

std::string_view to_string(HessianClass c) {
  switch (c) {
    case HessianClass::positive_definite: return "positive definite";
    case HessianClass::negative_definite: return "negative definite";
    case HessianClass::indefinite: return "not definite";
    case HessianClass::degenerate: return "degenerate";
  }
  return "unknown";
}

HessianClass classify_hessian(const SphereField& field, const Vec3& y, double tol) {
  const ChartDerivatives d = chart_derivatives(field, gnomonic_chart(y));
  const double det = d.fss * d.ftt - d.fst * d.fst;
  const double scale = std::max({std::abs(d.fss), std::abs(d.ftt), std::abs(d.fst), 1.0});
  if (std::abs(det) <= tol * scale * scale) return HessianClass::degenerate;
  if (det < 0.0) return HessianClass::indefinite;
  return d.fss > 0.0 ? HessianClass::positive_definite : HessianClass::negative_definite;
}

SphereField build_g0(double a, double b, double d) {
  if (!(a > b && b > d && d > 0.0)) {
    std::ostringstream os;
    os << "g0 needs A > B > D > 0, got A = " << a << ", B = " << b << ", D = " << d;
    throw GeometryError(ErrorKind::BadOrdering, os.str());
  }
  Mat3 q = Mat3::Zero();
  q.diagonal() << a, b, d;
  return quadratic_field(q, "g0");
}

Profile phi_profile(const BumpSpec& spec, double s) {
  const double scale = 1.0 / (2.0 * spec.eps);
  const Profile b = bump(s * scale, spec.phi_exponent);
  return {spec.amp_phi * b.v, spec.amp_phi * b.d1 * scale, spec.amp_phi * b.d2 * scale * scale};
}

Profile psi_profile(const BumpSpec& spec, double s) {
  const double scale = 2.0 / spec.eps;
  const Profile b = bump(s * scale, 1.0);
  return {spec.amp_psi * b.v, spec.amp_psi * b.d1 * scale, spec.amp_psi * b.d2 * scale * scale};
}

void check_bump_pattern(const BumpSpec& spec) {
  if (!(spec.eps > 0.0 && spec.amp_phi > 0.0 && spec.amp_psi > 0.0 && spec.global_scale > 0.0 &&
        spec.global_scale <= 1.0 && spec.phi_exponent > 0.0))
    throw GeometryError(ErrorKind::InvalidInput, "bump spec needs eps, amplitudes, exponent > 0 and scale in (0, 1]");
  // Inside the support the bumps are amp exp(-p / (1 - u^2)) > 0, so the sign
  // of phi'' is the sign of the rational factor; sampling it avoids underflow.
  const int n = spec.pattern_samples;
  for (int k = 0; k < n; ++k) {
    const double s = spec.eps * (-2.0 + 4.0 * (k + 0.5) / n);
    const double u = s / (2.0 * spec.eps);
    const double curv = bump_curvature_sign(u, spec.phi_exponent);
    const bool inner = std::abs(s) < spec.eps;
    if ((inner && !(curv < 0.0)) || (!inner && !(curv > 0.0))) {
      std::ostringstream os;
      os << "phi is not strictly " << (inner ? "concave" : "convex") << " at s = " << s << " (eps = " << spec.eps
         << ", exponent " << spec.phi_exponent << ")";
      throw GeometryError(ErrorKind::ConvexityPatternFailed, os.str());
    }
  }
  for (double s : {2.0 * spec.eps, 2.5 * spec.eps})
    if (phi_profile(spec, s).v != 0.0 || phi_profile(spec, -s).v != 0.0)
      throw GeometryError(ErrorKind::ConvexityPatternFailed, "phi does not vanish outside |s| < 2 eps");
  for (double s : {0.5 * spec.eps, spec.eps})
    if (psi_profile(spec, s).v != 0.0 || psi_profile(spec, -s).v != 0.0)
      throw GeometryError(ErrorKind::ConvexityPatternFailed, "psi does not vanish outside |s| < eps / 2");
  if (!(phi_profile(spec, 0.0).v > 0.0 && psi_profile(spec, 0.0).v > 0.0))
    throw GeometryError(ErrorKind::ConvexityPatternFailed, "bumps must be positive at the origin");
}

Profile band_cutoff(const BumpSpec& spec, double z) { return plateau(z, spec.band, 2.0 * spec.band); }

OddCurve::OddCurve(BumpSpec spec, AffineMatch match) : spec_(spec), match_(match) {}

Jet OddCurve::height(const Vec3& p) const {
  const double lam = match_.scale;
  const Jet x = Jet::coordinate(p, 0);
  const Jet y = Jet::coordinate(p, 1);
  const Jet st = (match_.sx / lam) * x;
  const Profile ph = phi_profile(spec_, st.v), ps = psi_profile(spec_, st.v);
  const Jet bend = apply(st, {ph.v + ps.v, ph.d1 + ps.d1, ph.d2 + ps.d2});
  const double wy = 1.0 / spec_.miss_width;
  const Profile mb = bump(p[1] * wy, 1.0);
  const double mh = spec_.miss_height * std::numbers::e;
  const Jet miss = apply(y, {mh * mb.v, mh * mb.d1 * wy, mh * mb.d2 * wy * wy});
  return (sgn(p[1]) * lam / match_.tz) * bend + sgn(p[0]) * miss;
}

double OddCurve::longitude_profile(double theta) const {
  const double c = std::cos(theta), s = std::sin(theta);
  double z = 0.0;
  for (int it = 0; it < 60; ++it) {
    const double rho = std::sqrt(1.0 - z * z);
    const Vec3 p{rho * c, rho * s, z};
    const Jet xi = height(p);
    const Profile w = band_cutoff(spec_, z);
    const double drho = -z / rho;
    const double dxi = xi.g[0] * drho * c + xi.g[1] * drho * s;
    const double r = z - xi.v * w.v;
    const double dr = 1.0 - dxi * w.v - xi.v * w.d1;
    const double step = r / dr;
    z -= step;
    if (std::abs(step) < 1e-17) break;
  }
  return z;
}

Vec3 OddCurve::point(double theta) const {
  const double z = longitude_profile(theta);
  const double rho = std::sqrt(1.0 - z * z);
  return {rho * std::cos(theta), rho * std::sin(theta), z};
}

std::vector<Vec3> OddCurve::samples(int n) const {
  std::vector<Vec3> out;
  out.reserve(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) out.push_back(point(2.0 * kPi * (k + 0.5) / n));
  return out;
}

double OddCurve::window_half_width() const {
  return std::asin(std::min(1.0, 2.0 * spec_.eps * match_.scale / match_.sx));
}

std::vector<Vec3> OddCurve::window_samples(int n) const {
  const double w = window_half_width();
  std::vector<Vec3> out;
  out.reserve(static_cast<std::size_t>(n));
  const int half = n / 2;
  for (int k = 0; k < n; ++k) {
    const int m = k < half ? k : k - half;
    const int count = k < half ? half : n - half;
    const double base = k < half ? 0.5 * kPi : 1.5 * kPi;
    out.push_back(point(base - w + 2.0 * w * (m + 0.5) / count));
  }
  return out;
}

GAndL build_g_and_L(const SphereField& g0, double a, double b, double d, const BumpSpec& spec) {
  (void)a;
  (void)d;
  check_bump_pattern(spec);
  // Orthographic (x, z) chart at (0, 1, 0): g0 = G(0) + (Gxx x^2 + Gzz z^2) / 2 + ...
  const Vec3 base{0.0, 1.0, 0.0};
  const ChartMap ortho{base, {1.0, 0.0, 0.0}, {0.0, 0.0, 1.0}, {0.0, -1.0, 0.0}, Vec3::Zero(), {0.0, -1.0, 0.0}};
  const ChartDerivatives cd = chart_derivatives(g0, ortho);
  if (!(cd.fss > 0.0 && cd.ftt < 0.0) || std::abs(cd.fst) > 1e-12 || std::abs(cd.fs) > 1e-12 ||
      std::abs(cd.ft) > 1e-12)
    throw GeometryError(ErrorKind::InvalidInput, "g0 is not a saddle s^2 - t^2 at (0, 1, 0) in the (x, z) chart");
  AffineMatch match;
  match.sx = std::sqrt(cd.fss / 2.0);
  match.tz = std::sqrt(-cd.ftt / 2.0);
  match.scale = spec.global_scale;
  const double peak = phi_profile(spec, 0.0).v + psi_profile(spec, 0.0).v;
  match.t_inner = 1.25 * peak;
  match.t_outer = 2.0 * match.t_inner;
  (void)b;

  const double lam = match.scale;
  SphereField g(
      [g0, match, spec, lam](const Vec3& p) {
        const Jet base_jet = g0.jet(p);
        const Jet st = (match.sx / lam) * Jet::coordinate(p, 0);
        const Jet tt = (match.tz / lam) * Jet::coordinate(p, 2);
        const Jet phi = apply(st, phi_profile(spec, st.v));
        if (phi.v == 0.0 && phi.g.isZero() && phi.h.isZero()) return base_jet;
        const Jet chi = apply(tt, plateau(tt.v, match.t_inner, match.t_outer));
        const Jet bend = (2.0 * sgn(p[1])) * (tt * phi) - phi * phi;
        return base_jet + (lam * lam) * (chi * bend);
      },
      Parity::even, "g");
  return {std::move(g), OddCurve(spec, match), match};
}

SphereField build_h(const OddCurve& L, double tol_zero) {
  const BumpSpec spec = L.spec();
  // Unique solvability of z = Lambda w(z) along each meridian.
  double sup_lambda = 0.0;
  for (const Vec3& p : L.samples(2048)) sup_lambda = std::max(sup_lambda, std::abs(p[2]));
  double sup_dw = 0.0;
  for (int k = 0; k <= 400; ++k) sup_dw = std::max(sup_dw, std::abs(band_cutoff(spec, 2.0 * spec.band * k / 400.0).d1));
  if (!(sup_lambda * sup_dw < 1.0))
    throw GeometryError(ErrorKind::ZeroSetMismatch, "sup|Lambda| sup|w'| >= 1: h may have spurious zeros");

  SphereField h(
      [L](const Vec3& p) {
        const Jet z = Jet::coordinate(p, 2);
        const Jet w = apply(z, band_cutoff(L.spec(), p[2]));
        return z - L.height(p) * w;
      },
      Parity::odd, "h");

  // Independent meridian scan: every sign change of h must sit on L.
  constexpr int n_theta = 256, n_z = 512;
  for (int k = 0; k < n_theta; ++k) {
    const double theta = 2.0 * kPi * (k + 0.25) / n_theta;
    const double c = std::cos(theta), s = std::sin(theta);
    auto h_at = [&](double z) {
      const double rho = std::sqrt(std::max(0.0, 1.0 - z * z));
      return h.value({rho * c, rho * s, z});
    };
    int roots = 0;
    double prev_z = -1.0, prev_h = h_at(-1.0);
    const double expected = L.longitude_profile(theta);
    for (int m = 1; m <= n_z; ++m) {
      const double z = -1.0 + 2.0 * m / n_z;
      const double hz = h_at(z);
      if ((prev_h < 0.0) != (hz < 0.0)) {
        double lo = prev_z, hi = z, flo = prev_h;
        for (int it = 0; it < 200 && hi - lo > 1e-16; ++it) {
          const double mid = 0.5 * (lo + hi), fm = h_at(mid);
          if ((fm < 0.0) == (flo < 0.0)) {
            lo = mid;
            flo = fm;
          } else {
            hi = mid;
          }
        }
        const double root = 0.5 * (lo + hi);
        ++roots;
        if (std::abs(root - expected) > tol_zero) {
          std::ostringstream os;
          os << "h vanishes at z = " << root << " on the meridian theta = " << theta << ", off L (Lambda = " << expected
             << ")";
          throw GeometryError(ErrorKind::ZeroSetMismatch, os.str());
        }
      }
      prev_z = z;
      prev_h = hz;
    }
    if (roots != 1)
      throw GeometryError(ErrorKind::ZeroSetMismatch,
                          "h has " + std::to_string(roots) + " zeros on the meridian theta = " + std::to_string(theta));
  }
  return h;
}

SphereField build_f(const SphereField& g, const SphereField& h) {
  if (g.parity() != Parity::even || h.parity() != Parity::odd)
    throw GeometryError(ErrorKind::InvalidInput, "f = g + h^3 needs g even and h odd");
  return SphereField(
      [g, h](const Vec3& p) {
        const Jet hj = h.jet(p);
        return g.jet(p) + hj * hj * hj;
      },
      Parity::none, "f");
}

double model_chart_c(const SphereField& g, const AffineMatch& m, double s_tilde, double t_tilde, int y_sign) {
  const double ks = m.scale / m.sx, kt = m.scale / m.tz;
  const double x = ks * s_tilde, z = kt * t_tilde;
  const double y = (y_sign < 0 ? -1.0 : 1.0) * std::sqrt(1.0 - x * x - z * z);
  const double y3 = y * y * y;
  const ChartMap chart{{x, y, z},
                       {ks, -x / y * ks, 0.0},
                       {0.0, -z / y * kt, kt},
                       {0.0, (-1.0 / y - x * x / y3) * ks * ks, 0.0},
                       {0.0, -x * z / y3 * ks * kt, 0.0},
                       {0.0, (-1.0 / y - z * z / y3) * kt * kt, 0.0}};
  const double lam3 = m.scale * m.scale * m.scale;
  return c_combination(chart_derivatives(g, chart)) / (8.0 * lam3 * lam3);
}

bool ObstructionReport::pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; });
}

bool BuildReport::pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; });
}

ObstructionReport verify_obstruction(const SphereField& f, const SphereField& g, const SphereField& h,
                                     const std::vector<Vec3>& pts, const ObstructionOptions& options) {
  struct Sample {
    double h, dg, df, cf, cg;
  };
  const auto rows = kernels::tabulate<Sample>(
      pts.size(),
      [&](std::size_t k) {
        const Vec3& y = pts[k];
        return Sample{h.value(y), surface_gradient_norm(g, y), surface_gradient_norm(f, y), c_invariant(f, y),
                      c_invariant(g, y)};
      },
      options.exec);

  ObstructionReport rep;
  CheckResult zero{"h vanishes on L", true, 0.0, options.tol_zero, pts.size()};
  CheckResult grad{"|dg| bounded below on L", true, std::numeric_limits<double>::infinity(), options.grad_min,
                   pts.size()};
  CheckResult neg{"C(f) < 0 on L", true, -std::numeric_limits<double>::infinity(), 0.0, pts.size()};
  CheckResult match{"C(f) = C(g) on L", true, 0.0, options.c_match, pts.size()};
  for (std::size_t k = 0; k < rows.size(); ++k) {
    const Sample& s = rows[k];
    zero.worst = std::max(zero.worst, std::abs(s.h));
    grad.worst = std::min(grad.worst, s.dg);
    neg.worst = std::max(neg.worst, s.cf);
    match.worst = std::max(match.worst, std::abs(s.cf - s.cg) / (1.0 + std::abs(s.cg)));
    if (s.df < options.grad_min) {
      ++rep.critical_points;
      rep.critical_classes.emplace_back(to_string(classify_hessian(f, pts[k])));
    }
  }
  if (pts.empty()) grad.worst = 0.0;
  zero.pass = zero.worst <= options.tol_zero;
  grad.pass = grad.worst >= options.grad_min;
  neg.pass = neg.worst < 0.0;
  match.pass = match.worst <= options.c_match;
  rep.checks = {zero, grad, neg, match};
  return rep;
}

ObstructionReport verify_obstruction(const SphereField& f, const SphereField& g, const SphereField& h,
                                     const OddCurve& L, const ObstructionOptions& options) {
  std::vector<Vec3> pts = L.samples(options.n_samples);
  if (options.include_windows) {
    const auto win = L.window_samples(options.n_samples);
    pts.insert(pts.end(), win.begin(), win.end());
  }
  return verify_obstruction(f, g, h, pts, options);
}

Counterexample build_counterexample(double a, double b, double d, const BumpSpec& spec) {
  SphereField g0 = build_g0(a, b, d);
  GAndL gl = build_g_and_L(g0, a, b, d, spec);
  SphereField h = build_h(gl.L);
  SphereField f = build_f(gl.g, h);
  return Counterexample{a, b, d, spec, std::move(g0), std::move(gl.g), std::move(gl.L), std::move(h), std::move(f),
                        gl.match};
}

DerivativeCheck derivative_check(const SphereField& field, int n, std::uint64_t seed, double h) {
  const CounterRng rng(seed, 0xD3);
  DerivativeCheck out;
  out.samples = static_cast<std::size_t>(n);
  for (int k = 0; k < n; ++k) {
    const Vec3 p = random_unit(rng, static_cast<std::uint64_t>(k));
    const Jet j = field.jet(p);
    Vec3 fd_g;
    Mat3 fd_h;
    for (int axis = 0; axis < 3; ++axis) {
      Vec3 e = Vec3::Zero();
      e[axis] = h;
      const Jet p1 = field.jet(p + e), m1 = field.jet(p - e);
      const Jet p2 = field.jet(p + 2.0 * e), m2 = field.jet(p - 2.0 * e);
      fd_g[axis] = (8.0 * (p1.v - m1.v) - (p2.v - m2.v)) / (12.0 * h);
      fd_h.col(axis) = (8.0 * (p1.g - m1.g) - (p2.g - m2.g)) / (12.0 * h);
    }
    out.gradient = std::max(out.gradient, (fd_g - j.g).norm() / std::max(1.0, j.g.norm()));
    out.hessian = std::max(out.hessian, (fd_h - j.h).norm() / std::max(1.0, j.h.norm()));
  }
  return out;
}

BuildReport verify_build(const Counterexample& ce, std::uint64_t seed, int n_random) {
  BuildReport rep;
  const CounterRng rng(seed, 0x5EED);
  auto sized = [](std::string name, double worst, double bound, std::size_t n, bool le = true) {
    return CheckResult{std::move(name), le ? worst <= bound : worst >= bound, worst, bound, n};
  };

  double even = 0.0, odd = 0.0, ident = 0.0;
  for (int k = 0; k < n_random; ++k) {
    const Vec3 p = random_unit(rng, static_cast<std::uint64_t>(k));
    even = std::max(even, std::abs(ce.g.value(p) - ce.g.value(-p)));
    odd = std::max(odd, std::abs(ce.h.value(p) + ce.h.value(-p)));
    const double hv = ce.h.value(p);
    ident = std::max(ident, std::abs(ce.f.value(p) - ce.f.value(-p) - 2.0 * hv * hv * hv));
  }
  const auto n = static_cast<std::size_t>(n_random);
  rep.checks.push_back(sized("g even", even, 1e-12, n));
  rep.checks.push_back(sized("h odd", odd, 1e-12, n));
  rep.checks.push_back(sized("f(y) - f(-y) = 2 h(y)^3", ident, 1e-10, n));

  double l_odd = 0.0, miss = std::numeric_limits<double>::infinity();
  for (int k = 0; k < n_random; ++k) {
    const double theta = 2.0 * kPi * (k + 0.5) / n_random;
    const Vec3 p = ce.L.point(theta);
    l_odd = std::max(l_odd, (ce.L.point(theta + kPi) + p).norm());
    miss = std::min({miss, (p - Vec3{1.0, 0.0, 0.0}).norm(), (p + Vec3{1.0, 0.0, 0.0}).norm()});
  }
  rep.checks.push_back(sized("L odd", l_odd, 1e-12, n));
  rep.checks.push_back(sized("L misses (+-1, 0, 0)", miss, 0.05, n, false));

  ObstructionOptions oo;
  oo.n_samples = n_random;
  const ObstructionReport obs = verify_obstruction(ce.f, ce.g, ce.h, ce.L, oo);
  rep.checks.insert(rep.checks.end(), obs.checks.begin(), obs.checks.end());

  // Model identity inside the window, through the (s~, t~) chart.
  double model = 0.0;
  const int n_model = std::max(8, n_random / 4);
  for (int k = 0; k < n_model; ++k) {
    const double s = 0.5 * ce.spec.eps * (-1.0 + 2.0 * (k + 0.5) / n_model);
    const Profile ph = phi_profile(ce.spec, s), ps = psi_profile(ce.spec, s);
    const double expected = ps.v * ps.v + ps.v * ps.v * ps.v * ph.d2 - s * s;
    for (int side : {1, -1}) {
      const double c8 = model_chart_c(ce.g, ce.match, s, side * (ph.v + ps.v), side);
      model = std::max(model, std::abs(c8 - expected) / std::abs(expected));
    }
  }
  rep.checks.push_back(sized("C(g)/8 = psi^2 + psi^3 phi'' - s^2 in the window", model, 1e-4,
                             static_cast<std::size_t>(2 * n_model)));

  for (const SphereField* field : {&ce.g, &ce.h, &ce.f}) {
    const DerivativeCheck dc = derivative_check(*field, 500, seed + 17, 1e-5);
    rep.checks.push_back(sized("derivatives of " + field->name(), std::max(dc.gradient, dc.hessian), 1e-6, dc.samples));
  }
  return rep;
}

SphereQuadruple quadruple(double a, double b) {
  if (!(a > 0.0 && a <= kPi / 2.0 && b > 0.0 && b <= kPi / 2.0)) {
    std::ostringstream os;
    os << "quadruple distances must lie in (0, pi/2], got a = " << a << ", b = " << b;
    throw GeometryError(ErrorKind::BadDistance, os.str());
  }
  return {a, b, {1.0, 0.0, 0.0}, {std::cos(a), std::sin(a), 0.0}, {std::cos(b), -std::sin(b), 0.0}, {-1.0, 0.0, 0.0}};
}

double spread(const SphereField& f, const SphereQuadruple& q, const Mat3& r) {
  if ((r.transpose() * r - Mat3::Identity()).norm() > 1e-10 || std::abs(r.determinant() - 1.0) > 1e-10)
    throw GeometryError(ErrorKind::NotRotation, "matrix is not a proper rotation to 1e-10");
  const double v[4] = {f.value(r * q.x1), f.value(r * q.x2), f.value(r * q.x3), f.value(r * q.x4)};
  const auto [lo, hi] = std::minmax_element(v, v + 4);
  return *hi - *lo;
}

namespace {

double radical_inverse(std::uint64_t i, unsigned base) {
  double inv = 1.0 / base, f = inv, out = 0.0;
  while (i > 0) {
    out += f * static_cast<double>(i % base);
    i /= base;
    f *= inv;
  }
  return out;
}

Mat3 exp_so3(const Vec3& w) {
  const double angle = w.norm();
  if (angle == 0.0) return Mat3::Identity();
  return Eigen::AngleAxisd(angle, w / angle).toRotationMatrix();
}

// Nelder-Mead on R^3.
template <class Fn>
std::pair<Vec3, double> nelder_mead(Fn&& fn, double size, int max_iter) {
  std::array<Vec3, 4> x;
  std::array<double, 4> fx;
  x[0] = Vec3::Zero();
  for (int k = 0; k < 3; ++k) {
    x[k + 1] = Vec3::Zero();
    x[k + 1][k] = size;
  }
  for (int k = 0; k < 4; ++k) fx[k] = fn(x[k]);
  for (int it = 0; it < max_iter; ++it) {
    std::array<int, 4> order{0, 1, 2, 3};
    std::sort(order.begin(), order.end(), [&](int a, int b) { return fx[a] < fx[b]; });
    std::array<Vec3, 4> xs;
    std::array<double, 4> fs;
    for (int k = 0; k < 4; ++k) {
      xs[k] = x[order[k]];
      fs[k] = fx[order[k]];
    }
    x = xs;
    fx = fs;
    double diam = 0.0;
    for (int k = 1; k < 4; ++k) diam = std::max(diam, (x[k] - x[0]).norm());
    if (diam < 1e-14 || fx[3] - fx[0] <= 1e-17) break;
    const Vec3 centroid = (x[0] + x[1] + x[2]) / 3.0;
    const Vec3 xr = centroid + (centroid - x[3]);
    const double fr = fn(xr);
    if (fr < fx[0]) {
      const Vec3 xe = centroid + 2.0 * (centroid - x[3]);
      const double fe = fn(xe);
      if (fe < fr) {
        x[3] = xe;
        fx[3] = fe;
      } else {
        x[3] = xr;
        fx[3] = fr;
      }
    } else if (fr < fx[2]) {
      x[3] = xr;
      fx[3] = fr;
    } else {
      const bool outside = fr < fx[3];
      const Vec3 xc = outside ? centroid + 0.5 * (xr - centroid) : centroid + 0.5 * (x[3] - centroid);
      const double fc = fn(xc);
      if (fc < (outside ? fr : fx[3])) {
        x[3] = xc;
        fx[3] = fc;
      } else {
        for (int k = 1; k < 4; ++k) {
          x[k] = x[0] + 0.5 * (x[k] - x[0]);
          fx[k] = fn(x[k]);
        }
      }
    }
  }
  int best = 0;
  for (int k = 1; k < 4; ++k)
    if (fx[k] < fx[best]) best = k;
  return {x[best], fx[best]};
}

}  // namespace

std::vector<Mat3> start_rotations(int n, std::uint64_t seed) {
  const CounterRng rng(seed, 0x50C3);
  const double shift[3] = {rng.uniform(0), rng.uniform(1), rng.uniform(2)};
  std::vector<Mat3> out;
  out.reserve(static_cast<std::size_t>(std::max(n, 0)));
  for (int i = 0; i < n; ++i) {
    const auto idx = static_cast<std::uint64_t>(i + 1);
    double u[3] = {radical_inverse(idx, 2), radical_inverse(idx, 3), radical_inverse(idx, 5)};
    for (int k = 0; k < 3; ++k) u[k] = std::fmod(u[k] + shift[k], 1.0);
    const double r1 = std::sqrt(1.0 - u[0]), r2 = std::sqrt(u[0]);
    const Eigen::Quaterniond q(r2 * std::cos(2 * kPi * u[2]), r1 * std::sin(2 * kPi * u[1]),
                               r1 * std::cos(2 * kPi * u[1]), r2 * std::sin(2 * kPi * u[2]));
    out.push_back(q.normalized().toRotationMatrix());
  }
  return out;
}

SpreadResult min_spread(const SphereField& f, const SphereQuadruple& q, int n_starts, std::uint64_t seed,
                        const SpreadOptions& options) {
  if (n_starts < 1) throw GeometryError(ErrorKind::InvalidInput, "min_spread needs at least one start");
  const auto starts = start_rotations(n_starts, seed);
  auto local = [&](std::size_t k) {
    Mat3 base = starts[k];
    double best = spread(f, q, base);
    double size = options.initial_size;
    for (int round = 0; round <= options.restarts; ++round) {
      auto objective = [&](const Vec3& w) { return spread(f, q, base * exp_so3(w)); };
      const auto [w, value] = nelder_mead(objective, size, options.max_iterations);
      if (!(value < best)) {
        if (round > 0) break;
        size *= 0.1;
        continue;
      }
      base = base * exp_so3(w);
      // Re-orthonormalize against drift.
      const Eigen::JacobiSVD<Mat3> svd(base, Eigen::ComputeFullU | Eigen::ComputeFullV);
      base = svd.matrixU() * svd.matrixV().transpose();
      best = spread(f, q, base);
      size = std::max(10.0 * w.norm(), 1e-6);
    }
    return SpreadResult{best, base, static_cast<int>(k)};
  };
  const auto results = kernels::tabulate<SpreadResult>(static_cast<std::size_t>(n_starts), local, options.exec);
  SpreadResult best = results.front();
  for (const auto& r : results)
    if (r.value < best.value) best = r;  // strict: ties keep the lowest start index
  return best;
}

}  // namespace makeev
