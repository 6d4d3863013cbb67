#include "makeev/curve.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "makeev/error.hpp"
#include "makeev/rng.hpp"

namespace makeev {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double wrap01(double t) noexcept {
  double w = t - std::floor(t);
  if (w >= 1.0) w = 0.0;
  return w;
}

}  // namespace

PlaneCurve::PlaneCurve(std::vector<cplx> coeffs, std::string name, CurveOptions options)
    : coeffs_(std::move(coeffs)), name_(std::move(name)), options_(options) {
  if (coeffs_.size() < 3 || coeffs_.size() % 2 == 0) {
    throw GeometryError(ErrorKind::InvalidInput,
                        "Fourier coefficient list must have odd length 2K+1 with K >= 1, got " +
                            std::to_string(coeffs_.size()));
  }
  for (const cplx& c : coeffs_) {
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
      throw GeometryError(ErrorKind::InvalidInput, "non-finite Fourier coefficient");
  }
  if (options_.n_check < 16 || options_.n_seed < 8)
    throw GeometryError(ErrorKind::InvalidInput, "n_check must be >= 16 and n_seed >= 8");
  degree_ = static_cast<int>(coeffs_.size() / 2);
  samples_.resize(static_cast<std::size_t>(options_.n_check));
  for (std::size_t j = 0; j < samples_.size(); ++j)
    samples_[j] = eval(static_cast<double>(j) / static_cast<double>(samples_.size()));
  seed_samples_.resize(static_cast<std::size_t>(std::max(options_.n_seed, 16 * degree_)));
  for (std::size_t j = 0; j < seed_samples_.size(); ++j)
    seed_samples_[j] = eval(static_cast<double>(j) / static_cast<double>(seed_samples_.size()));
}

PlaneCurve PlaneCurve::circle(double radius, cplx center, CurveOptions options) {
  if (!(radius > 0.0)) throw GeometryError(ErrorKind::InvalidInput, "circle radius must be positive");
  return PlaneCurve({0.0, center, radius}, "circle", options);
}

PlaneCurve PlaneCurve::ellipse(double a, double b, CurveOptions options) {
  if (!(a > 0.0) || !(b > 0.0)) throw GeometryError(ErrorKind::InvalidInput, "ellipse semi-axes must be positive");
  // a cos + i b sin = (a+b)/2 e^{i.} + (a-b)/2 e^{-i.}
  return PlaneCurve({(a - b) / 2.0, 0.0, (a + b) / 2.0}, "ellipse", options);
}

PlaneCurve PlaneCurve::fourier(std::vector<cplx> coeffs, CurveOptions options) {
  return PlaneCurve(std::move(coeffs), "fourier", options);
}

cplx PlaneCurve::coeff(int k) const noexcept {
  if (k < -degree_ || k > degree_) return 0.0;
  return coeffs_[static_cast<std::size_t>(k + degree_)];
}

CurveJet PlaneCurve::jet(double t) const noexcept {
  const double angle = kTwoPi * wrap01(t);
  const cplx w(std::cos(angle), std::sin(angle));
  CurveJet out{coeffs_[static_cast<std::size_t>(degree_)], 0.0, 0.0};
  cplx wk = 1.0;
  for (int k = 1; k <= degree_; ++k) {
    wk *= w;
    const cplx wmk = std::conj(wk);
    const cplx pos = coeffs_[static_cast<std::size_t>(degree_ + k)] * wk;
    const cplx neg = coeffs_[static_cast<std::size_t>(degree_ - k)] * wmk;
    const cplx ik(0.0, kTwoPi * k);
    out.f += pos + neg;
    out.df += ik * (pos - neg);
    out.ddf += (ik * ik) * (pos + neg);
  }
  return out;
}

cplx PlaneCurve::eval(double t) const noexcept {
  const double angle = kTwoPi * wrap01(t);
  const cplx w(std::cos(angle), std::sin(angle));
  cplx sum = coeffs_[static_cast<std::size_t>(degree_)];
  cplx wk = 1.0;
  for (int k = 1; k <= degree_; ++k) {
    wk *= w;
    sum += coeffs_[static_cast<std::size_t>(degree_ + k)] * wk + coeffs_[static_cast<std::size_t>(degree_ - k)] * std::conj(wk);
  }
  return sum;
}

cplx PlaneCurve::derivative(double t, int order) const {
  if (order == 1) return jet(t).df;
  if (order == 2) return jet(t).ddf;
  throw GeometryError(ErrorKind::InvalidInput, "derivative order must be 1 or 2");
}

double PlaneCurve::curvature(double t) const {
  const CurveJet j = jet(t);
  const double speed = std::abs(j.df);
  if (speed < options_.tol_tangent)
    throw GeometryError(ErrorKind::DegenerateTangent, "|f'(t)| below tolerance at t = " + std::to_string(t));
  return (std::conj(j.df) * j.ddf).imag() / (speed * speed * speed);
}

CurvePoint PlaneCurve::point(double t) const {
  const CurveJet j = jet(t);
  return CurvePoint{t, j.f, j.df, curvature(t)};
}

double PlaneCurve::signed_area() const noexcept {
  double sum = 0.0;
  for (int k = -degree_; k <= degree_; ++k) sum += k * std::norm(coeff(k));
  return std::numbers::pi * sum;
}

PlaneCurve PlaneCurve::reversed() const {
  std::vector<cplx> c(coeffs_.rbegin(), coeffs_.rend());
  return PlaneCurve(std::move(c), name_, options_);
}

PlaneCurve PlaneCurve::shifted(double offset) const {
  std::vector<cplx> c(coeffs_.size());
  for (int k = -degree_; k <= degree_; ++k)
    c[static_cast<std::size_t>(k + degree_)] = coeff(k) * std::polar(1.0, kTwoPi * k * offset);
  return PlaneCurve(std::move(c), name_, options_);
}

PlaneCurve PlaneCurve::normalized_ccw() const { return orientation() > 0 ? *this : reversed(); }

bool is_immersed(const PlaneCurve& curve) {
  const int n = curve.options().n_check;
  for (int j = 0; j < n; ++j) {
    if (std::abs(curve.derivative(static_cast<double>(j) / n, 1)) <= curve.options().tol_tangent) return false;
  }
  return true;
}

bool is_simple(const PlaneCurve& curve) { return self_intersections(curve.check_samples(), true).empty(); }

void validate(const PlaneCurve& curve) {
  if (!is_immersed(curve))
    throw GeometryError(ErrorKind::InvalidInput, "curve is not immersed: |f'| vanishes at a check sample");
  if (!is_simple(curve))
    throw GeometryError(ErrorKind::InvalidInput, "curve is not simple: its check polyline self-intersects");
}

namespace {

// Safeguarded Newton for g(t) = Re((f - p) conj f') = 0 on [lo, hi], where g
// is the derivative of |f - p|^2 / 2.
double refine_projection(const PlaneCurve& curve, cplx p, double lo, double hi, double t0) {
  auto g_of = [&](double t) {
    const CurveJet j = curve.jet(t);
    const cplx d = j.f - p;
    return std::pair{(d * std::conj(j.df)).real(), std::norm(j.df) + (d * std::conj(j.ddf)).real()};
  };
  double glo = g_of(lo).first;
  double ghi = g_of(hi).first;
  if (!(glo < 0.0 && ghi > 0.0)) {
    // Not bracketed: golden-section search on the squared distance.
    const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
    double a = lo, b = hi;
    double c = b - phi * (b - a), d = a + phi * (b - a);
    double fc = std::norm(curve.eval(c) - p), fd = std::norm(curve.eval(d) - p);
    for (int it = 0; it < 80 && (b - a) > 1e-15; ++it) {
      if (fc <= fd) {
        b = d; d = c; fd = fc; c = b - phi * (b - a); fc = std::norm(curve.eval(c) - p);
      } else {
        a = c; c = d; fc = fd; d = a + phi * (b - a); fd = std::norm(curve.eval(d) - p);
      }
    }
    const double tm = 0.5 * (a + b);
    return std::norm(curve.eval(tm) - p) <= std::norm(curve.eval(t0) - p) ? tm : t0;
  }
  double t = t0;
  for (int it = 0; it < 100; ++it) {
    const auto [g, gp] = g_of(t);
    if (g == 0.0) break;
    if (g < 0.0) lo = t; else hi = t;
    double next = (gp > 0.0) ? t - g / gp : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    const double step = std::abs(next - t);
    t = next;
    if (step < 1e-16 || hi - lo < 1e-16) break;
  }
  return t;
}

}  // namespace

ClosestPoint closest_point(const PlaneCurve& curve, cplx p) {
  const auto samples = curve.seed_samples();
  const int n = static_cast<int>(samples.size());
  std::vector<double> d2(samples.size());
  for (std::size_t j = 0; j < samples.size(); ++j) d2[j] = std::norm(samples[j] - p);

  std::vector<int> seeds;
  int best_sample = 0;
  for (int j = 0; j < n; ++j) {
    const double prev = d2[static_cast<std::size_t>((j + n - 1) % n)];
    const double cur = d2[static_cast<std::size_t>(j)];
    const double next = d2[static_cast<std::size_t>((j + 1) % n)];
    if (cur < prev && cur <= next) seeds.push_back(j);
    if (cur < d2[static_cast<std::size_t>(best_sample)]) best_sample = j;
  }
  // Samples tied with the minimum (up to rounding) are all refined, so exact
  // ties resolve to the smallest parameter.
  const double tie = d2[static_cast<std::size_t>(best_sample)] * (1.0 + 1e-12) + 1e-300;
  for (int j = 0; j < n; ++j)
    if (d2[static_cast<std::size_t>(j)] <= tie && std::find(seeds.begin(), seeds.end(), j) == seeds.end()) seeds.push_back(j);

  ClosestPoint best{0.0, std::numeric_limits<double>::infinity()};
  const double h = 1.0 / n;
  for (int j : seeds) {
    const double tj = j * h;
    double t = refine_projection(curve, p, tj - h, tj + h, tj);
    t = t - std::floor(t);
    if (t >= 1.0) t = 0.0;
    double dist = std::abs(curve.eval(t) - p);
    const double slack = 1e-12 * (1.0 + dist);
    // Refinement only counts when it improves on the sample itself.
    const double seed_dist = std::sqrt(d2[static_cast<std::size_t>(j)]);
    if (!(dist < seed_dist - 1e-15 * (1.0 + dist))) t = tj, dist = seed_dist;
    if (!std::isfinite(best.dist) || dist < best.dist - slack || (std::abs(dist - best.dist) <= slack && t < best.t)) best = {t, dist};
  }
  return best;
}

SignedDistance signed_distance_with_gradient(const PlaneCurve& curve, cplx p, Snap snap) {
  const ClosestPoint cp = closest_point(curve, p);
  const CurveJet j = curve.jet(cp.t);
  const int o = curve.orientation();
  const double speed = std::abs(j.df);
  const cplx outward = (speed > 0.0) ? cplx(0.0, -1.0) * static_cast<double>(o) * j.df / speed : cplx(0.0);
  if (snap == Snap::on_curve && cp.dist <= curve.options().tol_on_curve) return {0.0, outward, cp.t};
  // Left of the tangent of a counter-clockwise simple curve is inside.
  const double cross = (std::conj(j.df) * (p - j.f)).imag() * o;
  return {cross > 0.0 ? -cp.dist : cp.dist, outward, cp.t};
}

double signed_distance(const PlaneCurve& curve, cplx p, Snap snap) {
  return signed_distance_with_gradient(curve, p, snap).value;
}

namespace {

double swept_angle(const PlaneCurve& curve, cplx p, double t0, double t1, cplx z0, cplx z1, int depth) {
  const double da = std::arg((z1 - p) / (z0 - p));
  if (std::abs(da) <= 0.3 || depth >= 40) return da;
  const double tm = 0.5 * (t0 + t1);
  const cplx zm = curve.eval(tm);
  return swept_angle(curve, p, t0, tm, z0, zm, depth + 1) + swept_angle(curve, p, tm, t1, zm, z1, depth + 1);
}

}  // namespace

int winding_number(const PlaneCurve& curve, cplx p) {
  const ClosestPoint cp = closest_point(curve, p);
  if (cp.dist <= curve.options().tol_on_curve) {
    std::ostringstream os;
    os << "point (" << p.real() << ", " << p.imag() << ") lies on the curve (distance " << cp.dist << ")";
    throw GeometryError(ErrorKind::PointOnCurve, os.str());
  }
  const auto samples = curve.check_samples();
  const std::size_t n = samples.size();
  double total = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    const double t0 = static_cast<double>(j) / n;
    const double t1 = static_cast<double>(j + 1) / n;
    total += swept_angle(curve, p, t0, t1, samples[j], samples[(j + 1) % n], 0);
  }
  return static_cast<int>(std::lround(total / kTwoPi));
}

double perturbation_c1_bound(int degree, double magnitude) {
  double sum = 0.0;
  for (int k = -(degree + 2); k <= degree + 2; ++k) sum += (1.0 + kTwoPi * std::abs(k)) / (1.0 + k * k);
  return magnitude * sum;
}

PlaneCurve perturb(const PlaneCurve& curve, double magnitude, std::uint64_t seed) {
  if (magnitude < 0.0 || !std::isfinite(magnitude))
    throw GeometryError(ErrorKind::InvalidInput, "perturbation magnitude must be non-negative");
  if (magnitude == 0.0) return curve;
  const int k_new = curve.degree() + 2;
  std::vector<cplx> c(static_cast<std::size_t>(2 * k_new + 1));
  const CounterRng rng(seed, 0x70E7);
  for (int k = -k_new; k <= k_new; ++k) {
    const auto idx = static_cast<std::uint64_t>(k + k_new);
    const double bound = magnitude / (1.0 + k * k);
    const double radius = bound * rng.uniform(2 * idx);
    const double phase = kTwoPi * rng.uniform(2 * idx + 1);
    c[static_cast<std::size_t>(k + k_new)] = curve.coeff(k) + std::polar(radius, phase);
  }
  PlaneCurve out(std::move(c), curve.name().empty() ? "perturbed" : curve.name() + "+perturbed", curve.options());
  if (!is_immersed(out) || !is_simple(out)) {
    throw GeometryError(ErrorKind::PerturbationBreaksSimplicity,
                        "perturbation of magnitude " + std::to_string(magnitude) + " broke immersion or simplicity");
  }
  return out;
}

}  // namespace makeev
