#include "makeev/osculating.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "makeev/error.hpp"

namespace makeev {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double wrap01(double t) noexcept {
  double w = t - std::floor(t);
  return w >= 1.0 ? 0.0 : w;
}

template <class Fn>
double bisect(Fn&& fn, double lo, double hi, double flo) {
  for (int it = 0; it < 200 && hi - lo > 1e-16; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double fm = fn(mid);
    if (fm == 0.0) return mid;
    if ((fm < 0.0) == (flo < 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

OsculatingCircle osculating_circle(const PlaneCurve& curve, double t, double tol_curvature) {
  const CurveJet j = curve.jet(t);
  const double kappa = curve.curvature(t);
  if (!(kappa > tol_curvature)) {
    std::ostringstream os;
    os << "curvature " << kappa << " at t = " << t << " is not above " << tol_curvature;
    throw GeometryError(ErrorKind::FlatPoint, os.str());
  }
  const double radius = 1.0 / kappa;
  return {j.f + cplx(0.0, 1.0) * j.df / std::abs(j.df) * radius, radius, t};
}

cplx b_of_a(const PlaneCurve& curve, double t, double alpha, double tol_curvature) {
  const OsculatingCircle w = osculating_circle(curve, t, tol_curvature);
  return w.center + std::polar(1.0, alpha) * (curve.eval(t) - w.center);
}

bool is_strictly_convex(const PlaneCurve& curve, double tol_curvature) {
  const PlaneCurve ccw = curve.normalized_ccw();
  const int n = ccw.options().n_check;
  for (int j = 0; j < n; ++j) {
    const CurveJet jet = ccw.jet(static_cast<double>(j) / n);
    const double speed = std::abs(jet.df);
    if (speed < ccw.options().tol_tangent) return false;
    if (!((std::conj(jet.df) * jet.ddf).imag() / (speed * speed * speed) > tol_curvature)) return false;
  }
  return true;
}

ChordSet find_chords(const PlaneCurve& curve, double alpha, const OsculatingOptions& options) {
  if (!(alpha > 0.0 && alpha < kTwoPi)) throw GeometryError(ErrorKind::InvalidInput, "alpha must lie in (0, 2 pi)");
  const PlaneCurve ccw = curve.normalized_ccw();
  if (!is_strictly_convex(ccw, options.tol_curvature))
    throw GeometryError(ErrorKind::NotConvex, "curvature is not above tol_curvature at every check sample");

  const int n = ccw.options().n_check;
  auto phi = [&](double t) { return signed_distance(ccw, b_of_a(ccw, t, alpha, options.tol_curvature), Snap::exact); };
  const auto values = kernels::tabulate<double>(
      static_cast<std::size_t>(n), [&](std::size_t j) { return phi(static_cast<double>(j) / n); }, options.exec);

  auto solution_at = [&](double t) {
    ChordSolution sol;
    sol.a_t = wrap01(t);
    sol.a = ccw.eval(sol.a_t);
    sol.b = b_of_a(ccw, sol.a_t, alpha, options.tol_curvature);
    sol.alpha = alpha;
    sol.residual = closest_point(ccw, sol.b).dist;
    return sol;
  };

  ChordSet out;
  const auto on = std::count_if(values.begin(), values.end(), [&](double v) { return std::abs(v) <= options.tol_report; });
  if (on * 2 > n) {
    out.continuum = true;
    for (int m = 0; m < 16; ++m) out.solutions.push_back(solution_at(static_cast<double>(m) / 16.0));
    return out;
  }

  for (int j = 0; j < n; ++j) {
    const double a = values[static_cast<std::size_t>(j)];
    const double b = values[static_cast<std::size_t>((j + 1) % n)];
    const double prev = values[static_cast<std::size_t>((j + n - 1) % n)];
    const double lo = static_cast<double>(j) / n, hi = static_cast<double>(j + 1) / n;
    double root;
    if ((a < 0.0 && b > 0.0) || (a > 0.0 && b < 0.0)) {
      root = bisect(phi, lo, hi, a);
    } else if (a == 0.0 || (std::abs(a) <= options.tol_report && std::abs(a) <= std::abs(prev) && std::abs(a) <= std::abs(b))) {
      root = lo;  // grazing contact already within tolerance
    } else {
      continue;
    }
    ChordSolution sol = solution_at(root);
    if (sol.residual > options.tol_report) continue;
    const bool dup = std::any_of(out.solutions.begin(), out.solutions.end(), [&](const ChordSolution& s) {
      const double d = std::abs(s.a_t - sol.a_t);
      return std::min(d, 1.0 - d) < 1e-9;
    });
    if (!dup) out.solutions.push_back(sol);
  }
  return out;
}

std::vector<double> vertex_points(const PlaneCurve& curve, const OsculatingOptions& options) {
  const PlaneCurve ccw = curve.normalized_ccw();
  if (!is_strictly_convex(ccw, options.tol_curvature))
    throw GeometryError(ErrorKind::NotConvex, "vertex_points requires a strictly convex curve");
  const int n = ccw.options().n_check;
  constexpr double h = 1e-5;
  auto dkappa = [&](double t) { return (ccw.curvature(t + h) - ccw.curvature(t - h)) / (2.0 * h); };
  const auto kappa = kernels::tabulate<double>(
      static_cast<std::size_t>(n), [&](std::size_t j) { return ccw.curvature(static_cast<double>(j) / n); }, options.exec);
  const auto [kmin, kmax] = std::minmax_element(kappa.begin(), kappa.end());
  if (*kmax - *kmin <= 1e-9 * std::abs(*kmax))
    throw GeometryError(ErrorKind::DegenerateAllOn, "curvature is constant: every point is a vertex");

  const auto slope = kernels::tabulate<double>(
      static_cast<std::size_t>(n), [&](std::size_t j) { return dkappa(static_cast<double>(j) / n); }, options.exec);
  const double noise = 1e-7 * (*kmax);
  std::vector<double> out;
  for (int j = 0; j < n; ++j) {
    const double a = slope[static_cast<std::size_t>(j)];
    const double b = slope[static_cast<std::size_t>((j + 1) % n)];
    double root;
    if (std::abs(a) <= noise) {
      // An extremum at a sample: neighbours must straddle it.
      const double prev = slope[static_cast<std::size_t>((j + n - 1) % n)];
      if (!((prev < -noise && b > noise) || (prev > noise && b < -noise))) continue;
      root = static_cast<double>(j) / n;
    } else if ((a < 0.0 && b > noise) || (a > 0.0 && b < -noise)) {
      root = bisect(dkappa, static_cast<double>(j) / n, static_cast<double>(j + 1) / n, a);
    } else {
      continue;
    }
    root = wrap01(root);
    const bool dup = std::any_of(out.begin(), out.end(), [&](double t) {
      const double d = std::abs(t - root);
      return std::min(d, 1.0 - d) < 1e-6;
    });
    if (!dup) out.push_back(root);
  }
  std::sort(out.begin(), out.end());
  return out;
}

Containment osculating_containment(const PlaneCurve& curve, double t, const OsculatingOptions& options) {
  const PlaneCurve ccw = curve.normalized_ccw();
  const OsculatingCircle w = osculating_circle(ccw, t, options.tol_curvature);
  const int m = options.containment_samples;
  const auto sd = kernels::tabulate<double>(
      static_cast<std::size_t>(m),
      [&](std::size_t k) {
        return signed_distance(ccw, w.center + std::polar(w.radius, kTwoPi * static_cast<double>(k) / m), Snap::exact);
      },
      options.exec);
  const auto [lo, hi] = std::minmax_element(sd.begin(), sd.end());
  return {*hi, *lo};
}

double contact_order(const PlaneCurve& curve, double t, const std::vector<double>& steps) {
  if (steps.size() < 2) throw GeometryError(ErrorKind::InvalidInput, "contact_order needs at least two steps");
  const PlaneCurve ccw = curve.normalized_ccw();
  const OsculatingCircle w = osculating_circle(ccw, t);
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (double h : steps) {
    // Both sides, so the odd cubic and even quartic terms cannot cancel.
    const double err = std::max(std::abs(std::abs(ccw.eval(t + h) - w.center) - w.radius),
                                std::abs(std::abs(ccw.eval(t - h) - w.center) - w.radius));
    const double x = std::log(h), y = std::log(std::max(err, 1e-300));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double m = static_cast<double>(steps.size());
  return (m * sxy - sx * sy) / (m * sxx - sx * sx);
}

}  // namespace makeev
