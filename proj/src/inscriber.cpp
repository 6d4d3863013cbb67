#include "makeev/inscriber.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <sstream>

#include "makeev/error.hpp"
#include "makeev/kernels.hpp"

namespace makeev {

namespace {

FourthVertexSweep make_sweep(const PlaneCurve& curve, ShapeRatios ratios, cplx base_a, cplx base_b,
                             const VarietyPath& path, const TraceOptions& trace) {
  if (!path.normalized) throw GeometryError(ErrorKind::InvalidInput, "sweep requires a normalized path");
  FourthVertexSweep sw;
  sw.path = path;
  sw.ratios = ratios;
  sw.base_a = base_a;
  sw.base_b = base_b;
  sw.curve = curve;
  sw.trace = trace;
  const std::size_t n = path.samples.size();
  sw.a_samples.resize(n);
  sw.b_samples.resize(n);
  sw.c_samples.resize(n);
  sw.d_samples.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& p = path.samples[i];
    const cplx a = curve.eval(p.t);
    const cplx b = curve.eval(p.t + p.s);
    sw.a_samples[i] = a;
    sw.b_samples[i] = b;
    sw.c_samples[i] = a + ratios.r * (b - a);
    sw.d_samples[i] = a + ratios.q * (b - a);
  }
  const auto c_res = kernels::tabulate<double>(
      n, [&](std::size_t i) { return closest_point(curve, sw.c_samples[i]).dist; }, trace.exec);
  const double worst = *std::max_element(c_res.begin(), c_res.end());
  if (worst > trace.tol_trace) {
    std::ostringstream os;
    os << "third vertex leaves the curve along the sweep (max residual " << worst << ")";
    throw GeometryError(ErrorKind::InvalidInput, os.str());
  }
  return sw;
}

struct Vertices {
  cplx a, b, c, d;
};

Vertices vertices_at(const PlaneCurve& curve, ShapeRatios ratios, CylinderPoint p) {
  const cplx a = curve.eval(p.t);
  const cplx b = curve.eval(p.t + p.s);
  return {a, b, a + ratios.r * (b - a), a + ratios.q * (b - a)};
}

double placement_residual(const PlaneCurve& curve, const SimilarityMap& sigma, const FourthVertexSweep& sw, bool with_d) {
  const cplx base_c = sw.base_a + sw.ratios.r * (sw.base_b - sw.base_a);
  double worst = 0.0;
  for (cplx v : {sw.base_a, sw.base_b, base_c}) worst = std::max(worst, closest_point(curve, sigma(v)).dist);
  if (with_d) worst = std::max(worst, closest_point(curve, sigma(sw.base_d())).dist);
  return worst;
}

// Newton on {F(t, s) = 0, sd(d'(t, s)) = 0}; keeps the best iterate. Distances
// are measured unsnapped so the iteration continues below tol_on_curve.
CylinderPoint polish_inscription(const TriangleVariety& var, ShapeRatios ratios, CylinderPoint p) {
  const PlaneCurve& curve = var.curve();
  auto measure = [&](CylinderPoint x) {
    return std::max(closest_point(curve, var.third_vertex(x.t, x.s)).dist,
                    closest_point(curve, vertices_at(curve, ratios, x).d).dist);
  };
  CylinderPoint best = p;
  double best_val = measure(p);
  CylinderPoint x = p;
  for (int it = 0; it < 12 && best_val > 1e-15; ++it) {
    const auto v = var.evaluate(x.t, x.s);
    const CurveJet ja = curve.jet(x.t);
    const CurveJet jb = curve.jet(x.t + x.s);
    const cplx d = ja.f + ratios.q * (jb.f - ja.f);
    const SignedDistance sd = signed_distance_with_gradient(curve, d, Snap::exact);
    const cplx n = std::conj(sd.gradient);
    const double gt = (n * ((1.0 - ratios.q) * ja.df + ratios.q * jb.df)).real();
    const double gs = (n * (ratios.q * jb.df)).real();
    const double det = v.ft * gs - v.fs * gt;
    if (std::abs(det) < 1e-14) break;
    const double dt = (-v.f * gs + v.fs * sd.value) / det;
    const double ds = (-v.ft * sd.value + gt * v.f) / det;
    if (std::hypot(dt, ds) > 1e-3) break;
    x.t += dt;
    x.s += ds;
    const double val = measure(x);
    if (val < best_val) {
      best = x;
      best_val = val;
    }
  }
  return best;
}

}  // namespace

FourthVertexSweep sweep_fourth_vertex(const PlaneCurve& curve, const Quadrangle& quad, const VarietyPath& path,
                                      const TraceOptions& trace) {
  return make_sweep(curve, shape_ratios(quad), quad.a(), quad.b(), path, trace);
}

FourthVertexSweep sweep_fourth_vertex(const PlaneCurve& curve, ShapeRatios ratios, const VarietyPath& path,
                                      const TraceOptions& trace) {
  return make_sweep(curve, ratios, 0.0, 1.0, path, trace);
}

InscriptionSet find_inscriptions(const FourthVertexSweep& sweep, const PlaneCurve& curve, const InscribeOptions& options) {
  InscriptionSet out;
  const std::size_t n = sweep.size();
  if (n == 0) return out;
  const auto phi = kernels::tabulate<double>(
      n, [&](std::size_t i) { return signed_distance(curve, sweep.d_samples[i], Snap::exact); }, options.trace.exec);

  auto from_sample = [&](std::size_t i) {
    Inscription ins;
    ins.sigma = similarity_from_pair(sweep.base_a, sweep.base_b, sweep.a_samples[i], sweep.b_samples[i]);
    ins.u = static_cast<double>(i) / static_cast<double>(n);
    ins.at = sweep.path.samples[i];
    ins.residual = placement_residual(curve, ins.sigma, sweep, true);
    return ins;
  };

  const auto on_curve = std::count_if(phi.begin(), phi.end(), [&](double v) { return std::abs(v) <= options.tol_report; });
  if (static_cast<std::size_t>(on_curve) * 2 > n) {
    out.continuum = true;
    const std::size_t reps = std::min<std::size_t>(16, n);
    for (std::size_t m = 0; m < reps; ++m) {
      Inscription ins = from_sample(m * n / reps);
      if (ins.residual <= options.tol_report) out.hits.push_back(ins);
    }
    return out;
  }

  std::optional<TriangleVariety> var;
  if (sweep.curve) var.emplace(*sweep.curve, sweep.ratios.r, sweep.trace);

  auto phi_at = [&](double u, CylinderPoint& p) {
    p = var->path_point(sweep.path, u);
    return signed_distance(curve, vertices_at(*sweep.curve, sweep.ratios, p).d, Snap::exact);
  };

  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t j = (i + 1) % n;
    const double a = phi[i], b = phi[j];
    const double prev = phi[(i + n - 1) % n];
    const bool crossing = (a < 0.0 && b > 0.0) || (a > 0.0 && b < 0.0);
    // Grazing contact: a local minimum of |phi| that already meets the tolerance.
    const bool grazing = !crossing && std::abs(a) <= options.tol_report && std::abs(a) <= std::abs(prev) &&
                         std::abs(a) <= std::abs(b) && a != 0.0;
    Inscription ins;
    if (a == 0.0 || grazing) {
      ins = from_sample(i);
    } else if (crossing) {
      if (!var) continue;
      double lo = static_cast<double>(i) / n, hi = static_cast<double>(i + 1) / n;
      double flo = a;
      CylinderPoint p = sweep.path.samples[i];
      for (int it = 0; it < 60 && hi - lo > 1e-15; ++it) {
        const double mid = 0.5 * (lo + hi);
        CylinderPoint pm;
        const double fm = phi_at(mid, pm);
        p = pm;
        if (fm == 0.0) {
          lo = hi = mid;
          break;
        }
        if ((fm < 0.0) == (flo < 0.0)) {
          lo = mid;
          flo = fm;
        } else {
          hi = mid;
        }
      }
      p = polish_inscription(*var, sweep.ratios, p);
      const Vertices v = vertices_at(*sweep.curve, sweep.ratios, p);
      ins.sigma = similarity_from_pair(sweep.base_a, sweep.base_b, v.a, v.b);
      ins.u = 0.5 * (lo + hi);
      ins.at = p;
      ins.residual = placement_residual(curve, ins.sigma, sweep, true);
    } else {
      continue;
    }
    if (ins.residual > options.tol_report) continue;
    const bool dup = std::any_of(out.hits.begin(), out.hits.end(), [&](const Inscription& h) {
      return std::abs(h.u - ins.u) < 1e-9 || std::abs(h.sigma.alpha - ins.sigma.alpha) + std::abs(h.sigma.beta - ins.sigma.beta) < 1e-12;
    });
    if (!dup) out.hits.push_back(ins);
  }
  return out;
}

namespace {

// Solves the 4x4 system m x = rhs by Gaussian elimination with partial pivoting.
bool solve4(std::array<std::array<double, 4>, 4> m, std::array<double, 4> rhs, std::array<double, 4>& x) {
  for (int col = 0; col < 4; ++col) {
    int piv = col;
    for (int r = col + 1; r < 4; ++r)
      if (std::abs(m[r][col]) > std::abs(m[piv][col])) piv = r;
    if (std::abs(m[piv][col]) < 1e-14) return false;
    std::swap(m[piv], m[col]);
    std::swap(rhs[piv], rhs[col]);
    for (int r = col + 1; r < 4; ++r) {
      const double f = m[r][col] / m[col][col];
      for (int k = col; k < 4; ++k) m[r][k] -= f * m[col][k];
      rhs[r] -= f * rhs[col];
    }
  }
  for (int r = 3; r >= 0; --r) {
    double acc = rhs[r];
    for (int k = r + 1; k < 4; ++k) acc -= m[r][k] * x[k];
    x[r] = acc / m[r][r];
  }
  return true;
}

// Newton on {F(p1) = 0, F(p2) = 0, d'(p1) = d'(p2)}.
void polish_coincidence(const TriangleVariety& var, ShapeRatios ratios, CylinderPoint& p1, CylinderPoint& p2) {
  const PlaneCurve& curve = var.curve();
  auto dprime = [&](CylinderPoint p) { return vertices_at(curve, ratios, p).d; };
  auto measure = [&](CylinderPoint x1, CylinderPoint x2) {
    return std::max({std::abs(var.residual(x1.t, x1.s)), std::abs(var.residual(x2.t, x2.s)), std::abs(dprime(x1) - dprime(x2))});
  };
  double best = measure(p1, p2);
  for (int it = 0; it < 12 && best > 1e-15; ++it) {
    const auto v1 = var.evaluate(p1.t, p1.s);
    const auto v2 = var.evaluate(p2.t, p2.s);
    auto ddt = [&](CylinderPoint p, bool wrt_s) {
      const CurveJet ja = curve.jet(p.t);
      const CurveJet jb = curve.jet(p.t + p.s);
      return wrt_s ? ratios.q * jb.df : (1.0 - ratios.q) * ja.df + ratios.q * jb.df;
    };
    const cplx d1t = ddt(p1, false), d1s = ddt(p1, true), d2t = ddt(p2, false), d2s = ddt(p2, true);
    const cplx gap = dprime(p1) - dprime(p2);
    std::array<std::array<double, 4>, 4> m{{{v1.ft, v1.fs, 0.0, 0.0},
                                            {0.0, 0.0, v2.ft, v2.fs},
                                            {d1t.real(), d1s.real(), -d2t.real(), -d2s.real()},
                                            {d1t.imag(), d1s.imag(), -d2t.imag(), -d2s.imag()}}};
    std::array<double, 4> rhs{-v1.f, -v2.f, -gap.real(), -gap.imag()};
    std::array<double, 4> dx{};
    if (!solve4(m, rhs, dx)) break;
    if (std::hypot(std::hypot(dx[0], dx[1]), std::hypot(dx[2], dx[3])) > 1e-2) break;
    const CylinderPoint q1{p1.t + dx[0], p1.s + dx[1]}, q2{p2.t + dx[2], p2.s + dx[3]};
    const double val = measure(q1, q2);
    if (!(val < best)) break;
    p1 = q1;
    p2 = q2;
    best = val;
  }
}

}  // namespace

std::vector<Coincidence> find_coincidences(const FourthVertexSweep& sweep, const InscribeOptions& options) {
  std::vector<Coincidence> out;
  const std::size_t n = sweep.size();
  if (n < 4) return out;
  std::optional<TriangleVariety> var;
  if (sweep.curve) var.emplace(*sweep.curve, sweep.ratios.r, sweep.trace);

  for (const SelfIntersection& hit : self_intersections(sweep.d_samples, true)) {
    const double u1 = (static_cast<double>(hit.i) + hit.crossing.lambda) / n;
    const double u2 = (static_cast<double>(hit.j) + hit.crossing.mu) / n;
    const double sep = std::min(std::abs(u1 - u2), 1.0 - std::abs(u1 - u2));
    if (sep < options.u_sep) continue;

    std::vector<cplx> loop{hit.crossing.point};
    for (std::size_t k = hit.i + 1; k <= hit.j; ++k) loop.push_back(sweep.d_samples[k]);
    const double loop_area = polygon_area(loop);
    if (std::abs(loop_area) < options.loop_area_min) continue;

    Coincidence co;
    co.u1 = u1;
    co.u2 = u2;
    co.loop_area = loop_area;
    if (var) {
      CylinderPoint p1 = var->path_point(sweep.path, u1);
      CylinderPoint p2 = var->path_point(sweep.path, u2);
      polish_coincidence(*var, sweep.ratios, p1, p2);
      const Vertices v1 = vertices_at(*sweep.curve, sweep.ratios, p1);
      const Vertices v2 = vertices_at(*sweep.curve, sweep.ratios, p2);
      co.first = similarity_from_pair(sweep.base_a, sweep.base_b, v1.a, v1.b);
      co.second = similarity_from_pair(sweep.base_a, sweep.base_b, v2.a, v2.b);
      co.residual = std::max(placement_residual(*sweep.curve, co.first, sweep, false),
                             placement_residual(*sweep.curve, co.second, sweep, false));
    } else {
      auto lerp = [](cplx x, cplx y, double l) { return x + l * (y - x); };
      const std::size_t i1 = (hit.i + 1) % n, j1 = (hit.j + 1) % n;
      co.first = similarity_from_pair(sweep.base_a, sweep.base_b, lerp(sweep.a_samples[hit.i], sweep.a_samples[i1], hit.crossing.lambda),
                                      lerp(sweep.b_samples[hit.i], sweep.b_samples[i1], hit.crossing.lambda));
      co.second = similarity_from_pair(sweep.base_a, sweep.base_b, lerp(sweep.a_samples[hit.j], sweep.a_samples[j1], hit.crossing.mu),
                                       lerp(sweep.b_samples[hit.j], sweep.b_samples[j1], hit.crossing.mu));
    }
    co.point = co.first(sweep.base_d());
    co.gap = std::abs(co.first(sweep.base_d()) - co.second(sweep.base_d()));
    const double distinct = std::abs(co.first.alpha - co.second.alpha) + std::abs(co.first.beta - co.second.beta);
    if (distinct <= 1e-12) continue;
    out.push_back(co);
  }
  return out;
}

AreaReport area_report(const FourthVertexSweep& sweep, const PlaneCurve& curve) {
  AreaReport r;
  r.s_a = polygon_area(sweep.a_samples);
  r.s_b = polygon_area(sweep.b_samples);
  r.s_c = polygon_area(sweep.c_samples);
  r.s_d = polygon_area(sweep.d_samples);
  r.s_curve = curve.signed_area();
  r.max_deviation = std::max({std::abs(r.s_a - r.s_curve), std::abs(r.s_b - r.s_curve), std::abs(r.s_c - r.s_curve),
                              std::abs(r.s_d - r.s_curve)});
  return r;
}

namespace {

int winding_of(const std::vector<cplx>& base, const std::vector<cplx>& tip) {
  std::vector<cplx> v(base.size());
  for (std::size_t i = 0; i < base.size(); ++i) v[i] = tip[i] - base[i];
  return static_cast<int>(std::lround(turning_number(v)));
}

}  // namespace

int rotation_number(const FourthVertexSweep& sweep) { return winding_of(sweep.a_samples, sweep.b_samples); }

int fourth_rotation_number(const FourthVertexSweep& sweep) {
  if (sweep.ratios.q == cplx(0.0)) throw GeometryError(ErrorKind::InvalidInput, "d' - a' vanishes identically (q = 0)");
  return winding_of(sweep.a_samples, sweep.d_samples);
}

WorkingCurve prepare_variety(const PlaneCurve& curve, cplx r, const InscribeOptions& options) {
  const PlaneCurve base = curve.normalized_ccw();
  validate(base);
  PlaneCurve working = base;
  double magnitude = 0.0;
  std::string last_error;
  for (int attempt = 0; attempt <= options.perturb_attempts; ++attempt) {
    if (attempt > 0) {
      magnitude = attempt == 1 ? options.perturb_start : 0.5 * magnitude;
      try {
        working = perturb(base, magnitude, options.seed + static_cast<std::uint64_t>(attempt));
      } catch (const GeometryError& e) {
        last_error = e.what();
        continue;
      }
    }
    try {
      TriangleVariety var(working, r, options.trace);
      auto paths = var.trace_all();
      // The degree argument forces total vertical index 1; anything else means
      // the tracer jumped branches or missed a component.
      if (var.vertical_index(paths, 0.1234567) != 1)
        throw GeometryError(ErrorKind::SingularPoint, "vertical index of the traced variety differs from 1");
      return WorkingCurve{working, magnitude, std::move(paths)};
    } catch (const GeometryError& e) {
      const auto k = e.kind();
      if (k != ErrorKind::SingularPoint && k != ErrorKind::StepCollapse && k != ErrorKind::NonGenericSlice) throw;
      last_error = e.what();
    }
  }
  throw GeometryError(ErrorKind::SingularPoint, "variety could not be traced after perturbation: " + last_error);
}

InscriptionReport inscribe(const PlaneCurve& curve, const Quadrangle& quad, const InscribeOptions& options) {
  const ShapeRatios ratios = shape_ratios(quad);
  WorkingCurve wc = prepare_variety(curve, ratios.r, options);
  const TriangleVariety var(wc.curve, ratios.r, options.trace);

  InscriptionReport report;
  report.perturbation_used = wc.perturbation;
  report.component_count = wc.paths.size();

  for (const VarietyPath& raw : wc.paths) {
    if (raw.kind != PathKind::periodic) continue;
    const VarietyPath oriented = raw.period_shift < 0 ? reversed(raw) : raw;
    const VarietyPath path = var.normalize_period(oriented);
    const FourthVertexSweep sweep = sweep_fourth_vertex(wc.curve, quad, path, options.trace);
    ComponentReport comp;
    comp.period_shift = path.period_shift;
    comp.s_margin = path.s_margin;
    comp.inscriptions = find_inscriptions(sweep, wc.curve, options);
    if (comp.inscriptions.hits.empty()) comp.coincidences = find_coincidences(sweep, options);
    comp.areas = area_report(sweep, wc.curve);
    comp.rotation = rotation_number(sweep);
    comp.fourth_rotation = ratios.q == cplx(0.0) ? comp.rotation : fourth_rotation_number(sweep);
    report.components.push_back(std::move(comp));
  }
  if (report.components.empty())
    throw GeometryError(ErrorKind::TheoremViolation, "no periodic component of Z was found");

  const ComponentReport* primary = nullptr;
  for (const auto& comp : report.components) {
    if (!comp.inscriptions.hits.empty()) {
      if (!primary) primary = &comp;
      report.alternative = 1;
      report.continuum = report.continuum || comp.inscriptions.continuum;
      for (const auto& h : comp.inscriptions.hits) {
        report.similarities.push_back(h.sigma);
        report.residual = std::max(report.residual, h.residual);
      }
    }
  }
  if (report.alternative == 0) {
    for (const auto& comp : report.components) {
      for (const auto& co : comp.coincidences) {
        if (co.gap > options.tol_report || co.residual > options.tol_report) continue;
        if (!primary) primary = &comp;
        report.alternative = 2;
        report.pairs.emplace_back(co.first, co.second);
        report.residual = std::max({report.residual, co.gap, co.residual});
      }
    }
  }
  if (report.alternative == 0) {
    std::ostringstream os;
    os << "neither an inscription nor a coincidence was certified on " << report.components.size()
       << " periodic component(s); perturbation " << wc.perturbation;
    for (const auto& comp : report.components)
      os << "; component: shift " << comp.period_shift << ", s-margin " << comp.s_margin << ", area deviation "
         << comp.areas.max_deviation << ", coincidence candidates " << comp.coincidences.size();
    throw GeometryError(ErrorKind::TheoremViolation, os.str());
  }
  report.areas = primary->areas;
  report.rotation_number = primary->rotation;
  report.fourth_rotation_number = primary->fourth_rotation;
  return report;
}

}  // namespace makeev
