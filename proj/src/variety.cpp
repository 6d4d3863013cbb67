#include "makeev/variety.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "makeev/error.hpp"

namespace makeev {

namespace {

double wrap01(double t) noexcept {
  double w = t - std::floor(t);
  return w >= 1.0 ? 0.0 : w;
}

double dist(CylinderPoint a, CylinderPoint b) noexcept { return std::hypot(a.t - b.t, a.s - b.s); }

double dot(CylinderPoint a, CylinderPoint b) noexcept { return a.t * b.t + a.s * b.s; }

// Distance from q to the segment [a, b].
double segment_distance(CylinderPoint a, CylinderPoint b, CylinderPoint q) noexcept {
  const CylinderPoint d{b.t - a.t, b.s - a.s};
  const double len2 = dot(d, d);
  double lambda = len2 > 0.0 ? dot({q.t - a.t, q.s - a.s}, d) / len2 : 0.0;
  lambda = std::clamp(lambda, 0.0, 1.0);
  return dist({a.t + lambda * d.t, a.s + lambda * d.s}, q);
}

void fill_margin(VarietyPath& path) {
  double lo = 1.0, hi = 0.0;
  for (const auto& p : path.samples) {
    lo = std::min(lo, p.s);
    hi = std::max(hi, p.s);
  }
  path.s_margin = std::min(lo, 1.0 - hi);
}

}  // namespace

TriangleVariety::TriangleVariety(PlaneCurve curve, cplx r, TraceOptions options)
    : curve_(std::move(curve)), r_(r), options_(options) {
  if (options_.grid_t < 4 || options_.grid_s < 4 || !(options_.s_min > 0.0 && options_.s_min < 0.5) ||
      !(options_.tol_trace > 0.0) || !(options_.step_min > 0.0) || !(options_.step_max >= options_.step_min) ||
      options_.n_path < 8)
    throw GeometryError(ErrorKind::InvalidInput, "invalid trace options");
  const double im_sign = r_.imag() > 0.0 ? 1.0 : (r_.imag() < 0.0 ? -1.0 : 1.0);
  orient_ = im_sign * curve_.orientation();
}

cplx TriangleVariety::third_vertex(double t, double s) const noexcept {
  const cplx a = curve_.eval(t);
  const cplx b = curve_.eval(t + s);
  return a + r_ * (b - a);
}

double TriangleVariety::residual(double t, double s) const {
  return signed_distance(curve_, third_vertex(t, s), Snap::exact);
}

TriangleVariety::Value TriangleVariety::evaluate(double t, double s) const {
  const CurveJet ja = curve_.jet(t);
  const CurveJet jb = curve_.jet(t + s);
  const cplx c = ja.f + r_ * (jb.f - ja.f);
  const SignedDistance sd = signed_distance_with_gradient(curve_, c, Snap::exact);
  const cplx dc_dt = (1.0 - r_) * ja.df + r_ * jb.df;
  const cplx dc_ds = r_ * jb.df;
  const cplx n = std::conj(sd.gradient);
  return Value{sd.value, (n * dc_dt).real(), (n * dc_ds).real()};
}

CylinderPoint TriangleVariety::tangent(double t, double s) const {
  const Value v = evaluate(t, s);
  const double norm = std::hypot(v.ft, v.fs);
  if (norm == 0.0) return {0.0, 0.0};
  return {orient_ * v.fs / norm, -orient_ * v.ft / norm};
}

bool TriangleVariety::project(CylinderPoint& p) const {
  for (int it = 0; it < 40; ++it) {
    const Value v = evaluate(p.t, p.s);
    if (std::abs(v.f) <= 1e-15) return true;
    const double g2 = v.ft * v.ft + v.fs * v.fs;
    if (!(g2 > 1e-30)) return false;
    const double dt = v.f * v.ft / g2;
    const double ds = v.f * v.fs / g2;
    p.t -= dt;
    p.s -= ds;
    if (std::abs(v.f) <= options_.tol_trace && std::hypot(dt, ds) < 1e-14) break;
  }
  return std::abs(residual(p.t, p.s)) <= options_.tol_trace;
}

double TriangleVariety::s_of_row(int i) const noexcept {
  return options_.s_min + (1.0 - 2.0 * options_.s_min) * i / (options_.grid_s - 1);
}

std::vector<double> TriangleVariety::residual_grid(Exec exec) const {
  const auto gt = static_cast<std::size_t>(options_.grid_t);
  const auto gs = static_cast<std::size_t>(options_.grid_s);
  return kernels::tabulate<double>(
      gt * gs,
      [&](std::size_t idx) {
        const std::size_t j = idx / gs;
        const std::size_t i = idx % gs;
        return residual(static_cast<double>(j) / static_cast<double>(gt), s_of_row(static_cast<int>(i)));
      },
      exec);
}

namespace {

struct EdgeRoot {
  bool column = true;  // true: fixed t (column j), varying s; false: fixed s (row i)
  int index = 0;       // column j or row i
  int cell = 0;        // lower endpoint on the other axis
};

}  // namespace

namespace detail {

// Sign changes along lattice edges, in deterministic order: columns first.
std::vector<EdgeRoot> lattice_brackets(const std::vector<double>& grid, int gt, int gs) {
  std::vector<EdgeRoot> out;
  auto at = [&](int j, int i) { return grid[static_cast<std::size_t>(j) * gs + i]; };
  auto changes = [](double a, double b) { return a == 0.0 || (a < 0.0 && b > 0.0) || (a > 0.0 && b < 0.0); };
  for (int j = 0; j < gt; ++j)
    for (int i = 0; i + 1 < gs; ++i)
      if (changes(at(j, i), at(j, i + 1))) out.push_back({true, j, i});
  for (int i = 0; i < gs; ++i)
    for (int j = 0; j < gt; ++j)
      if (at(j, i) != 0.0 && changes(at(j, i), at((j + 1) % gt, i))) out.push_back({false, i, j});
  return out;
}

}  // namespace detail

namespace {

template <class Fn>
double bisect(Fn&& fn, double lo, double hi, double flo) {
  if (flo == 0.0) return lo;
  for (int it = 0; it < 200 && hi - lo > 1e-15 * std::max(1.0, std::abs(lo)); ++it) {
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

namespace {

CylinderPoint refine_bracket(const TriangleVariety& var, const EdgeRoot& e, const std::vector<double>& grid,
                             const TraceOptions& opt, double (*row_s)(const TraceOptions&, int)) {
  const int gs = opt.grid_s;
  if (e.column) {
    const double t = static_cast<double>(e.index) / opt.grid_t;
    const double lo = row_s(opt, e.cell), hi = row_s(opt, e.cell + 1);
    const double flo = grid[static_cast<std::size_t>(e.index) * gs + e.cell];
    return {t, bisect([&](double s) { return var.residual(t, s); }, lo, hi, flo)};
  }
  const double s = row_s(opt, e.index);
  const double lo = static_cast<double>(e.cell) / opt.grid_t;
  const double hi = static_cast<double>(e.cell + 1) / opt.grid_t;
  const double flo = grid[static_cast<std::size_t>(e.cell) * gs + e.index];
  return {bisect([&](double t) { return var.residual(t, s); }, lo, hi, flo), s};
}

double row_s_of(const TraceOptions& opt, int i) { return opt.s_min + (1.0 - 2.0 * opt.s_min) * i / (opt.grid_s - 1); }

}  // namespace

std::vector<CylinderPoint> TriangleVariety::seed_points() const {
  const auto grid = residual_grid(options_.exec);
  const auto brackets = detail::lattice_brackets(grid, options_.grid_t, options_.grid_s);
  if (brackets.empty())
    throw GeometryError(ErrorKind::NoSeedsFound, "residual has no sign change on the seeding lattice");
  auto roots = kernels::tabulate<CylinderPoint>(
      brackets.size(),
      [&](std::size_t k) {
        CylinderPoint p = refine_bracket(*this, brackets[k], grid, options_, row_s_of);
        CylinderPoint q = p;
        if (project(q) && dist(p, q) < 1e-6) p = q;
        return p;
      },
      options_.exec);
  std::vector<CylinderPoint> out;
  for (const auto& p : roots) {
    if (std::abs(residual(p.t, p.s)) > options_.tol_trace) continue;
    const bool dup = std::any_of(out.begin(), out.end(), [&](const CylinderPoint& q) {
      const double dt = std::abs(wrap01(p.t - q.t + 0.5) - 0.5);
      return std::hypot(dt, p.s - q.s) < 1e-9;
    });
    if (!dup) out.push_back(p);
  }
  if (out.empty()) throw GeometryError(ErrorKind::NoSeedsFound, "no lattice root could be refined onto Z");
  return out;
}

VarietyPath TriangleVariety::march(CylinderPoint start, int direction, bool& closed) const {
  const TraceOptions& o = options_;
  VarietyPath path;
  path.samples.push_back(start);
  closed = false;

  auto oriented_tangent = [&](CylinderPoint p) {
    CylinderPoint tau = tangent(p.t, p.s);
    return CylinderPoint{direction * tau.t, direction * tau.s};
  };

  const CylinderPoint tau0 = oriented_tangent(start);
  if (dot(tau0, tau0) == 0.0)
    throw GeometryError(ErrorKind::SingularPoint, "gradient of the residual vanishes at the trace start");

  CylinderPoint x = start;
  CylinderPoint tau = tau0;
  double h = 0.25 * o.step_max;
  bool left_start = false;

  for (int step = 0; step < o.max_steps; ++step) {
    // Predictor along the tangent, corrector on {F = 0, tau . (y - pred) = 0}.
    const CylinderPoint pred{x.t + h * tau.t, x.s + h * tau.s};
    CylinderPoint y = pred;
    bool converged = false;
    int iters = 0;
    for (; iters < 10; ++iters) {
      const Value v = evaluate(y.t, y.s);
      const double g = tau.t * (y.t - pred.t) + tau.s * (y.s - pred.s);
      const double det = v.ft * tau.s - v.fs * tau.t;
      if (std::abs(det) < 1e-14) break;
      const double dt = (-v.f * tau.s + g * v.fs) / det;
      const double ds = (-g * v.ft + v.f * tau.t) / det;
      y.t += dt;
      y.s += ds;
      if (std::abs(v.f) <= o.tol_trace && std::hypot(dt, ds) < 1e-13) {
        converged = true;
        break;
      }
    }
    if (converged) converged = std::abs(residual(y.t, y.s)) <= o.tol_trace;

    CylinderPoint tau_new{};
    double turn = 0.0;
    bool flipped = false;
    if (converged) {
      tau_new = oriented_tangent(y);
      const double c = std::clamp(dot(tau, tau_new), -1.0, 1.0);
      flipped = c < 0.0;
      turn = std::acos(c);
      if (dist(x, y) > 2.0 * h) converged = false;
    }
    if (!converged || flipped || turn > o.max_turn) {
      h *= 0.5;
      if (h < o.step_min) {
        if (flipped)
          throw GeometryError(ErrorKind::SingularPoint,
                              "tangent orientation reverses near (" + std::to_string(x.t) + ", " +
                                  std::to_string(x.s) + "): Z is singular there");
        throw GeometryError(ErrorKind::StepCollapse, "adaptive step underflow near (" + std::to_string(x.t) + ", " +
                                                         std::to_string(x.s) + ")");
      }
      continue;
    }

    const CylinderPoint prev = x;
    x = y;
    tau = tau_new;

    if (x.s <= 0.25 * o.s_min || x.s >= 1.0 - 0.25 * o.s_min) {
      path.samples.push_back(x);
      return path;
    }

    // Closure: the path returns to the start or to its image under the deck map.
    const int k = static_cast<int>(std::lround(x.t - start.t));
    if (k == 0 && !left_start && dist(x, start) > 4.0 * h) left_start = true;
    if (std::abs(k) <= o.k_max && (k != 0 || left_start)) {
      const CylinderPoint target = start.shifted(k);
      const double before = dot(tau0, {prev.t - target.t, prev.s - target.s});
      const double after = dot(tau0, {x.t - target.t, x.s - target.s});
      if (before < 0.0 && after >= 0.0 && segment_distance(prev, x, target) < 2.0 * h + 1e-9) {
        if (path.samples.size() > 1 && dist(path.samples.back(), target) < 1e-3 * h) path.samples.pop_back();
        path.period_shift = k;
        path.kind = k == 0 ? PathKind::loop : PathKind::periodic;
        closed = true;
        return path;
      }
    }
    path.samples.push_back(x);

    if (iters <= 3 && turn < o.max_turn / 3.0) h = std::min(1.5 * h, o.step_max);
  }
  throw GeometryError(ErrorKind::StepCollapse, "path did not close within max_steps");
}

VarietyPath TriangleVariety::trace(CylinderPoint seed) const {
  CylinderPoint start = seed;
  if (!project(start))
    throw GeometryError(ErrorKind::InvalidInput, "seed is not on Z within tol_trace");
  {
    const Value v = evaluate(start.t, start.s);
    if (std::hypot(v.ft, v.fs) < 1e-9)
      throw GeometryError(ErrorKind::SingularPoint, "gradient of the residual vanishes at the seed");
  }
  bool closed = false;
  VarietyPath forward = march(start, +1, closed);
  if (closed) {
    fill_margin(forward);
    return forward;
  }
  bool back_closed = false;
  VarietyPath backward = march(start, -1, back_closed);
  VarietyPath out;
  out.kind = PathKind::open;
  out.samples.assign(backward.samples.rbegin(), backward.samples.rend() - 1);
  out.samples.insert(out.samples.end(), forward.samples.begin(), forward.samples.end());
  fill_margin(out);
  return out;
}

namespace {

struct Cover {
  std::vector<std::vector<double>> columns;  // s values per lattice column
  std::vector<std::vector<double>> rows;     // t mod 1 values per lattice row
};

}  // namespace

std::vector<VarietyPath> TriangleVariety::trace_all() const {
  const auto grid = residual_grid(options_.exec);
  const auto brackets = detail::lattice_brackets(grid, options_.grid_t, options_.grid_s);
  if (brackets.empty())
    throw GeometryError(ErrorKind::NoSeedsFound, "residual has no sign change on the seeding lattice");

  const int gt = options_.grid_t, gs = options_.grid_s;
  Cover cover{std::vector<std::vector<double>>(static_cast<std::size_t>(gt)),
              std::vector<std::vector<double>>(static_cast<std::size_t>(gs))};

  auto register_path = [&](const VarietyPath& path) {
    std::vector<CylinderPoint> pts = path.samples;
    if (path.kind != PathKind::open) pts.push_back(path.endpoint());
    for (std::size_t m = 0; m + 1 < pts.size(); ++m) {
      const CylinderPoint a = pts[m], b = pts[m + 1];
      const double tlo = std::min(a.t, b.t) * gt, thi = std::max(a.t, b.t) * gt;
      for (auto c = static_cast<long long>(std::ceil(tlo)); c <= static_cast<long long>(std::floor(thi)); ++c) {
        const double tc = static_cast<double>(c) / gt;
        const double lambda = (b.t == a.t) ? 0.0 : (tc - a.t) / (b.t - a.t);
        const double s0 = a.s + lambda * (b.s - a.s);
        double s = s0;
        for (int it = 0; it < 8; ++it) {
          const Value v = evaluate(tc, s);
          if (std::abs(v.fs) < 1e-12) break;
          s -= v.f / v.fs;
        }
        if (!(std::abs(s - s0) < dist(a, b))) s = s0;  // diverged near a fold
        const auto j = static_cast<std::size_t>(((c % gt) + gt) % gt);
        cover.columns[j].push_back(s);
      }
      for (int i = 0; i < gs; ++i) {
        const double si = s_of_row(i);
        if (si < std::min(a.s, b.s) || si > std::max(a.s, b.s)) continue;
        const double lambda = (b.s == a.s) ? 0.0 : (si - a.s) / (b.s - a.s);
        const double t0 = a.t + lambda * (b.t - a.t);
        double t = t0;
        for (int it = 0; it < 8; ++it) {
          const Value v = evaluate(t, si);
          if (std::abs(v.ft) < 1e-12) break;
          t -= v.f / v.ft;
        }
        if (!(std::abs(t - t0) < dist(a, b))) t = t0;
        cover.rows[static_cast<std::size_t>(i)].push_back(wrap01(t));
      }
    }
  };

  std::vector<VarietyPath> paths;
  auto covered = [&](const EdgeRoot& e) {
    if (e.column) {
      const double lo = s_of_row(e.cell), hi = s_of_row(e.cell + 1);
      for (double s : cover.columns[static_cast<std::size_t>(e.index)])
        if (s >= lo - 1e-12 && s <= hi + 1e-12) return true;
      return false;
    }
    const double lo = static_cast<double>(e.cell) / gt, hi = static_cast<double>(e.cell + 1) / gt;
    for (double t : cover.rows[static_cast<std::size_t>(e.index)]) {
      double tt = t;
      if (e.cell == gt - 1 && tt < 0.5) tt += 1.0;
      if (tt >= lo - 1e-12 && tt <= hi + 1e-12) return true;
    }
    return false;
  };

  // A seed on a traced component lies within the chord sag of its polyline;
  // the sag of a step of length h turning by at most max_turn is <= h max_turn / 8.
  auto near_traced = [&](CylinderPoint q) {
    for (const VarietyPath& path : paths) {
      std::vector<CylinderPoint> pts = path.samples;
      if (path.kind != PathKind::open) pts.push_back(path.endpoint());
      for (std::size_t m = 0; m + 1 < pts.size(); ++m) {
        const CylinderPoint a = pts[m], b = pts[m + 1];
        const double tol = 1e-9 + dist(a, b) * options_.max_turn / 4.0;
        const double k = std::round(0.5 * (a.t + b.t) - q.t);
        for (double dk : {k - 1.0, k, k + 1.0})
          if (segment_distance(a, b, {q.t + dk, q.s}) <= tol) return true;
      }
    }
    return false;
  };

  for (const EdgeRoot& e : brackets) {
    if (covered(e)) continue;
    CylinderPoint seed = refine_bracket(*this, e, grid, options_, row_s_of);
    if (!project(seed) || near_traced(seed)) continue;
    VarietyPath path = trace(seed);
    register_path(path);
    paths.push_back(std::move(path));
  }

  auto key = [](const VarietyPath& p) {
    const auto it = std::min_element(p.samples.begin(), p.samples.end(), [](const auto& a, const auto& b) {
      const double ta = wrap01(a.t), tb = wrap01(b.t);
      return ta < tb || (ta == tb && a.s < b.s);
    });
    return std::pair{wrap01(it->t), it->s};
  };
  std::stable_sort(paths.begin(), paths.end(), [&](const VarietyPath& a, const VarietyPath& b) {
    const int ra = a.kind == PathKind::periodic ? 0 : (a.kind == PathKind::loop ? 1 : 2);
    const int rb = b.kind == PathKind::periodic ? 0 : (b.kind == PathKind::loop ? 1 : 2);
    if (ra != rb) return ra < rb;
    return key(a) < key(b);
  });
  return paths;
}

VarietyPath TriangleVariety::normalize_period(const VarietyPath& path, int n_path) const {
  const int n = n_path > 0 ? n_path : options_.n_path;
  if (path.kind == PathKind::open)
    throw GeometryError(ErrorKind::InvalidInput, "only closed paths (periodic or loops) can be normalized");
  if (path.normalized && static_cast<int>(path.samples.size()) == n) return path;

  std::vector<CylinderPoint> pts = path.samples;
  pts.push_back(path.endpoint());
  std::vector<CylinderPoint> tangents(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) tangents[i] = tangent(pts[i].t, pts[i].s);
  // Paths may run against the orientation of Z (e.g. after reversed()).
  if (dot(tangents[0], {pts[1].t - pts[0].t, pts[1].s - pts[0].s}) < 0.0)
    for (auto& tau : tangents) tau = {-tau.t, -tau.s};
  std::vector<double> cum(pts.size(), 0.0);
  for (std::size_t i = 1; i < pts.size(); ++i) cum[i] = cum[i - 1] + dist(pts[i - 1], pts[i]);
  const double total = cum.back();

  VarietyPath out;
  out.period_shift = path.period_shift;
  out.kind = path.kind;
  out.normalized = true;
  out.samples.resize(static_cast<std::size_t>(n));
  std::size_t seg = 0;
  for (int m = 0; m < n; ++m) {
    const double target = total * m / n;
    while (seg + 2 < pts.size() && cum[seg + 1] <= target) ++seg;
    const double len = cum[seg + 1] - cum[seg];
    const double lam = len > 0.0 ? (target - cum[seg]) / len : 0.0;
    // Cubic Hermite on the segment using the unit tangents of Z.
    const double h00 = 2 * lam * lam * lam - 3 * lam * lam + 1, h10 = lam * lam * lam - 2 * lam * lam + lam;
    const double h01 = -2 * lam * lam * lam + 3 * lam * lam, h11 = lam * lam * lam - lam * lam;
    CylinderPoint p{h00 * pts[seg].t + h10 * len * tangents[seg].t + h01 * pts[seg + 1].t +
                        h11 * len * tangents[seg + 1].t,
                    h00 * pts[seg].s + h10 * len * tangents[seg].s + h01 * pts[seg + 1].s +
                        h11 * len * tangents[seg + 1].s};
    if (m == 0) p = pts[0];
    if (!project(p))
      throw GeometryError(ErrorKind::SingularPoint, "resampled point could not be projected back onto Z");
    out.samples[static_cast<std::size_t>(m)] = p;
  }
  fill_margin(out);
  return out;
}

CylinderPoint TriangleVariety::path_point(const VarietyPath& normalized, double u) const {
  const auto n = static_cast<long long>(normalized.samples.size());
  const double x = u * static_cast<double>(n);
  const auto m = static_cast<long long>(std::floor(x));
  const double lam = x - static_cast<double>(m);
  long long q = m / n;
  long long j = m % n;
  if (j < 0) {
    j += n;
    q -= 1;
  }
  const int shift = static_cast<int>(q) * normalized.period_shift;
  const CylinderPoint a = normalized.samples[static_cast<std::size_t>(j)].shifted(shift);
  const CylinderPoint b =
      (j + 1 < n ? normalized.samples[static_cast<std::size_t>(j + 1)] : normalized.endpoint()).shifted(shift);
  CylinderPoint p{a.t + lam * (b.t - a.t), a.s + lam * (b.s - a.s)};
  if (lam == 0.0) return a;
  project(p);
  return p;
}

// +1 when the polyline runs along the canonical tangent of Z, -1 against it
// (majority over a few segments, so the index ignores traversal direction).
int TriangleVariety::traversal_sense(const std::vector<CylinderPoint>& pts) const {
  if (pts.size() < 2) return 1;
  int votes = 0;
  const std::size_t stride = std::max<std::size_t>(1, (pts.size() - 1) / 9);
  for (std::size_t m = 0; m + 1 < pts.size(); m += stride) {
    const CylinderPoint tau = tangent(pts[m].t, pts[m].s);
    const double along = tau.t * (pts[m + 1].t - pts[m].t) + tau.s * (pts[m + 1].s - pts[m].s);
    votes += along >= 0.0 ? 1 : -1;
  }
  return votes >= 0 ? 1 : -1;
}

int TriangleVariety::vertical_index(const std::vector<VarietyPath>& paths, double t) const {
  double slice = t;
  for (int attempt = 0; attempt <= options_.max_slice_retries; ++attempt) {
    int total = 0;
    bool generic = true;
    for (const VarietyPath& path : paths) {
      std::vector<CylinderPoint> pts = path.samples;
      if (path.kind != PathKind::open) pts.push_back(path.endpoint());
      const int sense = traversal_sense(pts);
      for (std::size_t m = 0; m + 1 < pts.size() && generic; ++m) {
        const CylinderPoint a = pts[m], b = pts[m + 1];
        if (a.t == b.t) continue;
        const double lo = std::min(a.t, b.t), hi = std::max(a.t, b.t);
        for (auto c = static_cast<long long>(std::ceil(lo - slice)); c + slice <= hi; ++c) {
          const double line = slice + static_cast<double>(c);
          if (!(line >= lo && line < hi)) continue;
          const CylinderPoint tau = tangent(line, a.s + (line - a.t) / (b.t - a.t) * (b.s - a.s));
          if (std::abs(tau.t) < 1e-6 || std::abs(line - a.t) < 1e-12 || std::abs(line - b.t) < 1e-12) {
            generic = false;
            break;
          }
          total += sense * (b.t > a.t ? 1 : -1);
        }
      }
      if (!generic) break;
    }
    if (generic) return total;
    slice += 0.6180339887498949 / (options_.grid_t * 7.0);
  }
  throw GeometryError(ErrorKind::NonGenericSlice, "no generic vertical slice near t = " + std::to_string(t));
}

double residual(const PlaneCurve& curve, cplx r, double t, double s) {
  return TriangleVariety(curve, r).residual(t, s);
}

std::vector<CylinderPoint> seed_points(const PlaneCurve& curve, cplx r, const TraceOptions& options) {
  return TriangleVariety(curve, r, options).seed_points();
}

VarietyPath trace_component(const PlaneCurve& curve, cplx r, CylinderPoint seed, const TraceOptions& options) {
  return TriangleVariety(curve, r, options).trace(seed);
}

int vertical_index(const PlaneCurve& curve, cplx r, const std::vector<VarietyPath>& paths, double t,
                   const TraceOptions& options) {
  return TriangleVariety(curve, r, options).vertical_index(paths, t);
}

VarietyPath reversed(const VarietyPath& path) {
  VarietyPath out = path;
  if (path.samples.empty()) return out;
  if (path.kind == PathKind::open) {
    std::reverse(out.samples.begin(), out.samples.end());
    return out;
  }
  // Keep the first sample; walk the remaining ones backwards.
  out.samples.assign(1, path.samples.front());
  for (auto it = path.samples.rbegin(); it + 1 != path.samples.rend(); ++it)
    out.samples.push_back(it->shifted(-path.period_shift));
  out.period_shift = -path.period_shift;
  out.normalized = false;
  return out;
}

}  // namespace makeev
