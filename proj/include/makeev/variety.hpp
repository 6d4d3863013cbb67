#pragma once

#include <complex>
#include <vector>

#include "makeev/curve.hpp"
#include "makeev/kernels.hpp"

namespace makeev {

struct TraceOptions {
  int grid_t = 512;
  int grid_s = 256;
  double s_min = 1e-3;
  double tol_trace = 1e-10;
  double step_min = 1e-5;
  double step_max = 5e-3;
  int n_path = 4096;
  int k_max = 8;
  int max_steps = 400000;
  double max_turn = 0.2;  // radians of tangent rotation per accepted step
  int max_slice_retries = 8;
  Exec exec = Exec::parallel;
};

// A point of X = R x (0, 1). t is kept on the universal cover; the deck map
// (t, s) -> (t + 1, s) is applied only through shifted().
struct CylinderPoint {
  double t = 0.0;
  double s = 0.0;

  CylinderPoint shifted(int k) const noexcept { return {t + k, s}; }
};

enum class PathKind { periodic, loop, open };

struct VarietyPath {
  std::vector<CylinderPoint> samples;
  // The path closes under (t, s) -> (t + period_shift, s); zero for bounded loops.
  int period_shift = 0;
  double s_margin = 0.0;
  PathKind kind = PathKind::open;
  bool normalized = false;

  // samples.front() moved by the deck transform; closes the polyline.
  CylinderPoint endpoint() const { return samples.front().shifted(period_shift); }
};

// Residual F(t, s) = signed_distance(C, a' + r (b' - a')) with a' = f(t),
// b' = f(t + s), and the machinery to seed, trace and resample its zero set Z.
class TriangleVariety {
 public:
  TriangleVariety(PlaneCurve curve, cplx r, TraceOptions options = {});

  const PlaneCurve& curve() const noexcept { return curve_; }
  cplx ratio() const noexcept { return r_; }
  const TraceOptions& options() const noexcept { return options_; }

  cplx third_vertex(double t, double s) const noexcept;
  double residual(double t, double s) const;

  struct Value {
    double f = 0.0;
    double ft = 0.0;
    double fs = 0.0;
  };
  Value evaluate(double t, double s) const;

  // Unit tangent of Z at (t, s), oriented so that the unbounded component is
  // traversed with increasing t (this fixes the sign of the vertical index).
  CylinderPoint tangent(double t, double s) const;

  // Minimum-norm Newton projection onto Z. Returns false if it fails to reach
  // tol_trace.
  bool project(CylinderPoint& p) const;

  // F on the G_t x G_s seeding lattice, row-major in t.
  std::vector<double> residual_grid(Exec exec) const;

  std::vector<CylinderPoint> seed_points() const;
  VarietyPath trace(CylinderPoint seed) const;
  // Every component reachable from the seed lattice, deduplicated.
  std::vector<VarietyPath> trace_all() const;

  VarietyPath normalize_period(const VarietyPath& path, int n_path = 0) const;
  // Point of a normalized path at parameter u (u in [0, 1) is one period),
  // interpolated and projected back onto Z.
  CylinderPoint path_point(const VarietyPath& normalized, double u) const;

  int vertical_index(const std::vector<VarietyPath>& paths, double t) const;

 private:
  double s_of_row(int i) const noexcept;
  int traversal_sense(const std::vector<CylinderPoint>& pts) const;
  VarietyPath march(CylinderPoint start, int direction, bool& closed) const;

  PlaneCurve curve_;
  cplx r_;
  TraceOptions options_;
  double orient_ = 1.0;
};

double residual(const PlaneCurve& curve, cplx r, double t, double s);
std::vector<CylinderPoint> seed_points(const PlaneCurve& curve, cplx r, const TraceOptions& options = {});
VarietyPath trace_component(const PlaneCurve& curve, cplx r, CylinderPoint seed, const TraceOptions& options = {});
int vertical_index(const PlaneCurve& curve, cplx r, const std::vector<VarietyPath>& paths, double t,
                   const TraceOptions& options = {});

// Reverses traversal direction (and the sign of period_shift).
VarietyPath reversed(const VarietyPath& path);

}  // namespace makeev
