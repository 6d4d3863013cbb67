#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "makeev/curve.hpp"
#include "makeev/quadrangle.hpp"
#include "makeev/variety.hpp"

namespace makeev {

struct InscribeOptions {
  TraceOptions trace;
  double tol_report = 1e-8;
  double u_sep = 1e-3;
  double loop_area_min = 1e-10;
  double perturb_start = 1e-3;
  int perturb_attempts = 6;
  std::uint64_t seed = 0;
};

// The triangle family along a normalized component and the induced fourth
// vertex d'(u) = a'(u) + q (b'(u) - a'(u)).
struct FourthVertexSweep {
  VarietyPath path;
  ShapeRatios ratios;
  cplx base_a{0.0, 0.0};  // a and b of the reference quadrangle
  cplx base_b{1.0, 0.0};
  std::vector<cplx> a_samples, b_samples, c_samples, d_samples;
  // Present when the sweep came from a traced curve; enables refinement
  // between samples. Absent for synthetic sweeps.
  std::optional<PlaneCurve> curve;
  TraceOptions trace;

  std::size_t size() const noexcept { return d_samples.size(); }
  cplx base_d() const noexcept { return base_a + ratios.q * (base_b - base_a); }
};

FourthVertexSweep sweep_fourth_vertex(const PlaneCurve& curve, const Quadrangle& quad, const VarietyPath& path,
                                      const TraceOptions& trace = {});
// Same, for a bare ratio pair (reference quadrangle 0, 1, r, q); q need not
// make the quadrangle concyclic.
FourthVertexSweep sweep_fourth_vertex(const PlaneCurve& curve, ShapeRatios ratios, const VarietyPath& path,
                                      const TraceOptions& trace = {});

struct Inscription {
  SimilarityMap sigma;
  double u = 0.0;
  CylinderPoint at;
  double residual = 0.0;  // max |signed distance| over the four placed vertices
};

struct InscriptionSet {
  std::vector<Inscription> hits;
  // Every sweep sample already lies on C (circle-like degeneracy); hits then
  // holds evenly spaced representatives.
  bool continuum = false;
};

InscriptionSet find_inscriptions(const FourthVertexSweep& sweep, const PlaneCurve& curve,
                                 const InscribeOptions& options = {});

struct Coincidence {
  SimilarityMap first;
  SimilarityMap second;
  double u1 = 0.0;
  double u2 = 0.0;
  cplx point;
  double gap = 0.0;        // |first(d) - second(d)|
  double loop_area = 0.0;  // signed area of the loop of d' between u1 and u2
  double residual = 0.0;   // max |signed distance| of the six a, b, c placements (traced sweeps only)
};

std::vector<Coincidence> find_coincidences(const FourthVertexSweep& sweep, const InscribeOptions& options = {});

struct AreaReport {
  double s_a = 0.0, s_b = 0.0, s_c = 0.0, s_d = 0.0;
  double s_curve = 0.0;
  double max_deviation = 0.0;  // max_x |S_x - S_C|
};

AreaReport area_report(const FourthVertexSweep& sweep, const PlaneCurve& curve);

// Winding of u -> b'(u) - a'(u) over one period.
int rotation_number(const FourthVertexSweep& sweep);
// Winding of u -> d'(u) - a'(u); undefined (throws) when q = 0.
int fourth_rotation_number(const FourthVertexSweep& sweep);

struct ComponentReport {
  int period_shift = 0;
  double s_margin = 0.0;
  InscriptionSet inscriptions;
  std::vector<Coincidence> coincidences;
  AreaReport areas;
  int rotation = 0;
  int fourth_rotation = 0;
};

struct InscriptionReport {
  int alternative = 0;
  std::vector<SimilarityMap> similarities;                      // alternative 1
  std::vector<std::pair<SimilarityMap, SimilarityMap>> pairs;   // alternative 2
  bool continuum = false;
  double residual = 0.0;
  AreaReport areas;
  int rotation_number = 0;
  int fourth_rotation_number = 0;
  double perturbation_used = 0.0;
  std::vector<ComponentReport> components;
  std::size_t component_count = 0;  // all traced components of Z, periodic or not
};

InscriptionReport inscribe(const PlaneCurve& curve, const Quadrangle& quad, const InscribeOptions& options = {});

// The curve actually used by inscribe(): the counter-clockwise input, possibly
// perturbed until Z can be traced. Exposed for certificate checks.
struct WorkingCurve {
  PlaneCurve curve;
  double perturbation = 0.0;
  std::vector<VarietyPath> paths;
};
WorkingCurve prepare_variety(const PlaneCurve& curve, cplx r, const InscribeOptions& options = {});

}  // namespace makeev
