#include "makeev/cli.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <optional>
#include <ostream>

#include "makeev/inscriber.hpp"
#include "makeev/io.hpp"
#include "makeev/osculating.hpp"
#include "makeev/sphere.hpp"
#include "makeev/svg.hpp"

namespace makeev::cli {

int exit_code(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidInput:
    case ErrorKind::DegenerateTangent:
    case ErrorKind::PointOnCurve:
    case ErrorKind::PerturbationBreaksSimplicity:
    case ErrorKind::DegenerateBase:
    case ErrorKind::CollinearPoints:
    case ErrorKind::NotConcyclic:
    case ErrorKind::FlatPoint:
    case ErrorKind::NotConvex:
    case ErrorKind::DegenerateAllOn:
    case ErrorKind::BadOrdering:
    case ErrorKind::BadDistance:
      return validation;
    case ErrorKind::NoSeedsFound:
    case ErrorKind::SingularPoint:
    case ErrorKind::StepCollapse:
    case ErrorKind::NonGenericSlice:
    case ErrorKind::TheoremViolation:
    case ErrorKind::ConvexityPatternFailed:
    case ErrorKind::ZeroSetMismatch:
    case ErrorKind::NotRotation:
      return numerical;
  }
  return numerical;
}

namespace {

using io::json;

struct Config {
  std::string curve, quad, json_out, svg_out, params;
  std::uint64_t seed = 0;
  int rotate_roles = 0;
  double alpha = 0.0;
  double a = 0.0, b = 0.0;
  int starts = 200;
  std::string field = "counterexample";
  std::optional<double> tol_trace, tol_report, tol_concyclic, tol_on_curve, tol_curvature;
};

CurveOptions curve_options(const Config& c) {
  CurveOptions o;
  if (c.tol_on_curve) o.tol_on_curve = *c.tol_on_curve;
  return o;
}

InscribeOptions inscribe_options(const Config& c) {
  InscribeOptions o;
  o.seed = c.seed;
  if (c.tol_trace) o.trace.tol_trace = *c.tol_trace;
  if (c.tol_report) o.tol_report = *c.tol_report;
  return o;
}

PlaneCurve load_curve(const Config& c) { return io::curve_from_json(io::read_json(c.curve), curve_options(c)); }

Quadrangle load_quad(const Config& c) {
  QuadTolerances tol;
  if (c.tol_concyclic) tol.concyclic = *c.tol_concyclic;
  return io::quadrangle_from_json(io::read_json(c.quad), tol).rotated_roles(c.rotate_roles);
}

std::vector<cplx> closed_samples(const PlaneCurve& curve) {
  auto s = curve.check_samples();
  std::vector<cplx> pts(s.begin(), s.end());
  pts.push_back(pts.front());
  return pts;
}

struct Sweeps {
  WorkingCurve working;
  std::vector<FourthVertexSweep> sweeps;
};

// The normalized periodic components as inscribe() sees them.
Sweeps periodic_sweeps(const PlaneCurve& curve, const Quadrangle& quad, const InscribeOptions& options) {
  const ShapeRatios ratios = shape_ratios(quad);
  Sweeps out{prepare_variety(curve, ratios.r, options), {}};
  const TriangleVariety var(out.working.curve, ratios.r, options.trace);
  for (const VarietyPath& raw : out.working.paths) {
    if (raw.kind != PathKind::periodic) continue;
    const VarietyPath path = var.normalize_period(raw.period_shift < 0 ? reversed(raw) : raw);
    out.sweeps.push_back(sweep_fourth_vertex(out.working.curve, quad, path, options.trace));
  }
  if (out.sweeps.empty()) throw GeometryError(ErrorKind::TheoremViolation, "no periodic component of Z was found");
  return out;
}

std::vector<cplx> closed(std::vector<cplx> pts) {
  if (!pts.empty()) pts.push_back(pts.front());
  return pts;
}

json do_inscribe(const Config& c) {
  const PlaneCurve curve = load_curve(c);
  const Quadrangle quad = load_quad(c);
  const InscribeOptions options = inscribe_options(c);
  const InscriptionReport report = inscribe(curve, quad, options);
  json doc = io::to_json(report);
  doc["quadrangle"] = json::array();
  for (const cplx& p : quad.points()) doc["quadrangle"].push_back(io::to_json(p));
  if (!c.svg_out.empty()) {
    const Sweeps s = periodic_sweeps(curve, quad, options);
    svg::Canvas canvas;
    canvas.polyline(closed_samples(s.working.curve), "black", 1.5);
    for (const auto& sw : s.sweeps) canvas.polyline(closed(sw.d_samples), "#999999", 0.7);
    auto draw = [&](const SimilarityMap& sigma, const std::string& color) {
      const Quadrangle placed = quad.mapped(sigma);
      canvas.polygon({placed.points().begin(), placed.points().end()}, color, 1.2);
      for (const cplx& p : placed.points()) canvas.dot(p, color);
    };
    for (const auto& sigma : report.similarities) draw(sigma, "#d62728");
    for (const auto& [s1, s2] : report.pairs) {
      draw(s1, "#1f77b4");
      draw(s2, "#2ca02c");
    }
    canvas.save(c.svg_out);
  }
  return doc;
}

json do_areas(const Config& c) {
  const Sweeps s = periodic_sweeps(load_curve(c), load_quad(c), inscribe_options(c));
  json comps = json::array();
  for (const auto& sw : s.sweeps) {
    json entry = io::to_json(area_report(sw, s.working.curve));
    entry["period_shift"] = sw.path.period_shift;
    comps.push_back(entry);
  }
  json doc = comps.front();
  doc.erase("period_shift");
  doc["components"] = comps;
  doc["perturbation_used"] = s.working.perturbation;
  return doc;
}

json do_trace(const Config& c) {
  const PlaneCurve curve = load_curve(c);
  const ShapeRatios ratios = shape_ratios(load_quad(c));
  const InscribeOptions options = inscribe_options(c);
  const WorkingCurve wc = prepare_variety(curve, ratios.r, options);
  const TriangleVariety var(wc.curve, ratios.r, options.trace);
  json paths = json::array();
  for (const auto& p : wc.paths) paths.push_back(io::to_json(p));
  json doc{{"r", io::to_json(ratios.r)},
           {"perturbation_used", wc.perturbation},
           {"vertical_index", var.vertical_index(wc.paths, 0.1234567)},
           {"paths", paths}};
  if (!c.svg_out.empty()) {
    svg::Canvas canvas;
    canvas.polygon({{0.0, 0.0}, {1.0, 0.0}, {1.0, 1.0}, {0.0, 1.0}}, "#bbbbbb", 0.8);
    for (const auto& p : wc.paths) {
      std::vector<cplx> run;
      std::optional<double> prev;
      auto flush = [&] {
        if (run.size() > 1) canvas.polyline(run, p.kind == PathKind::periodic ? "#d62728" : "#1f77b4", 1.2);
        run.clear();
      };
      auto pts = p.samples;
      if (p.kind != PathKind::open) pts.push_back(p.endpoint());
      for (const auto& q : pts) {
        const double t = q.t - std::floor(q.t);
        if (prev && std::abs(t - *prev) > 0.5) flush();
        run.emplace_back(t, q.s);
        prev = t;
      }
      flush();
    }
    canvas.save(c.svg_out);
  }
  return doc;
}

json do_osculate(const Config& c) {
  const PlaneCurve curve = load_curve(c).normalized_ccw();
  OsculatingOptions options;
  if (c.tol_curvature) options.tol_curvature = *c.tol_curvature;
  if (c.tol_report) options.tol_report = *c.tol_report;
  const ChordSet chords = find_chords(curve, c.alpha, options);
  json doc = io::to_json(chords);
  doc["alpha"] = c.alpha;
  json vertices = json::array();
  bool all_vertices = false;
  try {
    for (double t : vertex_points(curve, options)) vertices.push_back(t);
  } catch (const GeometryError& e) {
    if (e.kind() != ErrorKind::DegenerateAllOn) throw;
    all_vertices = true;
  }
  doc["vertices"] = vertices;
  doc["constant_curvature"] = all_vertices;
  if (!c.svg_out.empty()) {
    svg::Canvas canvas;
    canvas.polyline(closed_samples(curve), "black", 1.5);
    std::size_t drawn = 0;
    for (const auto& s : chords.solutions) {
      if (drawn++ < 8) {
        const OsculatingCircle oc = osculating_circle(curve, s.a_t, options.tol_curvature);
        canvas.circle(oc.center, oc.radius, "#999999", 0.6);
      }
      canvas.polyline({s.a, s.b}, "#d62728", 1.2);
      canvas.dot(s.a, "#d62728");
      canvas.dot(s.b, "#1f77b4");
    }
    canvas.save(c.svg_out);
  }
  return doc;
}

struct SphereInput {
  double a = 3.0, b = 2.0, d = 1.0;
  BumpSpec spec;
};

SphereInput sphere_input(const Config& c) {
  SphereInput in;
  if (c.params.empty()) return in;
  const json p = io::read_json(c.params);
  in.spec = io::bump_spec_from_json(p);
  auto take = [&](const char* key, double& field) {
    if (!p.contains(key)) return;
    if (!p[key].is_number() || !std::isfinite(p[key].get<double>()))
      throw GeometryError(ErrorKind::InvalidInput, std::string(key) + " must be a finite number");
    field = p[key].get<double>();
  };
  take("a", in.a);
  take("b", in.b);
  take("d", in.d);
  return in;
}

json parameters_json(const SphereInput& in) {
  const BumpSpec& s = in.spec;
  return {{"a", in.a},
          {"b", in.b},
          {"d", in.d},
          {"eps", s.eps},
          {"amp_phi", s.amp_phi},
          {"amp_psi", s.amp_psi},
          {"global_scale", s.global_scale},
          {"phi_exponent", s.phi_exponent},
          {"miss_height", s.miss_height},
          {"miss_width", s.miss_width},
          {"band", s.band}};
}

json do_sphere_build(const Config& c, bool& passed) {
  const SphereInput in = sphere_input(c);
  const Counterexample ce = build_counterexample(in.a, in.b, in.d, in.spec);
  const BuildReport report = verify_build(ce, c.seed);
  passed = report.pass();
  json doc = io::to_json(report);
  doc["parameters"] = parameters_json(in);
  doc["affine_match"] = {{"sx", ce.match.sx},
                         {"tz", ce.match.tz},
                         {"scale", ce.match.scale},
                         {"t_inner", ce.match.t_inner},
                         {"t_outer", ce.match.t_outer}};
  return doc;
}

json do_sphere_spread(const Config& c) {
  const SphereQuadruple q = quadruple(c.a, c.b);
  std::optional<SphereField> field;
  if (c.field == "linear-z") {
    field = linear_field(Vec3(0.0, 0.0, 1.0), "z");
  } else {
    const SphereInput in = sphere_input(c);
    field = build_counterexample(in.a, in.b, in.d, in.spec).f;
  }
  json doc = io::to_json(min_spread(*field, q, c.starts, c.seed));
  doc["a"] = c.a;
  doc["b"] = c.b;
  doc["starts"] = c.starts;
  doc["seed"] = c.seed;
  doc["field"] = c.field;
  return doc;
}

void emit(const json& doc, const std::string& path, std::ostream& out) {
  if (path.empty())
    out << io::dump(doc);
  else
    io::write_json(path, doc);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Inscribed similar quadrangles, osculating chords and a sphere counterexample", "makeev"};
  app.require_subcommand(1);
  Config c;

  auto positive = CLI::PositiveNumber;
  auto add_tolerances = [&](CLI::App* sub) {
    sub->add_option("--tol-trace", c.tol_trace, "Corrector tolerance on Z")->check(positive);
    sub->add_option("--tol-report", c.tol_report, "Certificate tolerance")->check(positive);
    sub->add_option("--tol-concyclic", c.tol_concyclic, "Cross-ratio imaginary-part tolerance")->check(positive);
    sub->add_option("--tol-on-curve", c.tol_on_curve, "On-curve snapping tolerance")->check(positive);
    sub->add_option("--tol-curvature", c.tol_curvature, "Flat-point curvature tolerance")->check(positive);
  };
  auto add_plane = [&](CLI::App* sub, bool quad) {
    sub->add_option("--curve", c.curve, "Curve JSON")->required()->check(CLI::ExistingFile);
    if (quad) {
      sub->add_option("--quad", c.quad, "Quadrangle JSON")->required()->check(CLI::ExistingFile);
      sub->add_option("--rotate-roles", c.rotate_roles, "Cyclically relabel a,b,c,d this many times");
    }
    sub->add_option("--json", c.json_out, "Report path (default stdout)");
    sub->add_option("--seed", c.seed, "Seed for perturbations");
    add_tolerances(sub);
  };

  CLI::App* inscribe_cmd = app.add_subcommand("inscribe", "Inscribe a similar copy of a concyclic quadrangle");
  add_plane(inscribe_cmd, true);
  inscribe_cmd->add_option("--svg", c.svg_out, "Figure path");
  CLI::App* trace_cmd = app.add_subcommand("trace", "Trace the triangle variety Z");
  add_plane(trace_cmd, true);
  trace_cmd->add_option("--svg", c.svg_out, "Figure of the (t, s) cylinder");
  CLI::App* areas_cmd = app.add_subcommand("areas", "Green areas of the vertex sweeps");
  add_plane(areas_cmd, true);
  CLI::App* osculate_cmd = app.add_subcommand("osculate", "Osculating-circle chords of a convex curve");
  add_plane(osculate_cmd, false);
  osculate_cmd->add_option("--alpha", c.alpha, "Angular measure in radians, in (0, 2 pi)")->required();
  osculate_cmd->add_option("--svg", c.svg_out, "Figure path");

  CLI::App* sphere_cmd = app.add_subcommand("sphere-ce", "Counterexample on the sphere");
  sphere_cmd->require_subcommand(1);
  CLI::App* build_cmd = sphere_cmd->add_subcommand("build", "Build and verify the counterexample");
  build_cmd->add_option("--params", c.params, "Parameter JSON")->check(CLI::ExistingFile);
  build_cmd->add_option("--out,--json", c.json_out, "Report path (default stdout)");
  build_cmd->add_option("--seed", c.seed, "Seed for random check points");
  CLI::App* spread_cmd = sphere_cmd->add_subcommand("spread", "Minimize the spread over rotations");
  spread_cmd->add_option("--a", c.a, "Geodesic distance a in radians")->required();
  spread_cmd->add_option("--b", c.b, "Geodesic distance b in radians")->required();
  spread_cmd->add_option("--starts", c.starts, "Number of multistart rotations")->check(CLI::PositiveNumber);
  spread_cmd->add_option("--seed", c.seed, "Seed for the start rotations");
  spread_cmd->add_option("--field", c.field, "counterexample or linear-z")
      ->check(CLI::IsMember({"counterexample", "linear-z"}));
  spread_cmd->add_option("--params", c.params, "Parameter JSON")->check(CLI::ExistingFile);
  spread_cmd->add_option("--json,--out", c.json_out, "Report path (default stdout)");

  std::vector<std::string> reversed_args(args.rbegin(), args.rend());
  try {
    app.parse(reversed_args);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return ok;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return ok;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return validation;
  }

  try {
    json doc;
    int code = ok;
    if (inscribe_cmd->parsed()) {
      doc = do_inscribe(c);
    } else if (trace_cmd->parsed()) {
      doc = do_trace(c);
    } else if (areas_cmd->parsed()) {
      doc = do_areas(c);
    } else if (osculate_cmd->parsed()) {
      doc = do_osculate(c);
    } else if (build_cmd->parsed()) {
      bool passed = false;
      doc = do_sphere_build(c, passed);
      if (!passed) {
        err << "error: the counterexample failed verification\n";
        code = numerical;
      }
    } else {
      doc = do_sphere_spread(c);
    }
    emit(doc, c.json_out, out);
    return code;
  } catch (const GeometryError& e) {
    err << "error: " << e.what() << "\n";
    const int code = exit_code(e.kind());
    if (code == numerical && !c.json_out.empty()) {
      try {
        io::write_json(c.json_out, {{"error", std::string(to_string(e.kind()))}, {"message", e.what()}});
      } catch (const std::exception&) {
      }
    }
    return code;
  } catch (const io::json::exception& e) {
    err << "error: malformed input: " << e.what() << "\n";
    return validation;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return numerical;
  }
}

}  // namespace makeev::cli
