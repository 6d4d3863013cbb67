#include "makeev/io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "makeev/error.hpp"

namespace makeev::io {

namespace {

[[noreturn]] void invalid(const std::string& what) { throw GeometryError(ErrorKind::InvalidInput, what); }

double number(const json& v, const std::string& what) {
  if (!v.is_number()) invalid(what + " must be a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) invalid(what + " must be finite");
  return x;
}

cplx point(const json& v, const std::string& what) {
  if (!v.is_array() || v.size() != 2) invalid(what + " must be a [re, im] pair");
  return {number(v[0], what), number(v[1], what)};
}

void check_finite(const json& doc, const std::string& where) {
  if (doc.is_number_float() && !std::isfinite(doc.get<double>())) invalid("non-finite number at " + where);
  if (doc.is_array())
    for (std::size_t i = 0; i < doc.size(); ++i) check_finite(doc[i], where + "[" + std::to_string(i) + "]");
  if (doc.is_object())
    for (auto it = doc.begin(); it != doc.end(); ++it) check_finite(it.value(), where + "." + it.key());
}

}  // namespace

PlaneCurve curve_from_json(const json& spec, const CurveOptions& options) {
  if (!spec.is_object()) invalid("curve spec must be a JSON object");
  std::optional<PlaneCurve> curve;
  if (spec.contains("fourier")) {
    const json& arr = spec["fourier"];
    if (!arr.is_array()) invalid("\"fourier\" must be an array of [re, im] pairs");
    std::vector<cplx> coeffs;
    for (std::size_t i = 0; i < arr.size(); ++i) coeffs.push_back(point(arr[i], "fourier[" + std::to_string(i) + "]"));
    curve.emplace(std::move(coeffs), spec.value("name", std::string("fourier")), options);
  } else if (spec.contains("circle")) {
    const json& c = spec["circle"];
    if (c.is_object())
      curve = PlaneCurve::circle(number(c.at("radius"), "circle radius"),
                                 c.contains("center") ? point(c["center"], "circle center") : cplx(0.0), options);
    else
      curve = PlaneCurve::circle(number(c, "circle radius"), 0.0, options);
  } else if (spec.contains("ellipse")) {
    const json& e = spec["ellipse"];
    if (e.is_object())
      curve = PlaneCurve::ellipse(number(e.at("a"), "ellipse a"), number(e.at("b"), "ellipse b"), options);
    else if (e.is_array() && e.size() == 2)
      curve = PlaneCurve::ellipse(number(e[0], "ellipse a"), number(e[1], "ellipse b"), options);
    else
      invalid("\"ellipse\" must be [a, b] or {\"a\": a, \"b\": b}");
  } else {
    invalid("curve spec needs one of \"fourier\", \"circle\", \"ellipse\"");
  }
  if (spec.contains("perturb")) {
    const json& p = spec["perturb"];
    if (!p.is_object()) invalid("\"perturb\" must be an object {\"magnitude\", \"seed\"}");
    const double magnitude = number(p.at("magnitude"), "perturb magnitude");
    const auto seed = p.value("seed", std::uint64_t{0});
    curve = perturb(*curve, magnitude, seed);
  }
  validate(*curve);
  return *curve;
}

Quadrangle quadrangle_from_json(const json& spec, const QuadTolerances& tol) {
  if (!spec.is_object() || !spec.contains("points")) invalid("quadrangle spec must be {\"points\": [[re, im] x 4]}");
  const json& pts = spec["points"];
  if (!pts.is_array() || pts.size() != 4) invalid("quadrangle needs exactly four points");
  return Quadrangle(point(pts[0], "points[0]"), point(pts[1], "points[1]"), point(pts[2], "points[2]"),
                    point(pts[3], "points[3]"), tol);
}

json read_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) invalid("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    invalid("malformed JSON in " + path.string() + ": " + e.what());
  }
}

std::string dump(const json& doc) {
  check_finite(doc, "$");
  return doc.dump(2) + "\n";
}

void write_json(const std::filesystem::path& path, const json& doc) {
  const std::string text = dump(doc);
  std::ofstream out(path, std::ios::binary);
  if (!out) invalid("cannot write " + path.string());
  out << text;
}

json to_json(cplx z) { return json::array({z.real(), z.imag()}); }

json to_json(const SimilarityMap& sigma) {
  return {{"alpha", to_json(sigma.alpha)}, {"beta", to_json(sigma.beta)}, {"scale", std::abs(sigma.alpha)}};
}

json to_json(const PlaneCurve& curve) {
  json coeffs = json::array();
  for (const cplx& c : curve.coeffs()) coeffs.push_back(to_json(c));
  return {{"name", curve.name()}, {"fourier", coeffs}};
}

json to_json(const VarietyPath& path) {
  json samples = json::array();
  for (const auto& p : path.samples) samples.push_back(json::array({p.t, p.s}));
  const char* kind = path.kind == PathKind::periodic ? "periodic" : (path.kind == PathKind::loop ? "loop" : "open");
  return {{"period_shift", path.period_shift}, {"kind", kind}, {"s_margin", path.s_margin}, {"samples", samples}};
}

json to_json(const AreaReport& a) {
  return {{"S_a", a.s_a}, {"S_b", a.s_b}, {"S_c", a.s_c}, {"S_d", a.s_d}, {"S_C", a.s_curve}, {"max_deviation", a.max_deviation}};
}

json to_json(const InscriptionReport& r) {
  json sims = json::array();
  for (const auto& s : r.similarities) sims.push_back(to_json(s));
  json pairs = json::array();
  for (const auto& [s1, s2] : r.pairs) pairs.push_back(json::array({to_json(s1), to_json(s2)}));
  json comps = json::array();
  for (const auto& c : r.components) {
    json hits = json::array();
    for (const auto& h : c.inscriptions.hits)
      hits.push_back({{"u", h.u}, {"t", h.at.t}, {"s", h.at.s}, {"residual", h.residual}, {"sigma", to_json(h.sigma)}});
    json co = json::array();
    for (const auto& x : c.coincidences)
      co.push_back({{"u1", x.u1}, {"u2", x.u2}, {"point", to_json(x.point)}, {"gap", x.gap}, {"loop_area", x.loop_area},
                    {"residual", x.residual}, {"first", to_json(x.first)}, {"second", to_json(x.second)}});
    comps.push_back({{"period_shift", c.period_shift},
                     {"s_margin", c.s_margin},
                     {"inscriptions", hits},
                     {"continuum", c.inscriptions.continuum},
                     {"coincidences", co},
                     {"areas", to_json(c.areas)},
                     {"rotation_number", c.rotation},
                     {"fourth_rotation_number", c.fourth_rotation}});
  }
  return {{"alternative", r.alternative},
          {"similarities", sims},
          {"pairs", pairs},
          {"continuum", r.continuum},
          {"residual", r.residual},
          {"areas", to_json(r.areas)},
          {"rotation_number", r.rotation_number},
          {"fourth_rotation_number", r.fourth_rotation_number},
          {"perturbation_used", r.perturbation_used},
          {"component_count", r.component_count},
          {"components", comps}};
}

json to_json(const ChordSet& chords) {
  json sols = json::array();
  for (const auto& s : chords.solutions)
    sols.push_back({{"a_t", s.a_t}, {"a", to_json(s.a)}, {"b", to_json(s.b)}, {"alpha", s.alpha}, {"residual", s.residual}});
  return {{"continuum", chords.continuum}, {"count", chords.solutions.size()}, {"solutions", sols}};
}

json to_json(const CheckResult& c) {
  return {{"name", c.name}, {"pass", c.pass}, {"worst", c.worst}, {"bound", c.bound}, {"samples", c.samples}};
}

json to_json(const ObstructionReport& r) {
  json checks = json::array();
  for (const auto& c : r.checks) checks.push_back(to_json(c));
  return {{"pass", r.pass()}, {"checks", checks}, {"critical_points", r.critical_points}, {"critical_classes", r.critical_classes}};
}

json to_json(const BuildReport& r) {
  json checks = json::array();
  for (const auto& c : r.checks) checks.push_back(to_json(c));
  return {{"pass", r.pass()}, {"checks", checks}};
}

json to_json(const SpreadResult& r) {
  json rot = json::array();
  for (int i = 0; i < 3; ++i) rot.push_back(json::array({r.rotation(i, 0), r.rotation(i, 1), r.rotation(i, 2)}));
  return {{"min_spread", r.value}, {"rotation", rot}, {"start_index", r.start}};
}

BumpSpec bump_spec_from_json(const json& p, BumpSpec s) {
  if (!p.is_object()) invalid("sphere parameters must be a JSON object");
  auto take = [&](const char* key, double& field) {
    if (p.contains(key)) field = number(p[key], key);
  };
  take("eps", s.eps);
  take("amp_phi", s.amp_phi);
  take("amp_psi", s.amp_psi);
  take("global_scale", s.global_scale);
  take("phi_exponent", s.phi_exponent);
  take("miss_height", s.miss_height);
  take("miss_width", s.miss_width);
  take("band", s.band);
  return s;
}

}  // namespace makeev::io
