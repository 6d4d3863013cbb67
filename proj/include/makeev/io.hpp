#pragma once

#include <filesystem>
#include <json.hpp>
#include <string>

#include "makeev/inscriber.hpp"
#include "makeev/osculating.hpp"
#include "makeev/sphere.hpp"

namespace makeev::io {

using json = nlohmann::json;

// Curve specs:
//   {"fourier": [[re, im], ...]}            c_{-K} .. c_K
//   {"circle": R} or {"circle": {"radius": R, "center": [x, y]}}
//   {"ellipse": [a, b]} or {"ellipse": {"a": a, "b": b}}
// with optional "name" and "perturb": {"magnitude": m, "seed": s}.
PlaneCurve curve_from_json(const json& spec, const CurveOptions& options = {});
// Quadrangle spec: {"points": [[re, im] x 4]}.
Quadrangle quadrangle_from_json(const json& spec, const QuadTolerances& tol = {});

json read_json(const std::filesystem::path& path);
// Throws InvalidInput if any number is NaN or infinite.
void write_json(const std::filesystem::path& path, const json& doc);
std::string dump(const json& doc);

json to_json(cplx z);
json to_json(const SimilarityMap& sigma);
json to_json(const PlaneCurve& curve);
json to_json(const VarietyPath& path);
json to_json(const AreaReport& areas);
json to_json(const InscriptionReport& report);
json to_json(const ChordSet& chords);
json to_json(const CheckResult& check);
json to_json(const ObstructionReport& report);
json to_json(const BuildReport& report);
json to_json(const SpreadResult& result);

BumpSpec bump_spec_from_json(const json& params, BumpSpec base = {});

}  // namespace makeev::io
