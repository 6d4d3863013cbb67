#include "makeev/error.hpp"

namespace makeev {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidInput: return "InvalidInput";
    case ErrorKind::DegenerateTangent: return "DegenerateTangent";
    case ErrorKind::PointOnCurve: return "PointOnCurve";
    case ErrorKind::PerturbationBreaksSimplicity: return "PerturbationBreaksSimplicity";
    case ErrorKind::DegenerateBase: return "DegenerateBase";
    case ErrorKind::CollinearPoints: return "CollinearPoints";
    case ErrorKind::NotConcyclic: return "NotConcyclic";
    case ErrorKind::NoSeedsFound: return "NoSeedsFound";
    case ErrorKind::SingularPoint: return "SingularPoint";
    case ErrorKind::StepCollapse: return "StepCollapse";
    case ErrorKind::NonGenericSlice: return "NonGenericSlice";
    case ErrorKind::TheoremViolation: return "TheoremViolation";
    case ErrorKind::FlatPoint: return "FlatPoint";
    case ErrorKind::NotConvex: return "NotConvex";
    case ErrorKind::DegenerateAllOn: return "DegenerateAllOn";
    case ErrorKind::BadOrdering: return "BadOrdering";
    case ErrorKind::ConvexityPatternFailed: return "ConvexityPatternFailed";
    case ErrorKind::ZeroSetMismatch: return "ZeroSetMismatch";
    case ErrorKind::BadDistance: return "BadDistance";
    case ErrorKind::NotRotation: return "NotRotation";
  }
  return "Unknown";
}

}  // namespace makeev
