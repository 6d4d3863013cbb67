#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace makeev {

enum class ErrorKind {
  InvalidInput,
  DegenerateTangent,
  PointOnCurve,
  PerturbationBreaksSimplicity,
  DegenerateBase,
  CollinearPoints,
  NotConcyclic,
  NoSeedsFound,
  SingularPoint,
  StepCollapse,
  NonGenericSlice,
  TheoremViolation,
  FlatPoint,
  NotConvex,
  DegenerateAllOn,
  BadOrdering,
  ConvexityPatternFailed,
  ZeroSetMismatch,
  BadDistance,
  NotRotation,
};

std::string_view to_string(ErrorKind kind) noexcept;

// Every failure raised by the library carries a kind so callers (and the CLI
// exit-code mapping) can branch without parsing messages.
class GeometryError : public std::runtime_error {
 public:
  GeometryError(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace makeev
