#pragma once

#include <stdexcept>
#include <string>

namespace qfreq {

/// Bad input shape: mismatched multiplicity or ambient dimension.
struct DimensionMismatchError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Argument outside the documented domain (annulus constraints, bad config).
struct DomainError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// A numerical procedure failed to converge or produced unusable values.
struct NumericError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Evaluation requested at a point where the branch derivatives degenerate.
struct SingularEvaluationError : NumericError {
  using NumericError::NumericError;
};

/// Boundary mass too small for the frequency quotient to be meaningful.
struct DegenerateHeightError : NumericError {
  using NumericError::NumericError;
};

/// Rescaling requested where the ball energy vanishes.
struct DegenerateRescalingError : NumericError {
  using NumericError::NumericError;
};

/// Discriminant vanishes identically: the curve has a repeated component.
struct DegenerateCurveError : NumericError {
  using NumericError::NumericError;
};

/// A stated precondition does not hold for the given input.
struct PreconditionError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Mesh too coarse for the requested query.
struct ResolutionError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// A contract the implementation itself guarantees was violated.
struct InternalLogicError : std::logic_error {
  using std::logic_error::logic_error;
};

}  // namespace qfreq
