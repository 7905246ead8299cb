#pragma once

#include <stdexcept>
#include <string>

namespace medsolve {

/// Base class for all errors raised by this library.
struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Input dimensions are inconsistent (matrix shapes, vector lengths).
struct DimensionMismatch : Error {
  using Error::Error;
};

/// A simplex pivot fell below the float stability threshold. Callers may
/// retry in rational mode.
struct NumericalBreakdown : Error {
  using Error::Error;
};

/// A plan selection lies outside the optimal-action value interval at its belief.
struct ObedienceViolation : Error {
  using Error::Error;
};

/// Outcome table rows do not sum to the stated prior.
struct InconsistentPrior : Error {
  using Error::Error;
};

/// Requested prior cannot be represented by the given candidate beliefs.
struct PriorOffGridHull : Error {
  using Error::Error;
};

/// No constant-value distribution at the requested level has the prior as barycenter.
struct LevelNotAttainable : Error {
  using Error::Error;
};

/// The improving-mixture construction could not extend past the prior (alpha <= 1).
struct ConstructionFailed : Error {
  using Error::Error;
};

/// Edge value never returns to its base-state level inside (0, 1].
struct CrossingNotFound : Error {
  using Error::Error;
};

/// A receiver-side value was requested from a moment game that does not carry one.
struct MissingReceiverValue : Error {
  using Error::Error;
};

/// Operation defined only for two-state games.
struct NotBinary : Error {
  using Error::Error;
};

/// Operation defined only for single-valued (moment) sender values.
struct NotSingletonValued : Error {
  using Error::Error;
};

/// Named fixture is not registered.
struct UnknownFixture : Error {
  using Error::Error;
};

/// An internal invariant failed; indicates a bug, not bad input.
struct InternalError : Error {
  using Error::Error;
};

}  // namespace medsolve
