#pragma once

#include <stdexcept>
#include <string>

namespace attctl {

/// Base class for all library errors.
struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// NaN/Inf encountered where finite values are required.
struct NonFiniteError : Error {
  using Error::Error;
};

/// Pitch approached the Euler kinematic singularity (|cos theta| below guard).
struct SingularityError : Error {
  using Error::Error;
};

/// Incompatible matrix/system dimensions.
struct DimensionError : Error {
  using Error::Error;
};

/// Feedback interconnection is ill-posed (feedthrough loop not invertible).
struct AlgebraicLoopError : Error {
  using Error::Error;
};

/// Hamiltonian has eigenvalues on the imaginary axis; no stabilizing CARE solution.
struct ImaginaryAxisEigError : Error {
  using Error::Error;
};

/// CARE has no stabilizing solution for the given data.
struct NoStabilizingSolutionError : Error {
  using Error::Error;
};

/// Generalized plant violates the synthesis regularity assumptions.
struct RegularityError : Error {
  using Error::Error;
};

/// No feasible gamma in the bisection bracket.
struct BisectionFailure : Error {
  using Error::Error;
};

/// Bad configuration document; message names the offending key path.
struct ConfigError : Error {
  using Error::Error;
};

}  // namespace attctl
