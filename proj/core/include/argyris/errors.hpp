#pragma once

#include <stdexcept>
#include <string>

namespace argyris {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Non-conforming connectivity or malformed mesh input.
struct TopologyError : Error {
  using Error::Error;
};

/// Degenerate or inverted triangles.
struct GeometryError : Error {
  using Error::Error;
};

/// Unsupported combination of options or boundary labels.
struct ConfigurationError : Error {
  using Error::Error;
};

/// Factorization failure, breakdown or divergence of an iterative solver.
struct SolverError : Error {
  using Error::Error;
};

/// Caller-side contract violation (wrong mesh, bad index, misplaced load...).
struct PreconditionError : Error {
  using Error::Error;
};

}  // namespace argyris
