#pragma once

#include <stdexcept>
#include <string>

namespace lassokit {

// Error categories. The CLI maps each one onto a stable exit code.
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A documented precondition does not hold (non-mono subobject, bad bounds...).
struct PreconditionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SchemaMismatchError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A decomposition was expected to have a colimit isomorphic to a given
// instance and does not.
struct ColimitMismatchError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct BoundExceededError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// An invariant the library itself is responsible for was violated.
struct InternalError : std::logic_error {
  using std::logic_error::logic_error;
};

}  // namespace lassokit
