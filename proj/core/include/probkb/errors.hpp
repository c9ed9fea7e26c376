#pragma once

#include <stdexcept>
#include <string>

namespace probkb {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed input text (KB files, queries, rationals).
struct ParseError : Error {
  using Error::Error;
};

// Ill-formed in-memory structures (bad atom index, mismatched tables).
struct StructuralError : Error {
  using Error::Error;
};

// A configured cap was exceeded (atom cap, pivot limit, subset-search cap,
// generation budget).
struct ResourceLimitError : Error {
  using Error::Error;
};

// Caller violated a documented precondition (e.g. querying z-entailment of a
// KB that is not g-coherent).
struct PreconditionError : Error {
  using Error::Error;
};

// The coherent-p search found no g-coherent augmentation at all.
struct InconsistencyError : Error {
  using Error::Error;
};

}  // namespace probkb
