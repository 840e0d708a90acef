#pragma once
// Typed failure modes shared across the library. The CLI maps these to
// exit code 2 (caller mistakes); anything else is an internal error.

#include <stdexcept>
#include <string>

namespace aitlab {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Undecodable or truncated encoded data.
struct MalformedCode : Error {
  using Error::Error;
};

// Structurally valid input that violates an operation's contract.
struct InvalidInput : Error {
  using Error::Error;
};

// A decoded quantity exceeds the configured desk-scale limits.
struct TooLarge : Error {
  using Error::Error;
};

// Codeword request that no prefix-free extension can satisfy.
struct Infeasible : Error {
  using Error::Error;
};

// A precondition on a budget or split point fails; pick a looser one.
struct BudgetExceeded : Error {
  using Error::Error;
};

// A witness object does not certify what it claims.
struct InvalidWitness : Error {
  using Error::Error;
};

}  // namespace aitlab
