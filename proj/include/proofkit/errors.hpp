#pragma once

#include <stdexcept>
#include <string>

namespace proofkit {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ParseError : Error {
  using Error::Error;
};

struct ValidationError : Error {
  using Error::Error;
};

struct UnboundMetaVar : Error {
  using Error::Error;
};

struct UnknownObject : Error {
  using Error::Error;
};

struct IllFormedRule : Error {
  using Error::Error;
};

struct NameClash : Error {
  using Error::Error;
};

struct MissingMimicry : Error {
  using Error::Error;
};

struct SignatureMismatch : Error {
  using Error::Error;
};

struct BudgetExceeded : Error {
  using Error::Error;
};

}  // namespace proofkit
