#pragma once

#include <stdexcept>
#include <string>

namespace omegacore {

/// Contract violation or malformed input.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A configured size cap was exceeded; callers treat the answer as unknown.
class CapacityError : public Error {
 public:
  using Error::Error;
};

}  // namespace omegacore
