#pragma once

#include <stdexcept>
#include <string>

namespace ulln {

/// Raised when an operation is asked to work in a dimension it cannot handle
/// (grid and quadrature oracles are exponential in p).
class UnsupportedDimension : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// File-system or stream failure while reading or writing artifacts.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace ulln
