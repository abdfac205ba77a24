#pragma once

#include <stdexcept>
#include <string>

namespace heisenwave {

/// Two fields that must share a grid do not.
class GridMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The frequency quadrature of the heat kernel failed its refinement check.
class QuadratureError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or unreadable HWF1 / manifest data.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace heisenwave
