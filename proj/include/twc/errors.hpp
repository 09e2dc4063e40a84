#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace twc {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class ShapeMismatch : public Error {
 public:
  using Error::Error;
};

class GridMismatch : public Error {
 public:
  using Error::Error;
};

// Linear-domain result does not fit in a double.
class RangeError : public Error {
 public:
  using Error::Error;
};

class UnsupportedRange : public Error {
 public:
  using Error::Error;
};

class ResolutionError : public Error {
 public:
  ResolutionError(const std::string& what, std::size_t required_nodes)
      : Error(what + " (required nodes: " + std::to_string(required_nodes) + ")"),
        required_nodes_(required_nodes) {}
  std::size_t required_nodes() const noexcept { return required_nodes_; }

 private:
  std::size_t required_nodes_;
};

// Non-negligible mass outside the representable region (grid box or index cutoff).
class TruncationError : public Error {
 public:
  TruncationError(const std::string& what, double fraction)
      : Error(what + " (fraction: " + std::to_string(fraction) + ")"), fraction_(fraction) {}
  double fraction() const noexcept { return fraction_; }

 private:
  double fraction_;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace twc
