#pragma once

#include <stdexcept>
#include <string>

namespace nsc {

// Bad call-site input (length mismatch, out-of-range parameter, ...).
class ArgumentError : public std::invalid_argument {
 public:
  explicit ArgumentError(const std::string& what) : std::invalid_argument(what) {}
};

// A parameter set violates one of the security preconditions.  The violated
// inequality is kept as a separate field so front ends can surface it.
class FeasibilityError : public std::runtime_error {
 public:
  FeasibilityError(std::string inequality, const std::string& detail)
      : std::runtime_error(inequality + ": " + detail), inequality_(std::move(inequality)) {}

  const std::string& inequality() const { return inequality_; }

 private:
  std::string inequality_;
};

// Bounded-distance decoding was asked for a word outside its radius.
class DecodingRadiusError : public std::runtime_error {
 public:
  explicit DecodingRadiusError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace nsc
