#pragma once

#include <stdexcept>
#include <string>

namespace qca {

// Malformed layouts, programs, or serialized inputs.
class LayoutError : public std::runtime_error {
public:
  explicit LayoutError(const std::string& msg) : std::runtime_error(msg) {}
};

// An operation was called outside its stated precondition
// (e.g. readout on a failed measurement outcome).
class PreconditionError : public std::runtime_error {
public:
  explicit PreconditionError(const std::string& msg) : std::runtime_error(msg) {}
};

// The pointer of the abstract machine left the modeled range.
class RangeError : public std::runtime_error {
public:
  explicit RangeError(const std::string& msg) : std::runtime_error(msg) {}
};

// An iterative solver failed to reach the requested tolerance.
// Carries enough state to diagnose the failure.
class NumericalError : public std::runtime_error {
public:
  NumericalError(const std::string& msg, double achieved, double requested)
      : std::runtime_error(msg), achieved_tolerance(achieved), requested_tolerance(requested) {}
  double achieved_tolerance;
  double requested_tolerance;
};

// A configured hard cap (basis dimension, memory) would be exceeded.
class ResourceLimitError : public std::runtime_error {
public:
  ResourceLimitError(const std::string& msg, std::size_t needed, std::size_t cap)
      : std::runtime_error(msg), needed(needed), cap(cap) {}
  std::size_t needed;
  std::size_t cap;
};

}  // namespace qca
