#pragma once

#include <stdexcept>
#include <string>

namespace framedvs {

// Malformed input: bad config values, broken invariants, parse failures.
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// The requested schedule cannot exist (never-schedulable system,
// nonpositive horizon, speed above f_M).
class Infeasible : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An enumeration (convolution grid, exact expectation, oracle state set)
// grew beyond its configured cap.
class CapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace framedvs
