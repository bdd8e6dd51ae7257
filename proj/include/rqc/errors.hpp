#pragma once

#include <stdexcept>
#include <string>

namespace rqc {

// Invalid parameter values (bad probabilities, malformed permutations, ...).
struct domain_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Request exceeds a hard size guard (dense matrices, string-space tables).
struct capacity_error : std::length_error {
  using std::length_error::length_error;
};

// Rejection sampling gave up after the configured number of attempts.
struct rejection_cap_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace rqc
