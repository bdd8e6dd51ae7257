#pragma once

#include <cstdint>
#include <vector>

#include "rqc/rng.hpp"

namespace rqc {

// Random walk on {-1, 0, 1, ..., a} absorbed at -1 and a, started at 0.
// Forward probability is p_minus at sites <= 0 and p_plus[i-1] at site i.
struct RuinInstance {
  int a = 1;
  double p_minus = 0.0;
  std::vector<double> p_plus;  // size a-1

  // Hypothesis of the closed-form solver: every probability > 1/2.
  void validate_strict() const;
  // Linear-solve / MC oracles accept any probabilities in (0,1).
  void validate_relaxed() const;
};

// Probability of hitting -1 before a, by the closed form
//   1 / (1 + alpha_- * prod alpha_+(j) / (1 + sum_i prod_{j>=i} alpha_+(j)))
// with alpha = p/(1-p), evaluated by a backward recurrence on the ratio
// prod/(1+sum) so nothing overflows for long chains.
double ruin_probability(const RuinInstance& inst);

// Independent oracle: solves the absorbing-chain tridiagonal system
// P_i = p(i) P_{i+1} + (1-p(i)) P_{i-1}, P_{-1} = 1, P_a = 0 directly.
double ruin_exact_linear(const RuinInstance& inst);

// Second oracle: simulate walks to absorption.
struct RuinEstimate {
  double estimate = 0.0;
  double stderr_est = 0.0;
  std::uint64_t trials = 0;
};
RuinEstimate ruin_mc(const RuinInstance& inst, std::uint64_t trials,
                     std::uint64_t seed, int threads = 0);

// Full solution P_{-1..a} of the linear system (P[-1] stored at index 0);
// used by the telescoping-identity checks.
std::vector<double> ruin_linear_profile(const RuinInstance& inst);

}  // namespace rqc
