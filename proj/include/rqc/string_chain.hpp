#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "rqc/pauli.hpp"
#include "rqc/rational.hpp"
#include "rqc/rng.hpp"

namespace rqc {

// --- Sampling form of the chain on Pauli strings -------------------------
//
// One step: draw an ordered pair (i,j), i != j, uniformly. If both sites
// carry the identity the string is unchanged; otherwise the pair is replaced
// by a uniform draw from the 15 nonzero two-site labels.
void q_step(PauliString& p, Rng& rng);

// Weight-preserving part: with probability 1/2 locally rerandomize the
// nonzero symbols of the pair keeping its support pattern, with probability
// 1/2 do the same and then swap the two sites.
void r_tilde_step(PauliString& p, Rng& rng);

// Weight-changing part: a weight-1 pair becomes a uniform weight-2 label;
// a weight-2 pair becomes weight-1 (prob 2/3, uniform over 6) or weight-2
// (prob 1/3, uniform over 9).
void q_tilde_step(PauliString& p, Rng& rng);

// Draw T1 ~ Binomial(t, 3/5), run t1 weight-changing steps, then t - T1
// weight-preserving ones. The output law equals t direct steps.
PauliString two_phase_sample(const PauliString& mu, std::int64_t t, Rng& rng);

// --- Exact matrices (small n) ---------------------------------------------

enum class StringKernel { Full, WeightPreserving, WeightChanging };

// Sparse row-major transition matrix over all 4^n strings, assembled in
// exact rationals (denominators divide 90 n (n-1)) with a double mirror.
class StringMatrix {
 public:
  static StringMatrix build(int n, StringKernel kernel = StringKernel::Full);

  int n() const { return n_; }
  std::uint64_t dim() const { return 1ull << (2 * n_); }
  StringKernel kernel() const { return kernel_; }

  std::span<const std::pair<std::uint32_t, Rational>> exact_row(
      std::uint32_t mu) const {
    return rows_[mu];
  }
  // Row of the double mirror as a dense vector.
  std::vector<double> row_dense(std::uint32_t mu) const;
  // mu-row of the t-th power (sparse row-vector products).
  std::vector<double> power_row(std::uint32_t mu, std::int64_t t) const;
  // Dense double copy; guarded at n <= 4.
  std::vector<std::vector<double>> dense() const;

 private:
  int n_ = 0;
  StringKernel kernel_ = StringKernel::Full;
  std::vector<std::vector<std::pair<std::uint32_t, Rational>>> rows_;
};

// Max entrywise |R~ Q~ - Q~ R~| over the full string space; n <= 4.
double verify_commutation(int n);

// --- Support-intersection chain -------------------------------------------

// Size of the overlap between the current support and a reference support,
// both of weight k on n sites. Birth-death with hypergeometric stationary law.
struct IntersectionChain {
  int n = 0;
  int k = 0;
  int i = 0;

  IntersectionChain(int n_sites, int weight, int intersection);
};
IntersectionChain intersection_step(IntersectionChain state, Rng& rng);

// --- Shell equidistribution -----------------------------------------------

// Chi-square comparison of the conditional law on each weight shell against
// uniform, over `trials` endpoint samples of t direct chain steps from mu.
// Cells are merged until the expected count per cell reaches 5; shells with
// fewer than 10 samples are reported untested.
struct ShellReport {
  int k = 0;
  std::uint64_t shell_size = 0;
  std::uint64_t samples = 0;
  double chi2 = 0.0;
  int dof = 0;
  double pvalue = 1.0;
  bool tested = false;
};
std::vector<ShellReport> empirical_uniformity(const PauliString& mu,
                                              std::int64_t t,
                                              std::uint64_t trials,
                                              std::uint64_t seed,
                                              int threads = 0);

// Endpoint histogram over all 4^n strings (n <= 10), for reuse in tests.
std::vector<std::uint64_t> endpoint_histogram(const PauliString& mu,
                                              std::int64_t t,
                                              std::uint64_t trials,
                                              std::uint64_t seed,
                                              int threads = 0);

// Chi-square of observed counts against equal cell probabilities, with
// cell merging; returns (chi2, dof, pvalue).
struct ChiSquare {
  double chi2 = 0.0;
  int dof = 0;
  double pvalue = 1.0;
};
ChiSquare chi_square_uniform(std::span<const std::uint64_t> counts);

}  // namespace rqc
