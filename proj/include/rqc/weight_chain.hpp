#pragma once

#include <array>
#include <cstdint>
#include <utility>
#include <vector>

#include "rqc/rational.hpp"
#include "rqc/rng.hpp"
#include "rqc/stats.hpp"

namespace rqc {

// One row of the birth-death chain on Pauli weights.
struct WeightRow {
  double down = 0.0;
  double stay = 1.0;
  double up = 0.0;
};

// Birth-death chain on weights {0..n}:
//   up(l)   = 6 l (n-l)   / (5 n (n-1))
//   down(l) = 2 l (l-1)   / (5 n (n-1))
//   stay(l) = 1 - 2 l (3n - 2l - 1) / (5 n (n-1))
// Weight 0 is absorbing and unreachable from the nonzero sector (down(1)=0).
// Rows are assembled in exact rationals and rounded to double once.
class WeightChain {
 public:
  static WeightChain build(int n);

  // Exact (down, stay, up) for one row; sums to 1 as a rational identity.
  static std::array<Rational, 3> exact_row(int n, int l);

  int n() const { return n_; }
  const WeightRow& row(int l) const {
    return rows_[static_cast<std::size_t>(l)];
  }

  // Stationary law pi(k) = 3^k C(n,k) / (4^n - 1) on {1..n}; entry 0 is 0.
  // Evaluated in log space so it stays finite for large n.
  std::vector<double> stationary() const;

  // Row of P^t from a point mass at `start`: t tridiagonal vector products.
  std::vector<double> evolve_exact(int start, std::int64_t steps) const;

  int step(int l, Rng& rng) const;
  int run_trajectory(int start, std::int64_t steps, Rng& rng) const;

  // One move of the chain conditioned on moving, plus the geometric number
  // of stays that preceded it. Requires up(l) + down(l) > 0.
  std::pair<int, std::uint64_t> accelerated_step(int l, Rng& rng) const;

 private:
  int n_ = 0;
  std::vector<WeightRow> rows_;
};

// Hitting-time histogram for T = min{ t >= 1 : X_t crosses `target` }
// (>= for an upward target, <= for a downward one). Trials still short of
// the target at `deadline` are counted as censored, never dropped.
struct HittingStats {
  int start = 0;
  int target = 0;
  std::uint64_t trials = 0;
  std::uint64_t censored = 0;
  std::uint64_t deadline = 0;
  std::uint64_t master_seed = 0;
  Histogram times;

  void merge(const HittingStats& o) {
    trials += o.trials;
    censored += o.censored;
    times.merge(o.times);
  }
};

// Default censoring deadline: 50 n log2(n)^2.
std::uint64_t default_hitting_deadline(int n);

HittingStats hitting_time_mc(const WeightChain& chain, int start, int target,
                             std::uint64_t trials, std::uint64_t deadline,
                             std::uint64_t seed, int threads = 0);

// r- = floor((3/4 - delta) n), r+ = ceil((3/4 + delta) n), delta in (0,1/16).
// drift_ok reports whether the up/down ratio stays >= 1 + 2 delta strictly
// below r- and the mirrored condition holds strictly above r+.
struct ReferencePoints {
  int r_minus = 0;
  int r_plus = 0;
  bool drift_ok = false;
};
ReferencePoints reference_points(int n, double delta);

// Compares P^t(start, k) against 4^{delta n} pi(k) plus a user slack term
// c_poly / ((3-eta)^start * C(n,start) * n^poly_power), all in log space.
struct BoundReport {
  double lhs = 0.0;
  double log2_lhs = 0.0;
  double log2_rhs = 0.0;
  bool pass = false;
};
BoundReport check_theorem_bound(int n, int start, int k, std::int64_t t,
                                double delta, double c_poly, double eta = 0.5,
                                int poly_power = 1);

// log2 of C(n,k) via lgamma; exactness is not needed, only stable magnitude.
double log2_binom(int n, int k);
// Binary entropy in bits; h(0) = h(1) = 0.
double binary_entropy(double a);

}  // namespace rqc
