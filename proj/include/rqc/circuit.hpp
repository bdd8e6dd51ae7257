#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "rqc/rng.hpp"
#include "rqc/stats.hpp"

namespace rqc {

// An unordered pair of distinct qubits, stored with a < b.
struct Gate {
  int a = 0;
  int b = 1;
  bool touches(int q) const { return q == a || q == b; }
  bool overlaps(const Gate& o) const {
    return touches(o.a) || touches(o.b);
  }
  bool operator==(const Gate&) const = default;
};

// An ordered sequence of two-qubit gates on n qubits.
class Circuit {
 public:
  Circuit(int n, std::vector<Gate> gates);

  int n() const { return n_; }
  std::span<const Gate> gates() const { return gates_; }
  std::int64_t size() const { return static_cast<std::int64_t>(gates_.size()); }

 private:
  int n_ = 0;
  std::vector<Gate> gates_;
};

// Greedy leveling: a gate joins the current level unless it shares a qubit
// with a gate already there, in which case it opens the next level. Levels
// are consecutive runs of the original gate order; level l is
// gates[offsets[l] .. offsets[l+1]).
struct Levels {
  std::vector<std::uint64_t> offsets;  // size depth()+1; offsets[0] == 0
  int depth() const { return static_cast<int>(offsets.size()) - 1; }
};

Gate sample_gate_pair(int n, Rng& rng);
Circuit sample_sequential(int n, std::int64_t t, Rng& rng);
Levels parallelize(const Circuit& c);

// Minimum conceivable depth of t gates on n qubits: ceil(t / floor(n/2)).
int depth_lower_bound(int n, std::int64_t t);

// Rejection-sample sequential circuits until greedy depth <= d.
struct RqcTd {
  Circuit circuit;
  Levels levels;
  std::uint64_t rejections = 0;
};
RqcTd sample_rqc_td(int n, std::int64_t t, int d, Rng& rng,
                    std::uint64_t max_attempts = 10000);

// Histogram of greedy depths over independently sampled circuits.
Histogram depth_tail_mc(int n, std::int64_t t, std::uint64_t trials,
                        std::uint64_t seed, int threads = 0);

// Frequency that k fresh random gates form a depth-k chain (every gate
// conflicts with its level predecessor); compare to (2/n)^{k-1} k!.
double chain_depth_frequency(int n, int k, std::uint64_t trials,
                             std::uint64_t seed, int threads = 0);

// Frequency that every qubit is touched by at least one of t gates, with
// the union bound n (1 - 2/n)^t on the complement for comparison.
struct CoverageResult {
  std::uint64_t trials = 0;
  std::uint64_t covered = 0;
  double union_bound = 0.0;
  double frequency() const {
    return trials ? static_cast<double>(covered) / static_cast<double>(trials)
                  : 0.0;
  }
};
CoverageResult coverage_probability(int n, std::int64_t t,
                                    std::uint64_t trials, std::uint64_t seed,
                                    int threads = 0);

}  // namespace rqc
