#include "rqc/circuit.hpp"

#include <algorithm>
#include <cmath>

#include "rqc/errors.hpp"
#include "rqc/parallel.hpp"

namespace rqc {

Circuit::Circuit(int n, std::vector<Gate> gates)
    : n_(n), gates_(std::move(gates)) {
  if (n < 2) throw domain_error("Circuit: need at least two qubits");
  for (const Gate& g : gates_)
    if (g.a < 0 || g.b < 0 || g.a >= n || g.b >= n || g.a == g.b)
      throw domain_error("Circuit: gate endpoints outside [0,n) or equal");
}

Gate sample_gate_pair(int n, Rng& rng) {
  auto [i, j] = rng.ordered_pair(n);
  return Gate{std::min(i, j), std::max(i, j)};
}

Circuit sample_sequential(int n, std::int64_t t, Rng& rng) {
  if (n < 2) throw domain_error("sample_sequential: need at least two qubits");
  if (t < 0) throw domain_error("sample_sequential: negative gate count");
  std::vector<Gate> gates;
  gates.reserve(static_cast<std::size_t>(t));
  for (std::int64_t i = 0; i < t; ++i) gates.push_back(sample_gate_pair(n, rng));
  return Circuit(n, std::move(gates));
}

Levels parallelize(const Circuit& c) {
  Levels lv;
  lv.offsets.push_back(0);
  // level_of[q] = index of the level containing the latest gate on qubit q
  std::vector<int> level_of(static_cast<std::size_t>(c.n()), -1);
  int current = -1;
  std::uint64_t pos = 0;
  for (const Gate& g : c.gates()) {
    if (current < 0) {
      current = 0;
    } else if (level_of[static_cast<std::size_t>(g.a)] == current ||
               level_of[static_cast<std::size_t>(g.b)] == current) {
      lv.offsets.push_back(pos);
      ++current;
    }
    level_of[static_cast<std::size_t>(g.a)] = current;
    level_of[static_cast<std::size_t>(g.b)] = current;
    ++pos;
  }
  lv.offsets.push_back(pos);
  if (c.size() == 0) lv.offsets.assign(1, 0);  // empty circuit, depth 0
  return lv;
}

int depth_lower_bound(int n, std::int64_t t) {
  const std::int64_t per_level = n / 2;
  return static_cast<int>((t + per_level - 1) / per_level);
}

RqcTd sample_rqc_td(int n, std::int64_t t, int d, Rng& rng,
                    std::uint64_t max_attempts) {
  if (d < depth_lower_bound(n, t))
    throw domain_error("sample_rqc_td: depth budget below ceil(t/floor(n/2))");
  std::uint64_t rejections = 0;
  for (std::uint64_t attempt = 0; attempt < max_attempts; ++attempt) {
    Circuit c = sample_sequential(n, t, rng);
    Levels lv = parallelize(c);
    if (lv.depth() <= d) return RqcTd{std::move(c), std::move(lv), rejections};
    ++rejections;
  }
  throw rejection_cap_error("sample_rqc_td: rejection cap exhausted");
}

Histogram depth_tail_mc(int n, std::int64_t t, std::uint64_t trials,
                        std::uint64_t seed, int threads) {
  auto body = [&](std::uint64_t, Rng& rng, Histogram& acc) {
    const Circuit c = sample_sequential(n, t, rng);
    acc.add(static_cast<std::uint64_t>(parallelize(c).depth()));
  };
  return run_trials_counting(trials, seed, threads, Histogram{}, body);
}

double chain_depth_frequency(int n, int k, std::uint64_t trials,
                             std::uint64_t seed, int threads) {
  if (k < 1) throw domain_error("chain_depth_frequency: k must be >= 1");
  struct Acc {
    std::uint64_t hits = 0;
    void merge(const Acc& o) { hits += o.hits; }
  };
  auto body = [&](std::uint64_t, Rng& rng, Acc& acc) {
    // Depth-k chain <=> each gate conflicts with the previous one: the greedy
    // rule then opens a fresh level for every gate.
    Gate prev = sample_gate_pair(n, rng);
    for (int i = 1; i < k; ++i) {
      const Gate g = sample_gate_pair(n, rng);
      if (!g.overlaps(prev)) return;
      prev = g;
    }
    ++acc.hits;
  };
  const Acc acc = run_trials_counting(trials, seed, threads, Acc{}, body);
  return static_cast<double>(acc.hits) / static_cast<double>(trials);
}

CoverageResult coverage_probability(int n, std::int64_t t,
                                    std::uint64_t trials, std::uint64_t seed,
                                    int threads) {
  struct Acc {
    std::uint64_t trials = 0;
    std::uint64_t covered = 0;
    void merge(const Acc& o) {
      trials += o.trials;
      covered += o.covered;
    }
  };
  auto body = [&](std::uint64_t, Rng& rng, Acc& acc) {
    ++acc.trials;
    std::vector<bool> touched(static_cast<std::size_t>(n), false);
    int remaining = n;
    for (std::int64_t i = 0; i < t && remaining > 0; ++i) {
      const Gate g = sample_gate_pair(n, rng);
      if (!touched[static_cast<std::size_t>(g.a)]) {
        touched[static_cast<std::size_t>(g.a)] = true;
        --remaining;
      }
      if (!touched[static_cast<std::size_t>(g.b)]) {
        touched[static_cast<std::size_t>(g.b)] = true;
        --remaining;
      }
    }
    if (remaining == 0) ++acc.covered;
  };
  const Acc acc = run_trials_counting(trials, seed, threads, Acc{}, body);
  CoverageResult res;
  res.trials = acc.trials;
  res.covered = acc.covered;
  res.union_bound = n * std::pow(1.0 - 2.0 / n, static_cast<double>(t));
  return res;
}

}  // namespace rqc
