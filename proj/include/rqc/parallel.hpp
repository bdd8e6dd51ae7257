#pragma once

#include <cstdint>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "rqc/rng.hpp"

namespace rqc {

inline int resolve_threads(int threads) {
#ifdef _OPENMP
  if (threads > 0) return threads;
  return omp_get_max_threads();
#else
  (void)threads;
  return 1;
#endif
}

// Runs `trials` independent Monte Carlo trials, each with its own RNG stream
// derived from (seed, trial index). Trials are grouped into fixed-size blocks;
// block partials are merged in block order. Floating-point accumulators
// therefore see one summation tree regardless of thread count: serial and
// parallel runs produce bit-identical results.
//
// Body: void(std::uint64_t trial, Rng& rng, Acc& acc).
template <class Acc, class Body>
Acc run_trials_ordered(std::uint64_t trials, std::uint64_t seed, int threads,
                       Acc proto, Body&& body,
                       std::uint64_t block_size = 256) {
  if (block_size == 0) block_size = 1;
  const std::uint64_t nblocks = (trials + block_size - 1) / block_size;
  std::vector<Acc> partial(static_cast<std::size_t>(nblocks), proto);
  const int nt = resolve_threads(threads);

#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) num_threads(nt)
#else
  (void)nt;
#endif
  for (std::int64_t b = 0; b < static_cast<std::int64_t>(nblocks); ++b) {
    const std::uint64_t begin = static_cast<std::uint64_t>(b) * block_size;
    const std::uint64_t end = std::min(trials, begin + block_size);
    Acc& acc = partial[static_cast<std::size_t>(b)];
    for (std::uint64_t trial = begin; trial < end; ++trial) {
      Rng rng = Rng::for_stream(seed, trial);
      body(trial, rng, acc);
    }
  }

  Acc out = proto;
  for (auto& p : partial) out.merge(p);
  return out;
}

// Thread-local variant for accumulators whose merge is commutative and exact
// (integer counts, histograms). Avoids one partial per block, which matters
// when the accumulator itself is large (e.g. a histogram over all strings).
template <class Acc, class Body>
Acc run_trials_counting(std::uint64_t trials, std::uint64_t seed, int threads,
                        Acc proto, Body&& body) {
  const int nt = resolve_threads(threads);
#ifdef _OPENMP
  std::vector<Acc> partial(static_cast<std::size_t>(nt), proto);
#pragma omp parallel num_threads(nt)
  {
    Acc& acc = partial[static_cast<std::size_t>(omp_get_thread_num())];
#pragma omp for schedule(static)
    for (std::int64_t trial = 0; trial < static_cast<std::int64_t>(trials);
         ++trial) {
      Rng rng = Rng::for_stream(seed, static_cast<std::uint64_t>(trial));
      body(static_cast<std::uint64_t>(trial), rng, acc);
    }
  }
  Acc out = proto;
  for (auto& p : partial) out.merge(p);
  return out;
#else
  Acc out = proto;
  for (std::uint64_t trial = 0; trial < trials; ++trial) {
    Rng rng = Rng::for_stream(seed, trial);
    body(trial, rng, out);
  }
  return out;
#endif
}

}  // namespace rqc
