#pragma once

#include <cmath>
#include <cstdint>
#include <utility>

#include "rqc/errors.hpp"

namespace rqc {

// splitmix64 step; also used to derive per-stream seeds.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

// xoshiro256++ generator. Satisfies UniformRandomBitGenerator.
//
// Every Monte Carlo trial owns a stream derived from (master seed, stream id),
// so results do not depend on how trials are scheduled across threads.
class Rng {
 public:
  using result_type = std::uint64_t;

  explicit Rng(std::uint64_t seed) {
    std::uint64_t sm = seed;
    for (auto& w : s_) w = splitmix64(sm);
  }

  static Rng for_stream(std::uint64_t master_seed, std::uint64_t stream) {
    std::uint64_t sm = master_seed;
    std::uint64_t a = splitmix64(sm);
    std::uint64_t b = splitmix64(sm);
    return Rng(a ^ (b + 0x9e3779b97f4a7c15ull * (stream + 1)));
  }

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return ~0ull; }

  result_type operator()() { return next(); }

  std::uint64_t next() {
    const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

  // Unbiased integer in [0, n) (Lemire multiply-shift with rejection).
  std::uint64_t below(std::uint64_t n) {
    unsigned __int128 m = static_cast<unsigned __int128>(next()) * n;
    auto lo = static_cast<std::uint64_t>(m);
    if (lo < n) {
      const std::uint64_t threshold = (0 - n) % n;
      while (lo < threshold) {
        m = static_cast<unsigned __int128>(next()) * n;
        lo = static_cast<std::uint64_t>(m);
      }
    }
    return static_cast<std::uint64_t>(m >> 64);
  }

  // Uniform double in [0, 1) with 53-bit resolution.
  double real() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // Uniform double in the open interval (0, 1); safe to take logs of.
  double open01() {
    return (static_cast<double>(next() >> 11) + 0.5) * 0x1.0p-53;
  }

  bool bernoulli(double p) { return real() < p; }

  // Number of failures before the first success, success probability p.
  std::uint64_t geometric(double p) {
    if (!(p > 0.0 && p <= 1.0)) throw domain_error("geometric: p outside (0,1]");
    if (p == 1.0) return 0;
    const double g = std::floor(std::log(open01()) / std::log1p(-p));
    return static_cast<std::uint64_t>(g);
  }

  // Successes in n Bernoulli(p) draws. O(n); fine for the trajectory lengths
  // used here, where the chain steps dominate anyway.
  std::uint64_t binomial(std::uint64_t n, double p) {
    std::uint64_t k = 0;
    for (std::uint64_t i = 0; i < n; ++i) k += bernoulli(p) ? 1 : 0;
    return k;
  }

  // Standard normal via Marsaglia's polar method (second value cached).
  double normal() {
    if (have_cached_) {
      have_cached_ = false;
      return cached_;
    }
    double u, v, s;
    do {
      u = 2.0 * real() - 1.0;
      v = 2.0 * real() - 1.0;
      s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double f = std::sqrt(-2.0 * std::log(s) / s);
    cached_ = v * f;
    have_cached_ = true;
    return u * f;
  }

  // Ordered pair (i, j), i != j, uniform over the n(n-1) possibilities.
  std::pair<int, int> ordered_pair(int n) {
    const int i = static_cast<int>(below(static_cast<std::uint64_t>(n)));
    int j = static_cast<int>(below(static_cast<std::uint64_t>(n - 1)));
    if (j >= i) ++j;
    return {i, j};
  }

 private:
  static std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
  }

  std::uint64_t s_[4]{};
  double cached_ = 0.0;
  bool have_cached_ = false;
};

}  // namespace rqc
