#include "rqc/weight_chain.hpp"

#include <cmath>

#include "rqc/errors.hpp"
#include "rqc/parallel.hpp"

namespace rqc {

std::array<Rational, 3> WeightChain::exact_row(int n, int l) {
  if (n < 2) throw domain_error("WeightChain: n must be >= 2");
  if (l < 0 || l > n) throw domain_error("WeightChain: weight outside [0,n]");
  if (l == 0) return {Rational(0), Rational(1), Rational(0)};
  const std::int64_t ln = l, nn = n;
  const std::int64_t denom = 5 * nn * (nn - 1);
  const Rational down(2 * ln * (ln - 1), denom);
  const Rational up(6 * ln * (nn - ln), denom);
  const Rational stay = Rational(1) - Rational(2 * ln * (3 * nn - 2 * ln - 1), denom);
  return {down, stay, up};
}

WeightChain WeightChain::build(int n) {
  WeightChain c;
  c.n_ = n;
  c.rows_.resize(static_cast<std::size_t>(n) + 1);
  for (int l = 0; l <= n; ++l) {
    const auto r = exact_row(n, l);
    c.rows_[static_cast<std::size_t>(l)] = {to_double(r[0]), to_double(r[1]),
                                            to_double(r[2])};
  }
  return c;
}

double log2_binom(int n, int k) {
  if (k < 0 || k > n) return -std::numeric_limits<double>::infinity();
  return (std::lgamma(n + 1.0) - std::lgamma(k + 1.0) -
          std::lgamma(n - k + 1.0)) /
         std::log(2.0);
}

double binary_entropy(double a) {
  if (a <= 0.0 || a >= 1.0) return 0.0;
  return -a * std::log2(a) - (1.0 - a) * std::log2(1.0 - a);
}

namespace {

constexpr double kLog2_3 = 1.5849625007211562;  // log2(3)

// log2 of (4^n - 1).
double log2_4n_minus_1(int n) {
  return 2.0 * n + std::log1p(-std::pow(4.0, -n)) / std::log(2.0);
}

double log2_pi(int n, int k) { return k * kLog2_3 + log2_binom(n, k) - log2_4n_minus_1(n); }

}  // namespace

std::vector<double> WeightChain::stationary() const {
  std::vector<double> pi(static_cast<std::size_t>(n_) + 1, 0.0);
  for (int k = 1; k <= n_; ++k)
    pi[static_cast<std::size_t>(k)] = std::exp2(log2_pi(n_, k));
  return pi;
}

std::vector<double> WeightChain::evolve_exact(int start,
                                              std::int64_t steps) const {
  if (start < 0 || start > n_)
    throw domain_error("evolve_exact: start outside [0,n]");
  if (steps < 0) throw domain_error("evolve_exact: negative step count");
  std::vector<double> v(static_cast<std::size_t>(n_) + 1, 0.0);
  v[static_cast<std::size_t>(start)] = 1.0;
  std::vector<double> next(v.size(), 0.0);
  for (std::int64_t t = 0; t < steps; ++t) {
    for (int k = 0; k <= n_; ++k) {
      double acc = v[static_cast<std::size_t>(k)] * rows_[static_cast<std::size_t>(k)].stay;
      if (k > 0) acc += v[static_cast<std::size_t>(k - 1)] * rows_[static_cast<std::size_t>(k - 1)].up;
      if (k < n_) acc += v[static_cast<std::size_t>(k + 1)] * rows_[static_cast<std::size_t>(k + 1)].down;
      next[static_cast<std::size_t>(k)] = acc;
    }
    v.swap(next);
  }
  return v;
}

int WeightChain::step(int l, Rng& rng) const {
  const WeightRow& r = rows_[static_cast<std::size_t>(l)];
  const double u = rng.real();
  if (u < r.down) return l - 1;
  if (u < r.down + r.stay) return l;
  return l + 1;
}

int WeightChain::run_trajectory(int start, std::int64_t steps, Rng& rng) const {
  int l = start;
  for (std::int64_t t = 0; t < steps; ++t) l = step(l, rng);
  return l;
}

std::pair<int, std::uint64_t> WeightChain::accelerated_step(int l,
                                                            Rng& rng) const {
  const WeightRow& r = rows_[static_cast<std::size_t>(l)];
  const double move = r.down + r.up;
  if (move <= 0.0)
    throw domain_error("accelerated_step: state cannot move");
  const std::uint64_t wait = rng.geometric(move);
  const int next = rng.real() * move < r.up ? l + 1 : l - 1;
  return {next, wait};
}

std::uint64_t default_hitting_deadline(int n) {
  const double lg = std::log2(static_cast<double>(n));
  return static_cast<std::uint64_t>(std::ceil(50.0 * n * lg * lg));
}

HittingStats hitting_time_mc(const WeightChain& chain, int start, int target,
                             std::uint64_t trials, std::uint64_t deadline,
                             std::uint64_t seed, int threads) {
  const int n = chain.n();
  if (start < 0 || start > n || target < 0 || target > n)
    throw domain_error("hitting_time_mc: start/target outside [0,n]");
  HittingStats proto;
  proto.start = start;
  proto.target = target;
  proto.deadline = deadline;
  proto.master_seed = seed;

  const bool upward = target >= start;
  auto body = [&](std::uint64_t, Rng& rng, HittingStats& acc) {
    ++acc.trials;
    if (start == target) {  // already there; recorded as immediate
      acc.times.add(0);
      return;
    }
    int l = start;
    for (std::uint64_t t = 1; t <= deadline; ++t) {
      l = chain.step(l, rng);
      if ((upward && l >= target) || (!upward && l <= target)) {
        acc.times.add(t);
        return;
      }
    }
    ++acc.censored;
  };
  return run_trials_counting(trials, seed, threads, proto, body);
}

ReferencePoints reference_points(int n, double delta) {
  if (!(delta > 0.0 && delta < 1.0 / 16.0))
    throw domain_error("reference_points: delta outside (0, 1/16)");
  ReferencePoints rp;
  rp.r_minus = static_cast<int>(std::floor((0.75 - delta) * n));
  rp.r_plus = static_cast<int>(std::ceil((0.75 + delta) * n));
  rp.drift_ok = true;
  // Up/down drift 3 (n-x)/(x-1) >= 1 + 2 delta for 1 < x < r-. At x = 1 the
  // chain cannot move down at all, so the condition holds vacuously.
  for (int x = 2; x < rp.r_minus; ++x) {
    if (3.0 * (n - x) / (x - 1.0) < 1.0 + 2.0 * delta) rp.drift_ok = false;
  }
  // Mirrored condition (y-1) / (3 (n-y)) >= 1 + 2 delta for r+ < y < n;
  // at y = n the chain cannot move up.
  for (int y = rp.r_plus + 1; y < n; ++y) {
    if ((y - 1.0) / (3.0 * (n - y)) < 1.0 + 2.0 * delta) rp.drift_ok = false;
  }
  return rp;
}

BoundReport check_theorem_bound(int n, int start, int k, std::int64_t t,
                                double delta, double c_poly, double eta,
                                int poly_power) {
  if (start < 1 || start > n || k < 1 || k > n)
    throw domain_error("check_theorem_bound: start/k outside [1,n]");
  if (!(eta > 0.0 && eta < 3.0))
    throw domain_error("check_theorem_bound: eta outside (0,3)");
  const WeightChain chain = WeightChain::build(n);
  const std::vector<double> dist = chain.evolve_exact(start, t);

  BoundReport rep;
  rep.lhs = dist[static_cast<std::size_t>(k)];
  rep.log2_lhs = rep.lhs > 0.0 ? std::log2(rep.lhs)
                               : -std::numeric_limits<double>::infinity();

  const double term1 = 2.0 * delta * n + log2_pi(n, k);
  const double term2 = std::log2(c_poly) - start * std::log2(3.0 - eta) -
                       log2_binom(n, start) - poly_power * std::log2(double(n));
  const double hi = std::max(term1, term2);
  rep.log2_rhs = hi + std::log2(std::exp2(term1 - hi) + std::exp2(term2 - hi));
  rep.pass = rep.log2_lhs <= rep.log2_rhs;
  return rep;
}

}  // namespace rqc
