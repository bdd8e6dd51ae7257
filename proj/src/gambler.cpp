#include "rqc/gambler.hpp"

#include <cmath>

#include "rqc/errors.hpp"
#include "rqc/parallel.hpp"
#include "rqc/stats.hpp"

namespace rqc {

void RuinInstance::validate_strict() const {
  validate_relaxed();
  if (p_minus <= 0.5) throw domain_error("ruin: p_minus must exceed 1/2");
  for (double p : p_plus)
    if (p <= 0.5) throw domain_error("ruin: p_plus must exceed 1/2");
}

void RuinInstance::validate_relaxed() const {
  if (a < 1) throw domain_error("ruin: boundary a must be >= 1");
  if (static_cast<int>(p_plus.size()) != a - 1)
    throw domain_error("ruin: p_plus must have a-1 entries");
  if (!(p_minus > 0.0 && p_minus < 1.0))
    throw domain_error("ruin: p_minus outside (0,1)");
  for (double p : p_plus)
    if (!(p > 0.0 && p < 1.0)) throw domain_error("ruin: p_plus outside (0,1)");
}

double ruin_probability(const RuinInstance& inst) {
  inst.validate_strict();
  const double alpha_minus = inst.p_minus / (1.0 - inst.p_minus);
  // r_i = prod_{j=i}^{a-1} alpha_+(j) / (1 + sum_{m=i}^{a-1} prod_{j=m}^{a-1} alpha_+(j)),
  // built backwards from r_a = 1 via r_i = alpha r_{i+1} / (1 + alpha r_{i+1}).
  // Each r_i lies in (0,1], unlike the raw products, which overflow near
  // a ~ 500 for alpha ~ 2.
  double r = 1.0;
  for (int i = inst.a - 1; i >= 1; --i) {
    const double p = inst.p_plus[static_cast<std::size_t>(i - 1)];
    const double alpha = p / (1.0 - p);
    r = alpha * r / (1.0 + alpha * r);
  }
  return 1.0 / (1.0 + alpha_minus * r);
}

std::vector<double> ruin_linear_profile(const RuinInstance& inst) {
  inst.validate_relaxed();
  const int a = inst.a;
  // Unknowns P_0..P_{a-1}; boundary P_{-1} = 1, P_a = 0. Thomas algorithm on
  //   -(1-p_i) P_{i-1} + P_i - p_i P_{i+1} = rhs_i,  rhs_0 = 1 - p_minus.
  std::vector<double> diag(static_cast<std::size_t>(a), 1.0);
  std::vector<double> rhs(static_cast<std::size_t>(a), 0.0);
  std::vector<double> upper(static_cast<std::size_t>(a), 0.0);
  std::vector<double> lower(static_cast<std::size_t>(a), 0.0);
  auto forward = [&](int i) {
    return i == 0 ? inst.p_minus : inst.p_plus[static_cast<std::size_t>(i - 1)];
  };
  for (int i = 0; i < a; ++i) {
    const double p = forward(i);
    upper[static_cast<std::size_t>(i)] = -p;      // couples to P_{i+1}
    lower[static_cast<std::size_t>(i)] = -(1.0 - p);  // couples to P_{i-1}
  }
  rhs[0] = 1.0 - forward(0);

  for (int i = 1; i < a; ++i) {
    const double w = lower[static_cast<std::size_t>(i)] / diag[static_cast<std::size_t>(i - 1)];
    diag[static_cast<std::size_t>(i)] -= w * upper[static_cast<std::size_t>(i - 1)];
    rhs[static_cast<std::size_t>(i)] -= w * rhs[static_cast<std::size_t>(i - 1)];
  }
  std::vector<double> sol(static_cast<std::size_t>(a), 0.0);
  sol[static_cast<std::size_t>(a - 1)] =
      rhs[static_cast<std::size_t>(a - 1)] / diag[static_cast<std::size_t>(a - 1)];
  for (int i = a - 2; i >= 0; --i)
    sol[static_cast<std::size_t>(i)] =
        (rhs[static_cast<std::size_t>(i)] -
         upper[static_cast<std::size_t>(i)] * sol[static_cast<std::size_t>(i + 1)]) /
        diag[static_cast<std::size_t>(i)];

  std::vector<double> profile(static_cast<std::size_t>(a) + 2, 0.0);
  profile[0] = 1.0;  // P_{-1}
  for (int i = 0; i < a; ++i)
    profile[static_cast<std::size_t>(i + 1)] = sol[static_cast<std::size_t>(i)];
  profile[static_cast<std::size_t>(a + 1)] = 0.0;  // P_a
  return profile;
}

double ruin_exact_linear(const RuinInstance& inst) {
  return ruin_linear_profile(inst)[1];
}

RuinEstimate ruin_mc(const RuinInstance& inst, std::uint64_t trials,
                     std::uint64_t seed, int threads) {
  inst.validate_relaxed();
  struct Acc {
    std::uint64_t hits = 0;
    std::uint64_t trials = 0;
    void merge(const Acc& o) {
      hits += o.hits;
      trials += o.trials;
    }
  };
  auto body = [&](std::uint64_t, Rng& rng, Acc& acc) {
    int pos = 0;
    while (pos > -1 && pos < inst.a) {
      const double p = pos <= 0
                           ? inst.p_minus
                           : inst.p_plus[static_cast<std::size_t>(pos - 1)];
      pos += rng.bernoulli(p) ? 1 : -1;
    }
    ++acc.trials;
    if (pos == -1) ++acc.hits;
  };
  const Acc acc = run_trials_counting(trials, seed, threads, Acc{}, body);
  RuinEstimate est;
  est.trials = acc.trials;
  est.estimate = static_cast<double>(acc.hits) / static_cast<double>(acc.trials);
  est.stderr_est = std::sqrt(est.estimate * (1.0 - est.estimate) /
                             static_cast<double>(acc.trials));
  return est;
}

}  // namespace rqc
