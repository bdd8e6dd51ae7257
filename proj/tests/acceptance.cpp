// Acceptance suite: one pass/fail line per criterion. Run with no arguments
// for the full set, or with a criterion number (1..12) for a single one.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <string>
#include <vector>

#include "rqc/circuit.hpp"
#include "rqc/decoupler.hpp"
#include "rqc/density.hpp"
#include "rqc/gambler.hpp"
#include "rqc/pauli.hpp"
#include "rqc/string_chain.hpp"
#include "rqc/weight_chain.hpp"

using namespace rqc;

namespace {

constexpr std::uint64_t kSeed = 20240901;

bool check(bool ok, const char* what, std::vector<std::string>& notes) {
  if (!ok) notes.push_back(what);
  return ok;
}

// ---------------------------------------------------------------- 1 ------
bool chain_consistency(std::vector<std::string>& notes) {
  bool ok = true;
  for (int n = 2; n <= 5; ++n) {
    const StringMatrix q = StringMatrix::build(n);
    for (std::uint64_t mu = 0; mu < q.dim(); ++mu) {
      const auto row = WeightChain::exact_row(n, index_weight(mu));
      std::map<int, Rational> by_weight;
      for (const auto& [nu, pr] : q.exact_row(static_cast<std::uint32_t>(mu)))
        by_weight[index_weight(nu)] += pr;
      const int l = index_weight(mu);
      Rational expect[3] = {row[0], row[1], row[2]};
      for (int k = 0; k <= n; ++k) {
        Rational want(0);
        if (k == l - 1) want = expect[0];
        if (k == l) want = expect[1];
        if (k == l + 1) want = expect[2];
        Rational got(0);
        if (auto it = by_weight.find(k); it != by_weight.end()) got = it->second;
        ok = check(got == want, "marginalized row mismatch", notes) && ok;
        if (!ok) return false;
      }
    }
  }
  for (int n = 2; n <= 20; ++n) {
    const WeightChain c = WeightChain::build(n);
    const auto pi = c.stationary();
    for (int k = 1; k <= n; ++k) {
      double acc = pi[static_cast<std::size_t>(k)] * c.row(k).stay;
      if (k > 1) acc += pi[static_cast<std::size_t>(k - 1)] * c.row(k - 1).up;
      if (k < n) acc += pi[static_cast<std::size_t>(k + 1)] * c.row(k + 1).down;
      ok = check(std::abs(acc - pi[static_cast<std::size_t>(k)]) < 1e-12,
                 "pi P != pi", notes) && ok;
    }
  }
  for (int n : {2, 8, 20, 40, 64}) {
    const WeightChain c = WeightChain::build(n);
    const auto pi = c.stationary();
    for (int l = 1; l < n; ++l)
      ok = check(std::abs(pi[static_cast<std::size_t>(l)] * c.row(l).up -
                          pi[static_cast<std::size_t>(l + 1)] * c.row(l + 1).down) <
                     1e-12,
                 "detailed balance violated", notes) && ok;
  }
  return ok;
}

// ---------------------------------------------------------------- 2 ------
bool commutation(std::vector<std::string>& notes) {
  bool ok = true;
  for (int n = 2; n <= 4; ++n) {
    const double dev = verify_commutation(n);
    char buf[64];
    std::snprintf(buf, sizeof(buf), "commutator deviation %.3g at n=%d", dev, n);
    ok = check(dev <= 1e-12, buf, notes) && ok;
  }
  return ok;
}

// ---------------------------------------------------------------- 3 ------
bool two_phase(std::vector<std::string>& notes) {
  const PauliString mu = PauliString::parse("10");
  const StringMatrix q = StringMatrix::build(2);
  const auto exact = q.power_row(static_cast<std::uint32_t>(mu.index()), 3);
  std::vector<std::uint64_t> counts(q.dim(), 0);
  const std::uint64_t trials = 1000000;
  for (std::uint64_t i = 0; i < trials; ++i) {
    Rng rng = Rng::for_stream(kSeed + 3, i);
    ++counts[two_phase_sample(mu, 3, rng).index()];
  }
  double tv = 0.0;
  for (std::uint64_t nu = 0; nu < q.dim(); ++nu)
    tv += std::abs(static_cast<double>(counts[nu]) / static_cast<double>(trials) -
                   exact[nu]);
  tv /= 2.0;
  char buf[64];
  std::snprintf(buf, sizeof(buf), "TV distance %.4f", tv);
  return check(tv <= 0.01, buf, notes);
}

// ---------------------------------------------------------------- 4 ------
bool gambler_triple(std::vector<std::string>& notes) {
  bool ok = true;
  Rng rng(kSeed + 4);
  for (int rep = 0; rep < 1000; ++rep) {
    RuinInstance inst;
    inst.a = 1 + static_cast<int>(rng.below(12));
    inst.p_minus = 0.5 + 0.49 * rng.open01();
    inst.p_plus.resize(static_cast<std::size_t>(inst.a - 1));
    for (auto& p : inst.p_plus) p = 0.5 + 0.49 * rng.open01();
    ok = check(std::abs(ruin_probability(inst) - ruin_exact_linear(inst)) <= 1e-12,
               "formula vs linear solve", notes) && ok;
  }

  RuinInstance canon;
  canon.a = 2;
  canon.p_minus = 2.0 / 3.0;
  canon.p_plus = {2.0 / 3.0};
  ok = check(std::abs(ruin_probability(canon) - 3.0 / 7.0) < 1e-12,
             "a=2, p=2/3 should give 3/7", notes) && ok;

  const RuinEstimate mc = ruin_mc(canon, 1000000, kSeed + 40);
  ok = check(std::abs(mc.estimate - 3.0 / 7.0) <= 3 * mc.stderr_est,
             "MC outside 3 sigma", notes) && ok;

  RuinInstance varied;
  varied.a = 4;
  varied.p_minus = 0.55;
  varied.p_plus = {0.6, 0.7, 0.8};
  const RuinEstimate mc2 = ruin_mc(varied, 1000000, kSeed + 41);
  ok = check(std::abs(mc2.estimate - ruin_probability(varied)) <= 3 * mc2.stderr_est,
             "state-dependent MC outside 3 sigma", notes) && ok;
  return ok;
}

// ---------------------------------------------------------------- 5 ------
bool hitting_scaling(std::vector<std::string>& notes) {
  std::vector<double> log_n, log_median;
  bool ok = true;
  for (int n : {64, 128, 256, 512}) {
    const WeightChain chain = WeightChain::build(n);
    const int target = (7 * n) / 10;
    const HittingStats st = hitting_time_mc(chain, 1, target, 1000,
                                            default_hitting_deadline(n),
                                            kSeed + 5, 0);
    ok = check(st.censored == 0, "censored trials in the scaling run", notes) && ok;
    log_n.push_back(std::log(static_cast<double>(n)));
    log_median.push_back(std::log(static_cast<double>(st.times.quantile(0.5))));
  }
  // least-squares slope of log(median) vs log(n)
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < log_n.size(); ++i) {
    mx += log_n[i];
    my += log_median[i];
  }
  mx /= static_cast<double>(log_n.size());
  my /= static_cast<double>(log_n.size());
  double num = 0, den = 0;
  for (std::size_t i = 0; i < log_n.size(); ++i) {
    num += (log_n[i] - mx) * (log_median[i] - my);
    den += (log_n[i] - mx) * (log_n[i] - mx);
  }
  const double slope = num / den;
  char buf[64];
  std::snprintf(buf, sizeof(buf), "fitted slope %.3f outside [0.9, 1.4]", slope);
  ok = check(slope >= 0.9 && slope <= 1.4, buf, notes) && ok;
  return ok;
}

// ---------------------------------------------------------------- 6 ------
bool shell_equidistribution(std::vector<std::string>& notes) {
  PauliString mu(6);
  mu.set_site(0, 1);
  const auto reports = empirical_uniformity(mu, 200, 1000000, kSeed + 6, 0);
  bool ok = true;
  for (const auto& r : reports) {
    if (!r.tested) continue;
    char buf[80];
    std::snprintf(buf, sizeof(buf), "shell k=%d rejected (p=%.2e)", r.k, r.pvalue);
    ok = check(r.pvalue >= 1e-3, buf, notes) && ok;
  }
  return ok;
}

// ---------------------------------------------------------------- 7 ------
bool depth_criteria(std::vector<std::string>& notes) {
  bool ok = true;
  {
    const int n = 256;
    const double lg = std::log2(static_cast<double>(n));
    const auto t = static_cast<std::int64_t>(std::ceil(n * lg * lg));
    const double budget = 8.0 * (static_cast<double>(t) / n) * lg;
    const Histogram depths = depth_tail_mc(n, t, 1000, kSeed + 7, 0);
    std::uint64_t within = 0;
    for (std::size_t d = 0; d < depths.counts.size(); ++d)
      if (static_cast<double>(d) <= budget) within += depths.counts[d];
    const double frac = static_cast<double>(within) / static_cast<double>(depths.total);
    char buf[80];
    std::snprintf(buf, sizeof(buf), "only %.1f%% of depths within 8 (t/n) log2 n",
                  100 * frac);
    ok = check(frac >= 0.99, buf, notes) && ok;
  }
  {
    const int n = 64;
    const std::uint64_t trials = 200000;
    for (int k = 2; k <= 12; ++k) {
      const double freq = chain_depth_frequency(n, k, trials, kSeed + 70 + k, 0);
      const double bound = std::min(
          1.0, std::pow(2.0 / n, k - 1) * std::tgamma(static_cast<double>(k) + 1));
      const double sigma =
          std::sqrt(std::max(freq * (1 - freq), 0.0) / static_cast<double>(trials));
      char buf[96];
      std::snprintf(buf, sizeof(buf),
                    "chain k=%d: freq %.3g above bound %.3g + 3 sigma", k, freq,
                    bound);
      ok = check(freq <= bound + 3 * sigma, buf, notes) && ok;
    }
  }
  return ok;
}

// ---------------------------------------------------------------- 8 ------
bool coverage_union_bound(std::vector<std::string>& notes) {
  const int n = 64;
  const auto t = static_cast<std::int64_t>(std::ceil(3.0 * n * std::log(n)));
  const CoverageResult res = coverage_probability(n, t, 100000, kSeed + 8, 0);
  const double miss = 1.0 - res.frequency();
  const double sigma = std::sqrt(std::max(miss * (1 - miss), 0.0) /
                                 static_cast<double>(res.trials));
  char buf[96];
  std::snprintf(buf, sizeof(buf), "non-coverage %.3g above bound %.3g + 3 sigma",
                miss, res.union_bound);
  return check(miss <= res.union_bound + 3 * sigma, buf, notes);
}

// ---------------------------------------------------------------- 9 ------
bool moment_bridge(std::vector<std::string>& notes) {
  bool ok = true;
  const std::uint64_t trials = 100000;
  for (int n : {2, 3}) {
    PauliString mu(n);
    mu.set_site(0, 1);
    for (std::int64_t t : {1, 5}) {
      MomentCheck checks[2];
      int ei = 0;
      for (GateEnsemble ens : {GateEnsemble::Haar, GateEnsemble::Clifford}) {
        const MomentCheck mc = moment_consistency(
            mu, t, trials, ens, kSeed + 90 + static_cast<std::uint64_t>(ei), 0);
        double worst = 0.0;
        for (double z : mc.z) worst = std::max(worst, std::abs(z));
        char buf[96];
        std::snprintf(buf, sizeof(buf),
                      "n=%d t=%lld %s: worst |z| = %.2f exceeds 3", n,
                      static_cast<long long>(t),
                      ens == GateEnsemble::Haar ? "haar" : "clifford", worst);
        ok = check(worst <= 3.0, buf, notes) && ok;
        checks[ei++] = mc;
      }
      // two-sample comparison at family-wise level 1e-3 (Bonferroni over the
      // nonzero strings: threshold Phi^-1(1 - 1e-3 / (2 m)))
      const std::size_t m = checks[0].empirical.size() - 1;
      const double threshold = n == 2 ? 4.32 : 4.66;  // m = 15, 63
      for (std::size_t nu = 1; nu <= m; ++nu) {
        const double se =
            std::hypot(checks[0].stderr_emp[nu], checks[1].stderr_emp[nu]);
        const double diff = checks[0].empirical[nu] - checks[1].empirical[nu];
        if (std::abs(diff) < 1e-12) continue;  // identical at double precision
        const double z = diff / se;
        char buf[96];
        std::snprintf(buf, sizeof(buf),
                      "ensembles differ at n=%d t=%lld (|z| = %.2f)", n,
                      static_cast<long long>(t), std::abs(z));
        ok = check(std::abs(z) <= threshold, buf, notes) && ok;
      }
    }
  }
  return ok;
}

// --------------------------------------------------------------- 10 ------
bool decoupling_decay(std::vector<std::string>& notes) {
  bool ok = true;
  const std::int64_t grid[] = {0, 25, 50, 100, 200};
  const int keep[] = {0};
  {
    // Mixed fill on the non-entangled qubits gives H2(A|E) = n - 2 ebits = 2,
    // the regime where one kept qubit actually decouples; the |0> fill keeps
    // the global state pure and floors the error near 0.37 at this size.
    const DensityMatrix rho =
        DensityMatrix::entangled_with_env(6, 2, 2, /*rest_mixed=*/true);
    const auto pts =
        decoupling_sweep(rho, keep, grid, GateEnsemble::Haar, 200, kSeed + 10, 0);
    for (std::size_t i = 1; i < pts.size(); ++i) {
      const double slack = std::hypot(pts[i - 1].error.stderr_mean(),
                                      pts[i].error.stderr_mean());
      char buf[96];
      std::snprintf(buf, sizeof(buf),
                    "mean error rose from %.4f (t=%lld) to %.4f (t=%lld)",
                    pts[i - 1].error.mean(),
                    static_cast<long long>(pts[i - 1].t), pts[i].error.mean(),
                    static_cast<long long>(pts[i].t));
      ok = check(pts[i].error.mean() <= pts[i - 1].error.mean() + slack, buf,
                 notes) && ok;
    }
    char buf[64];
    std::snprintf(buf, sizeof(buf), "error %.4f at t=200 not below 0.1",
                  pts.back().error.mean());
    ok = check(pts.back().error.mean() < 0.1, buf, notes) && ok;
  }
  {
    Eigen::MatrixXcd rho_e = Eigen::MatrixXcd::Zero(4, 4);
    rho_e(0, 0) = 0.4;
    rho_e(1, 1) = 0.3;
    rho_e(2, 2) = 0.2;
    rho_e(3, 3) = 0.1;
    const DensityMatrix inv = DensityMatrix::mixed_times_env(6, rho_e);
    const auto pts =
        decoupling_sweep(inv, keep, grid, GateEnsemble::Haar, 5, kSeed + 11, 0);
    for (const auto& p : pts)
      ok = check(p.error.mean() < 1e-10, "invariant state error not 0", notes) && ok;
  }
  return ok;
}

// --------------------------------------------------------------- 11 ------
bool h2_closed_forms(std::vector<std::string>& notes) {
  bool ok = true;
  Rng rng(kSeed + 12);
  for (int n = 1; n <= 4; ++n) {
    Eigen::MatrixXcd g(4, 4);
    for (int r = 0; r < 4; ++r)
      for (int c = 0; c < 4; ++c) g(r, c) = std::complex<double>(rng.normal(), rng.normal());
    Eigen::MatrixXcd rho_e = g * g.adjoint();
    rho_e /= rho_e.trace();
    ok = check(std::abs(h2_conditional(DensityMatrix::mixed_times_env(n, rho_e)) -
                        n) < 1e-8,
               "mixed x env should give +n", notes) && ok;
    ok = check(std::abs(h2_conditional(DensityMatrix::entangled_with_env(n, n, n)) +
                        n) < 1e-8,
               "maximal entanglement should give -n", notes) && ok;
    ok = check(std::abs(h2_conditional(
                   DensityMatrix::random_pure_product(n, 2, rng))) < 1e-8,
               "pure product should give 0", notes) && ok;
  }
  // Parseval identity
  for (int n = 2; n <= 4; ++n) {
    const int e = 1;
    const int dim = 1 << (n + e);
    Eigen::MatrixXcd g(dim, dim);
    for (int r = 0; r < dim; ++r)
      for (int c = 0; c < dim; ++c) g(r, c) = std::complex<double>(rng.normal(), rng.normal());
    const Eigen::MatrixXcd x = 0.5 * (g + g.adjoint());
    double total = 0.0;
    for (std::uint64_t nu = 0; nu < (1ull << (2 * n)); ++nu)
      total += pauli_mass(x, n, e, nu);
    ok = check(std::abs(total - std::pow(2.0, n) * x.squaredNorm()) <
                   1e-8 * std::pow(2.0, n) * x.squaredNorm(),
               "Parseval identity", notes) && ok;
  }
  return ok;
}

// --------------------------------------------------------------- 12 ------
bool binomial_suite(std::vector<std::string>& notes) {
  bool ok = true;
  for (int n = 10; n <= 200; n += 10) {
    std::vector<double> binom(static_cast<std::size_t>(n) + 1, 0.0);
    binom[0] = 1.0;
    for (int k = 1; k <= n; ++k)
      binom[static_cast<std::size_t>(k)] =
          binom[static_cast<std::size_t>(k - 1)] * (n - k + 1) / k;
    for (int pct = 1; pct <= 99; ++pct) {
      const int k = (n * pct) / 100;
      const double alpha = static_cast<double>(k) / n;
      if (pct <= 50) {  // sum bound needs alpha <= 1/2
        double sum = 0.0;
        for (int j = 0; j <= k; ++j) sum += binom[static_cast<std::size_t>(j)];
        ok = check(std::log2(sum) <= n * binary_entropy(alpha) + 1e-9,
                   "binomial sum bound", notes) && ok;
      }
      ok = check(log2_binom(n, k) >=
                     n * binary_entropy(alpha) - std::log2(n + 1.0) - 1e-9,
                 "binomial point bound", notes) && ok;
    }
  }
  for (int ai = 1; ai <= 99; ++ai) {
    const double a = ai / 100.0;
    ok = check(binary_entropy(a) <= 2.0 * std::sqrt(a * (1 - a)) + 1e-12,
               "entropy sqrt bound", notes) && ok;
    for (int di = 1; di <= 99 - ai; ++di) {
      const double d = di / 100.0;
      ok = check(std::abs(binary_entropy(a + d) - binary_entropy(a)) <=
                     binary_entropy(d) + 1e-12,
                 "entropy increment bound", notes) && ok;
    }
  }
  return ok;
}

struct Criterion {
  int id;
  const char* name;
  bool (*run)(std::vector<std::string>&);
};

const Criterion kCriteria[] = {
    {1, "chain consistency: marginalized string chain equals the weight chain",
     chain_consistency},
    {2, "commutation of the weight-preserving and weight-changing parts",
     commutation},
    {3, "two-phase sampler matches the exact 3-step row (TV <= 0.01)", two_phase},
    {4, "ruin probability: closed form, linear solve and MC agree", gambler_triple},
    {5, "hitting-time medians scale like n polylog(n) (slope in [0.9, 1.4])",
     hitting_scaling},
    {6, "weight shells equidistribute (no shell rejected at 1e-3)",
     shell_equidistribution},
    {7, "greedy depth within 8 (t/n) log2 n; conflict chains under the bound",
     depth_criteria},
    {8, "qubit coverage misses at most n (1-2/n)^t + 3 sigma",
     coverage_union_bound},
    {9, "gate-level second moments reproduce the string chain; ensembles agree",
     moment_bridge},
    {10, "decoupling error decays monotonically and below 0.1 at t=200",
     decoupling_decay},
    {11, "closed-form conditional-entropy cases and Parseval identity",
     h2_closed_forms},
    {12, "binomial and entropy estimates on the full grids", binomial_suite},
};

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  if (argc > 1) only = std::atoi(argv[1]);
  int failures = 0;
  for (const Criterion& c : kCriteria) {
    if (only != 0 && c.id != only) continue;
    std::vector<std::string> notes;
    const auto start = std::chrono::steady_clock::now();
    const bool ok = c.run(notes);
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    std::printf("[%2d] %s  %s (%.1fs)\n", c.id, ok ? "PASS" : "FAIL", c.name,
                secs);
    for (const auto& note : notes) std::printf("       - %s\n", note.c_str());
    if (!ok) ++failures;
    std::fflush(stdout);
  }
  return failures;
}
