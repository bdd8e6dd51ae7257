#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "rqc/errors.hpp"
#include "rqc/weight_chain.hpp"

using namespace rqc;

TEST_CASE("rows match the closed form") {
  const auto r42 = WeightChain::exact_row(4, 2);
  CHECK(r42[0] == Rational(1, 15));
  CHECK(r42[1] == Rational(8, 15));
  CHECK(r42[2] == Rational(6, 15));

  const auto r21 = WeightChain::exact_row(2, 1);
  CHECK(r21[0] == Rational(0));
  CHECK(r21[1] == Rational(2, 5));
  CHECK(r21[2] == Rational(3, 5));

  CHECK(WeightChain::exact_row(17, 0) == std::array<Rational, 3>{
            Rational(0), Rational(1), Rational(0)});
  CHECK_THROWS_AS(WeightChain::build(1), domain_error);
}

TEST_CASE("row stochasticity is exact for n in [2,512]") {
  for (int n = 2; n <= 512; ++n) {
    for (int l = 0; l <= n; ++l) {
      const auto r = WeightChain::exact_row(n, l);
      CHECK(r[0] + r[1] + r[2] == Rational(1));
      CHECK(r[0] >= Rational(0));
      CHECK(r[1] >= Rational(0));
      CHECK(r[2] >= Rational(0));
    }
    CHECK(WeightChain::exact_row(n, 1)[0] == Rational(0));  // sector barrier
    CHECK(WeightChain::exact_row(n, n)[2] == Rational(0));
  }
}

TEST_CASE("stationary law") {
  const WeightChain c2 = WeightChain::build(2);
  const auto pi2 = c2.stationary();
  CHECK(pi2[1] == doctest::Approx(0.4).epsilon(1e-14));
  CHECK(pi2[2] == doctest::Approx(0.6).epsilon(1e-14));

  for (int n = 2; n <= 20; ++n) {
    const WeightChain c = WeightChain::build(n);
    const auto pi = c.stationary();
    double sum = 0.0;
    for (double x : pi) sum += x;
    CHECK(std::abs(sum - 1.0) < 1e-12);
    // pi P = pi entrywise
    for (int k = 1; k <= n; ++k) {
      double acc = pi[static_cast<std::size_t>(k)] * c.row(k).stay;
      if (k > 1) acc += pi[static_cast<std::size_t>(k - 1)] * c.row(k - 1).up;
      if (k < n) acc += pi[static_cast<std::size_t>(k + 1)] * c.row(k + 1).down;
      CHECK(std::abs(acc - pi[static_cast<std::size_t>(k)]) < 1e-12);
    }
  }
}

TEST_CASE("detailed balance up to n = 64") {
  for (int n : {2, 3, 8, 17, 33, 64}) {
    const WeightChain c = WeightChain::build(n);
    const auto pi = c.stationary();
    for (int l = 1; l < n; ++l) {
      const double lhs = pi[static_cast<std::size_t>(l)] * c.row(l).up;
      const double rhs = pi[static_cast<std::size_t>(l + 1)] * c.row(l + 1).down;
      CHECK(std::abs(lhs - rhs) < 1e-12);
    }
  }
}

namespace {

double total_variation(const std::vector<double>& a, const std::vector<double>& b) {
  double tv = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) tv += std::abs(a[i] - b[i]);
  return tv / 2.0;
}

}  // namespace

TEST_CASE("evolve_exact") {
  const WeightChain c2 = WeightChain::build(2);
  const auto v0 = c2.evolve_exact(1, 0);
  CHECK(v0[1] == 1.0);

  const auto v1 = c2.evolve_exact(1, 1);
  CHECK(v1[1] == doctest::Approx(0.4).epsilon(1e-14));
  CHECK(v1[2] == doctest::Approx(0.6).epsilon(1e-14));

  const WeightChain c8 = WeightChain::build(8);
  const auto v = c8.evolve_exact(3, 10000);
  double sum = 0.0;
  for (double x : v) sum += x;
  CHECK(std::abs(sum - 1.0) < 1e-9);
  CHECK(total_variation(v, c8.stationary()) < 1e-6);
}

TEST_CASE("stationarity is preserved through evolve_exact") {
  for (int n : {8, 32}) {
    const WeightChain c = WeightChain::build(n);
    const auto pi = c.stationary();
    // sum_l pi(l) P^t(l,k) == pi(k); evolve each point mass t steps
    const std::int64_t t = 1000;
    std::vector<double> mixed(static_cast<std::size_t>(n) + 1, 0.0);
    for (int l = 1; l <= n; ++l) {
      const auto row = c.evolve_exact(l, t);
      for (int k = 0; k <= n; ++k)
        mixed[static_cast<std::size_t>(k)] +=
            pi[static_cast<std::size_t>(l)] * row[static_cast<std::size_t>(k)];
    }
    for (int k = 1; k <= n; ++k)
      CHECK(std::abs(mixed[static_cast<std::size_t>(k)] -
                     pi[static_cast<std::size_t>(k)]) < 1e-9);
  }
}

TEST_CASE("single-step sampling law at (n=4, l=2)") {
  const WeightChain c = WeightChain::build(4);
  Rng rng(2024);
  std::uint64_t counts[3] = {0, 0, 0};  // down, stay, up
  const std::uint64_t draws = 1000000;
  for (std::uint64_t i = 0; i < draws; ++i) {
    const int next = c.step(2, rng);
    ++counts[next - 1];
  }
  const double expect[3] = {1.0 / 15, 8.0 / 15, 6.0 / 15};
  for (int j = 0; j < 3; ++j) {
    const double sigma = std::sqrt(expect[j] * (1 - expect[j]) * draws);
    CHECK(std::abs(static_cast<double>(counts[j]) - expect[j] * draws) <
          3 * sigma);
  }
}

TEST_CASE("weight zero is absorbing") {
  const WeightChain c = WeightChain::build(5);
  Rng rng(5);
  CHECK(c.run_trajectory(0, 1000, rng) == 0);
}

TEST_CASE("trajectory endpoint law matches matrix powering (TV < 0.01)") {
  const WeightChain c = WeightChain::build(6);
  const std::int64_t t = 500;
  const std::uint64_t trials = 100000;
  std::vector<double> freq(7, 0.0);
  for (std::uint64_t i = 0; i < trials; ++i) {
    Rng rng = Rng::for_stream(77, i);
    ++freq[static_cast<std::size_t>(c.run_trajectory(1, t, rng))];
  }
  for (double& f : freq) f /= static_cast<double>(trials);
  CHECK(total_variation(freq, c.evolve_exact(1, t)) < 0.01);
}

TEST_CASE("accelerated step") {
  const WeightChain c2 = WeightChain::build(2);
  Rng rng(31337);
  for (int rep = 0; rep < 100; ++rep)
    CHECK(c2.accelerated_step(1, rng).first == 2);  // down(1) = 0

  CHECK_THROWS_AS(c2.accelerated_step(0, rng), domain_error);

  // mean wait at (n=4, l=2) is (1-p)/p with p = 7/15
  const WeightChain c4 = WeightChain::build(4);
  const double p = 7.0 / 15;
  double sum = 0.0, sumsq = 0.0;
  const std::uint64_t draws = 1000000;
  for (std::uint64_t i = 0; i < draws; ++i) {
    const auto w = static_cast<double>(c4.accelerated_step(2, rng).second);
    sum += w;
    sumsq += w * w;
  }
  const double mean = sum / static_cast<double>(draws);
  const double var = sumsq / static_cast<double>(draws) - mean * mean;
  const double expect = (1 - p) / p;  // 8/7
  CHECK(std::abs(mean - expect) < 3 * std::sqrt(var / static_cast<double>(draws)));
}

namespace {

// Empirical hitting times of the target r from l: one via plain steps, one
// via the move+wait composition. Returns sorted samples.
std::vector<double> hit_direct(const WeightChain& c, int l, int r,
                               std::uint64_t trials, std::uint64_t seed) {
  std::vector<double> out;
  for (std::uint64_t i = 0; i < trials; ++i) {
    Rng rng = Rng::for_stream(seed, i);
    int x = l;
    std::uint64_t t = 0;
    while (x < r) {
      x = c.step(x, rng);
      ++t;
    }
    out.push_back(static_cast<double>(t));
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<double> hit_accelerated(const WeightChain& c, int l, int r,
                                    std::uint64_t trials, std::uint64_t seed) {
  std::vector<double> out;
  for (std::uint64_t i = 0; i < trials; ++i) {
    Rng rng = Rng::for_stream(seed, i);
    int y = l;
    std::uint64_t t = 0;
    while (y < r) {
      const auto [next, wait] = c.accelerated_step(y, rng);
      t += wait + 1;
      y = next;
    }
    out.push_back(static_cast<double>(t));
  }
  std::sort(out.begin(), out.end());
  return out;
}

double ks_distance(const std::vector<double>& a, const std::vector<double>& b) {
  double ks = 0.0;
  std::size_t ia = 0, ib = 0;
  while (ia < a.size() || ib < b.size()) {
    double v;
    if (ia == a.size())
      v = b[ib];
    else if (ib == b.size())
      v = a[ia];
    else
      v = std::min(a[ia], b[ib]);
    while (ia < a.size() && a[ia] == v) ++ia;  // evaluate F after all ties
    while (ib < b.size() && b[ib] == v) ++ib;
    ks = std::max(ks, std::abs(static_cast<double>(ia) / a.size() -
                               static_cast<double>(ib) / b.size()));
  }
  return ks;
}

}  // namespace

TEST_CASE("accelerated and direct hitting laws agree (KS < 0.02)") {
  const WeightChain c = WeightChain::build(6);
  const auto direct = hit_direct(c, 1, 4, 100000, 1001);
  const auto accel = hit_accelerated(c, 1, 4, 100000, 2002);
  CHECK(ks_distance(direct, accel) < 0.02);
}

TEST_CASE("hitting_time_mc") {
  const WeightChain c2 = WeightChain::build(2);

  // start == target: recorded as immediate
  const HittingStats same = hitting_time_mc(c2, 1, 1, 100, 1000, 3, 1);
  CHECK(same.trials == 100);
  CHECK(same.censored == 0);
  CHECK(same.times.quantile(1.0) == 0);

  // n=2: T ~ 1 + Geometric(0.6), mean 5/3
  const HittingStats g = hitting_time_mc(c2, 1, 2, 1000000, 10000, 4);
  CHECK(g.censored == 0);
  const double mean = g.times.mean();
  const double sigma_mean = std::sqrt((0.4 / 0.36) / 1e6);
  CHECK(std::abs(mean - 5.0 / 3) < 3 * sigma_mean);
  for (std::size_t v = 0; v < g.times.counts.size(); ++v)
    if (g.times.counts[v]) CHECK(v >= 1);

  CHECK_THROWS_AS(hitting_time_mc(c2, 1, 3, 10, 100, 5), domain_error);

  // censoring is reported, not dropped
  const WeightChain c64 = WeightChain::build(64);
  const HittingStats cens = hitting_time_mc(c64, 1, 64, 200, 50, 6);
  CHECK(cens.trials == 200);
  CHECK(cens.censored > 0);
  CHECK(cens.times.total + cens.censored == cens.trials);
}

TEST_CASE("reference points and drift") {
  const ReferencePoints rp = reference_points(100, 0.05);
  CHECK(rp.r_minus == 70);
  CHECK(rp.r_plus == 80);
  CHECK(rp.drift_ok);
  CHECK(3.0 * (100 - 69) / (69 - 1) >= 1.1);  // drift margin at x = r- - 1

  CHECK_THROWS_AS(reference_points(100, 1.0 / 16.0), domain_error);
  CHECK_THROWS_AS(reference_points(100, 0.0), domain_error);
}

TEST_CASE("theorem bound report") {
  // t=0 is degenerate: lhs = 1 at k = start, and the bound fails honestly
  const BoundReport degenerate = check_theorem_bound(64, 1, 1, 0, 0.1, 1.0);
  CHECK(degenerate.lhs == 1.0);
  CHECK_FALSE(degenerate.pass);

  // converged bulk point: the stationary term alone dominates
  {
    const WeightChain c = WeightChain::build(32);
    const auto dist = c.evolve_exact(1, 3200);
    const auto pi = c.stationary();
    CHECK(dist[24] <= std::pow(4.0, 0.1 * 32) * pi[24]);
  }

  // full sweep at n=64, t = ceil(4 n log2(n)^2): pass for every k
  const std::int64_t t = 4 * 64 * 6 * 6;
  for (int k = 1; k <= 64; ++k) {
    const BoundReport rep = check_theorem_bound(64, 1, k, t, 0.1, 1.0);
    CHECK(rep.pass);
  }
}

// Binomial-coefficient and binary-entropy estimates used by the bound
// machinery, checked on wide grids.
TEST_CASE("binomial sum bound: sum_{k<=an} C(n,k) <= 2^{n h(a)} for a <= 1/2") {
  for (int n = 10; n <= 200; n += 10) {
    std::vector<double> binom(static_cast<std::size_t>(n) + 1, 0.0);
    binom[0] = 1.0;
    for (int k = 1; k <= n; ++k)
      binom[static_cast<std::size_t>(k)] =
          binom[static_cast<std::size_t>(k - 1)] * (n - k + 1) / k;
    for (int pct = 1; pct <= 50; ++pct) {
      const int kmax = (n * pct) / 100;  // alpha' = kmax/n, alpha' n integer
      const double alpha = static_cast<double>(kmax) / n;
      double sum = 0.0;
      for (int k = 0; k <= kmax; ++k) sum += binom[static_cast<std::size_t>(k)];
      CHECK(std::log2(sum) <= n * binary_entropy(alpha) + 1e-9);
    }
  }
}

TEST_CASE("binomial point bound: C(n,an) >= 2^{n h(a)} / (n+1)") {
  for (int n = 10; n <= 200; n += 10) {
    for (int pct = 1; pct <= 99; ++pct) {
      const int k = (n * pct) / 100;
      const double alpha = static_cast<double>(k) / n;
      CHECK(log2_binom(n, k) >=
            n * binary_entropy(alpha) - std::log2(n + 1.0) - 1e-9);
    }
  }
}

TEST_CASE("entropy increments: |h(a+d) - h(a)| <= h(d)") {
  for (int ai = 1; ai <= 99; ++ai) {
    for (int di = 1; di <= 99 - ai; ++di) {
      const double a = ai / 100.0;
      const double d = di / 100.0;
      CHECK(std::abs(binary_entropy(a + d) - binary_entropy(a)) <=
            binary_entropy(d) + 1e-12);
    }
  }
}

TEST_CASE("entropy sqrt bound: h(a) <= 2 sqrt(a(1-a))") {
  for (int ai = 1; ai <= 99; ++ai) {
    const double a = ai / 100.0;
    CHECK(binary_entropy(a) <= 2.0 * std::sqrt(a * (1.0 - a)) + 1e-12);
  }
}
