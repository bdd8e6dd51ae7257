#include "rqc/string_chain.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include <boost/math/distributions/chi_squared.hpp>

#include "rqc/errors.hpp"
#include "rqc/parallel.hpp"

namespace rqc {

namespace {

// Decode v in [1,15] as the two-site label (v >> 2, v & 3).
inline void set_pair(PauliString& p, int i, int j, unsigned v) {
  p.set_site(i, static_cast<std::uint8_t>(v >> 2));
  p.set_site(j, static_cast<std::uint8_t>(v & 3u));
}

}  // namespace

void q_step(PauliString& p, Rng& rng) {
  auto [i, j] = rng.ordered_pair(p.sites());
  if (p.site(i) == 0 && p.site(j) == 0) return;
  set_pair(p, i, j, 1 + static_cast<unsigned>(rng.below(15)));
}

void r_tilde_step(PauliString& p, Rng& rng) {
  auto [i, j] = rng.ordered_pair(p.sites());
  std::uint8_t a = p.site(i);
  std::uint8_t b = p.site(j);
  if (a == 0 && b == 0) return;
  if (a != 0) a = static_cast<std::uint8_t>(1 + rng.below(3));
  if (b != 0) b = static_cast<std::uint8_t>(1 + rng.below(3));
  if (rng.below(2)) std::swap(a, b);
  p.set_site(i, a);
  p.set_site(j, b);
}

void q_tilde_step(PauliString& p, Rng& rng) {
  auto [i, j] = rng.ordered_pair(p.sites());
  const std::uint8_t a = p.site(i);
  const std::uint8_t b = p.site(j);
  const int w = (a != 0) + (b != 0);
  if (w == 0) return;
  if (w == 1) {
    // -> weight 2, uniform over the 9 both-nonzero labels
    p.set_site(i, static_cast<std::uint8_t>(1 + rng.below(3)));
    p.set_site(j, static_cast<std::uint8_t>(1 + rng.below(3)));
    return;
  }
  if (rng.below(3) < 2) {
    // -> weight 1, uniform over the 6 single-site labels
    const auto sym = static_cast<std::uint8_t>(1 + rng.below(3));
    if (rng.below(2)) {
      p.set_site(i, sym);
      p.set_site(j, 0);
    } else {
      p.set_site(i, 0);
      p.set_site(j, sym);
    }
  } else {
    p.set_site(i, static_cast<std::uint8_t>(1 + rng.below(3)));
    p.set_site(j, static_cast<std::uint8_t>(1 + rng.below(3)));
  }
}

PauliString two_phase_sample(const PauliString& mu, std::int64_t t, Rng& rng) {
  if (t < 0) throw domain_error("two_phase_sample: negative step count");
  PauliString p = mu;
  const std::uint64_t t1 = rng.binomial(static_cast<std::uint64_t>(t), 0.6);
  for (std::uint64_t s = 0; s < t1; ++s) q_tilde_step(p, rng);
  for (std::uint64_t s = t1; s < static_cast<std::uint64_t>(t); ++s)
    r_tilde_step(p, rng);
  return p;
}

namespace {

// Exact transition list of one pair kernel applied to the pair label (a,b).
// Entries accumulate to 1 for each kernel.
void local_transitions(StringKernel kernel, unsigned a, unsigned b,
                       std::map<unsigned, Rational>& out) {
  const unsigned in = (a << 2) | b;
  const int w = (a != 0) + (b != 0);
  if (w == 0) {
    out[in] += Rational(1);
    return;
  }
  switch (kernel) {
    case StringKernel::Full:
      for (unsigned v = 1; v < 16; ++v) out[v] += Rational(1, 15);
      break;
    case StringKernel::WeightPreserving: {
      // 1/2 rerandomize nonzero symbols in place, 1/2 rerandomize and swap.
      const Rational third(1, 3);
      std::vector<std::pair<unsigned, Rational>> base;
      if (w == 2) {
        for (unsigned x = 1; x < 4; ++x)
          for (unsigned y = 1; y < 4; ++y)
            base.emplace_back((x << 2) | y, third * third);
      } else if (a != 0) {
        for (unsigned x = 1; x < 4; ++x) base.emplace_back(x << 2, third);
      } else {
        for (unsigned y = 1; y < 4; ++y) base.emplace_back(y, third);
      }
      const Rational half(1, 2);
      for (auto& [v, pr] : base) {
        out[v] += half * pr;
        const unsigned swapped = ((v & 3u) << 2) | (v >> 2);
        out[swapped] += half * pr;
      }
      break;
    }
    case StringKernel::WeightChanging: {
      if (w == 1) {
        for (unsigned x = 1; x < 4; ++x)
          for (unsigned y = 1; y < 4; ++y) out[(x << 2) | y] += Rational(1, 9);
      } else {
        for (unsigned x = 1; x < 4; ++x) {
          out[x << 2] += Rational(2, 3) * Rational(1, 6);
          out[x] += Rational(2, 3) * Rational(1, 6);
        }
        for (unsigned x = 1; x < 4; ++x)
          for (unsigned y = 1; y < 4; ++y)
            out[(x << 2) | y] += Rational(1, 3) * Rational(1, 9);
      }
      break;
    }
  }
}

}  // namespace

StringMatrix StringMatrix::build(int n, StringKernel kernel) {
  if (n < 2) throw domain_error("StringMatrix: n must be >= 2");
  if (n > 6) throw capacity_error("StringMatrix: guarded at n <= 6");
  StringMatrix m;
  m.n_ = n;
  m.kernel_ = kernel;
  const std::uint64_t dim = 1ull << (2 * n);
  m.rows_.resize(dim);

  const Rational pair_weight(1, static_cast<std::int64_t>(n) * (n - 1));
  for (std::uint64_t mu = 0; mu < dim; ++mu) {
    std::map<std::uint32_t, Rational> row;
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        if (i == j) continue;
        // site s holds base-4 digit at shift 2*(n-1-s)
        const int shi = 2 * (n - 1 - i);
        const int shj = 2 * (n - 1 - j);
        const auto a = static_cast<unsigned>((mu >> shi) & 3u);
        const auto b = static_cast<unsigned>((mu >> shj) & 3u);
        std::map<unsigned, Rational> local;
        local_transitions(kernel, a, b, local);
        const std::uint64_t cleared =
            mu & ~((3ull << shi) | (3ull << shj));
        for (const auto& [v, pr] : local) {
          const std::uint64_t nu = cleared |
                                   (static_cast<std::uint64_t>(v >> 2) << shi) |
                                   (static_cast<std::uint64_t>(v & 3u) << shj);
          row[static_cast<std::uint32_t>(nu)] += pair_weight * pr;
        }
      }
    }
    auto& stored = m.rows_[mu];
    stored.assign(row.begin(), row.end());
  }
  return m;
}

std::vector<double> StringMatrix::row_dense(std::uint32_t mu) const {
  std::vector<double> out(dim(), 0.0);
  for (const auto& [nu, pr] : rows_[mu]) out[nu] = to_double(pr);
  return out;
}

std::vector<double> StringMatrix::power_row(std::uint32_t mu,
                                            std::int64_t t) const {
  std::vector<double> v(dim(), 0.0);
  v[mu] = 1.0;
  std::vector<double> next(dim(), 0.0);
  for (std::int64_t s = 0; s < t; ++s) {
    std::fill(next.begin(), next.end(), 0.0);
    for (std::uint64_t row = 0; row < dim(); ++row) {
      const double mass = v[row];
      if (mass == 0.0) continue;
      for (const auto& [nu, pr] : rows_[row]) next[nu] += mass * to_double(pr);
    }
    v.swap(next);
  }
  return v;
}

std::vector<std::vector<double>> StringMatrix::dense() const {
  if (n_ > 4) throw capacity_error("StringMatrix::dense: guarded at n <= 4");
  std::vector<std::vector<double>> out(dim());
  for (std::uint64_t mu = 0; mu < dim(); ++mu) out[mu] = row_dense(static_cast<std::uint32_t>(mu));
  return out;
}

double verify_commutation(int n) {
  if (n > 4) throw capacity_error("verify_commutation: guarded at n <= 4");
  const auto r = StringMatrix::build(n, StringKernel::WeightPreserving).dense();
  const auto q = StringMatrix::build(n, StringKernel::WeightChanging).dense();
  const std::size_t dim = r.size();
  double worst = 0.0;
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t j = 0; j < dim; ++j) {
      double rq = 0.0, qr = 0.0;
      for (std::size_t k = 0; k < dim; ++k) {
        rq += r[i][k] * q[k][j];
        qr += q[i][k] * r[k][j];
      }
      worst = std::max(worst, std::abs(rq - qr));
    }
  }
  return worst;
}

IntersectionChain::IntersectionChain(int n_sites, int weight, int intersection)
    : n(n_sites), k(weight), i(intersection) {
  if (k < 0 || k > n)
    throw domain_error("IntersectionChain: weight outside [0,n]");
  if (i < std::max(0, 2 * k - n) || i > k)
    throw domain_error("IntersectionChain: intersection outside its range");
}

IntersectionChain intersection_step(IntersectionChain state, Rng& rng) {
  const double denom = static_cast<double>(state.n) * (state.n - 1);
  const double up = static_cast<double>(state.k - state.i) * (state.k - state.i) / denom;
  const double down = static_cast<double>(state.i) *
                      (state.n - 2 * state.k + state.i) / denom;
  if (up < 0.0 || down < 0.0 || up + down > 1.0)
    throw std::logic_error("intersection_step: invalid move probabilities");
  const double u = rng.real();
  if (u < up)
    ++state.i;
  else if (u < up + down)
    --state.i;
  return state;
}

std::vector<std::uint64_t> endpoint_histogram(const PauliString& mu,
                                              std::int64_t t,
                                              std::uint64_t trials,
                                              std::uint64_t seed,
                                              int threads) {
  const int n = mu.sites();
  if (n > 10) throw capacity_error("endpoint_histogram: guarded at n <= 10");
  struct Acc {
    std::vector<std::uint64_t> counts;
    void merge(const Acc& o) {
      if (counts.empty()) counts.resize(o.counts.size(), 0);
      for (std::size_t i = 0; i < o.counts.size(); ++i) counts[i] += o.counts[i];
    }
  };
  Acc proto;
  proto.counts.assign(1ull << (2 * n), 0);
  auto body = [&](std::uint64_t, Rng& rng, Acc& acc) {
    PauliString p = mu;
    for (std::int64_t s = 0; s < t; ++s) q_step(p, rng);
    ++acc.counts[p.index()];
  };
  return run_trials_counting(trials, seed, threads, proto, body).counts;
}

ChiSquare chi_square_uniform(std::span<const std::uint64_t> counts) {
  ChiSquare out;
  std::uint64_t total = 0;
  for (auto c : counts) total += c;
  if (counts.size() < 2 || total == 0) return out;

  const double expected_per_cell =
      static_cast<double>(total) / static_cast<double>(counts.size());
  // Merge consecutive cells into groups so each group expects >= 5.
  std::size_t group = 1;
  if (expected_per_cell < 5.0)
    group = static_cast<std::size_t>(std::ceil(5.0 / expected_per_cell));
  const std::size_t ngroups = counts.size() / group;
  if (ngroups < 2) return out;  // not enough mass to test

  double chi2 = 0.0;
  // Cells past ngroups*group fold into the last group.
  std::vector<double> grouped(ngroups, 0.0);
  for (std::size_t i = 0; i < counts.size(); ++i) {
    const std::size_t g = std::min(i / group, ngroups - 1);
    grouped[g] += static_cast<double>(counts[i]);
  }
  std::vector<double> gexp(ngroups, expected_per_cell * static_cast<double>(group));
  gexp[ngroups - 1] =
      expected_per_cell *
      static_cast<double>(counts.size() - (ngroups - 1) * group);
  for (std::size_t g = 0; g < ngroups; ++g) {
    const double d = grouped[g] - gexp[g];
    chi2 += d * d / gexp[g];
  }
  out.chi2 = chi2;
  out.dof = static_cast<int>(ngroups) - 1;
  boost::math::chi_squared dist(out.dof);
  out.pvalue = boost::math::cdf(boost::math::complement(dist, chi2));
  return out;
}

std::vector<ShellReport> empirical_uniformity(const PauliString& mu,
                                              std::int64_t t,
                                              std::uint64_t trials,
                                              std::uint64_t seed,
                                              int threads) {
  const int n = mu.sites();
  const auto hist = endpoint_histogram(mu, t, trials, seed, threads);

  std::vector<ShellReport> reports;
  std::vector<std::vector<std::uint64_t>> shells(static_cast<std::size_t>(n) + 1);
  for (std::uint64_t idx = 0; idx < hist.size(); ++idx) {
    const int w = index_weight(idx);
    shells[static_cast<std::size_t>(w)].push_back(hist[idx]);
  }
  for (int k = 1; k <= n; ++k) {
    const auto& cells = shells[static_cast<std::size_t>(k)];
    ShellReport rep;
    rep.k = k;
    rep.shell_size = cells.size();
    for (auto c : cells) rep.samples += c;
    if (rep.samples >= 10) {
      const ChiSquare cs = chi_square_uniform(cells);
      rep.chi2 = cs.chi2;
      rep.dof = cs.dof;
      rep.pvalue = cs.pvalue;
      rep.tested = cs.dof > 0;
    }
    reports.push_back(rep);
  }
  return reports;
}

}  // namespace rqc
