#include "rqc/decoupler.hpp"

#include <algorithm>
#include <cmath>

#include "rqc/errors.hpp"
#include "rqc/parallel.hpp"
#include "rqc/string_chain.hpp"
#include "rqc/weight_chain.hpp"

namespace rqc {

PauliAction PauliAction::from_index(int sites, std::uint64_t nu) {
  PauliAction act;
  for (int q = 0; q < sites; ++q) {
    // q is both the site's digit position in nu and its bit in the A index
    const auto digit = static_cast<unsigned>((nu >> (2 * q)) & 3u);
    switch (digit) {
      case 1: act.flip |= 1ull << q; break;
      case 2:
        act.flip |= 1ull << q;
        act.phase |= 1ull << q;
        ++act.y_count;
        break;
      case 3: act.phase |= 1ull << q; break;
      default: break;
    }
  }
  return act;
}

double pauli_mass(const Eigen::MatrixXcd& w, int a_qubits, int e_qubits,
                  std::uint64_t nu) {
  const PauliAction act = PauliAction::from_index(a_qubits, nu);
  const std::uint64_t da = 1ull << a_qubits;
  const Eigen::Index de = Eigen::Index(1) << e_qubits;
  double mass = 0.0;
  // m(e,e') = sum_a sigma(a, a^flip) w[(a^flip) e, a e']; tr[m^2] = |m|_F^2
  // since m is Hermitian.
  for (Eigen::Index ea = 0; ea < de; ++ea) {
    for (Eigen::Index eb = 0; eb < de; ++eb) {
      std::complex<double> entry = 0.0;
      for (std::uint64_t a = 0; a < da; ++a) {
        const std::uint64_t b = a ^ act.flip;
        entry += act.entry(a) *
                 w(static_cast<Eigen::Index>(b) * de + ea,
                   static_cast<Eigen::Index>(a) * de + eb);
      }
      mass += std::norm(entry);
    }
  }
  return mass;
}

double pauli_level_mass(const DensityMatrix& rho, int level) {
  const int n = rho.a_qubits();
  if (n > 6) throw capacity_error("pauli_level_mass: guarded at 6 A-qubits");
  if (level < 0 || level > n)
    throw domain_error("pauli_level_mass: level outside [0,n]");
  const Eigen::MatrixXcd w = tilde_state(rho);
  double total = 0.0;
  const std::uint64_t count = 1ull << (2 * n);
  for (std::uint64_t nu = 0; nu < count; ++nu)
    if (index_weight(nu) == level) total += pauli_mass(w, n, rho.e_qubits(), nu);
  return total;
}

LevelMassReport level_mass_report(const DensityMatrix& rho) {
  const int n = rho.a_qubits();
  LevelMassReport rep;
  for (int l = 0; l <= n; ++l) rep.mass.push_back(pauli_level_mass(rho, l));
  const double poly = 12.0 * std::pow(static_cast<double>(n), 4);
  rep.l0_ok = rep.mass[0] <= poly;
  double base = 0.0;  // smallest admissible value of (3 - eta)
  for (int l = 1; l <= n; ++l) {
    const double rhs = rep.mass[static_cast<std::size_t>(l)] /
                       (poly * std::exp2(log2_binom(n, l)));
    base = std::max(base, std::pow(rhs, 1.0 / l));
  }
  rep.best_eta = std::clamp(3.0 - base, 0.0, 3.0);
  return rep;
}

double sampled_purity(const DensityMatrix& rho, int m) {
  const int n = rho.a_qubits();
  if (n > 8) throw capacity_error("sampled_purity: guarded at 8 A-qubits");
  if (m < 0 || m > n) throw domain_error("sampled_purity: m outside [0,n]");
  const Eigen::MatrixXcd w = tilde_state(rho);
  const int e = rho.e_qubits();

  double acc = 0.0;
  std::uint64_t count = 0;
  std::vector<int> subset(static_cast<std::size_t>(m));
  // iterate subsets in combinatorial order
  for (int i = 0; i < m; ++i) subset[static_cast<std::size_t>(i)] = i;
  while (true) {
    acc += partial_trace_matrix(w, n, e, subset, true).squaredNorm();
    ++count;
    int i = m - 1;
    while (i >= 0 && subset[static_cast<std::size_t>(i)] == n - m + i) --i;
    if (i < 0) break;
    ++subset[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < m; ++j)
      subset[static_cast<std::size_t>(j)] = subset[static_cast<std::size_t>(j - 1)] + 1;
  }
  return acc / static_cast<double>(count);
}

std::vector<DecouplingPoint> decoupling_sweep(
    const DensityMatrix& rho, std::span<const int> keep_s,
    std::span<const std::int64_t> t_grid, GateEnsemble ens,
    std::uint64_t trials, std::uint64_t seed, int threads) {
  const int n = rho.a_qubits();
  if (n > 8 || rho.e_qubits() > 4)
    throw capacity_error("decoupling_sweep: guarded at 8 A-qubits, 4 E-qubits");
  if (!std::is_sorted(t_grid.begin(), t_grid.end()))
    throw domain_error("decoupling_sweep: t grid must be ascending");
  if (ens == GateEnsemble::Clifford) two_qubit_clifford_group();  // warm cache

  const DensityMatrix target = DensityMatrix::mixed_times_env(
      static_cast<int>(keep_s.size()), env_marginal(rho));
  const std::vector<int> keep(keep_s.begin(), keep_s.end());
  const std::vector<std::int64_t> grid(t_grid.begin(), t_grid.end());

  auto body = [&](std::uint64_t, Rng& rng, VectorMeanVar& acc) {
    DensityMatrix work = rho;
    std::int64_t done = 0;
    for (std::size_t gi = 0; gi < grid.size(); ++gi) {
      for (; done < grid[gi]; ++done) {
        const Gate g = sample_gate_pair(n, rng);
        apply_two_qubit_gate(work, g.a, g.b, sample_gate(ens, rng));
      }
      const DensityMatrix reduced = partial_trace(work, keep, true);
      acc.add(gi, trace_distance(reduced, target));
    }
  };
  const VectorMeanVar res = run_trials_ordered(
      trials, seed, threads, VectorMeanVar(grid.size()), body, /*block=*/1);

  std::vector<DecouplingPoint> points;
  for (std::size_t gi = 0; gi < grid.size(); ++gi)
    points.push_back({grid[gi], res.comp[gi]});
  return points;
}

MeanVar decoupling_error(const DensityMatrix& rho, std::span<const int> keep_s,
                         std::int64_t t, GateEnsemble ens, std::uint64_t trials,
                         std::uint64_t seed, int threads) {
  const std::int64_t grid[1] = {t};
  return decoupling_sweep(rho, keep_s, grid, ens, trials, seed, threads)[0].error;
}

MomentCheck moment_consistency(const PauliString& mu, std::int64_t t,
                               std::uint64_t trials, GateEnsemble ens,
                               std::uint64_t seed, int threads) {
  const int n = mu.sites();
  if (n > 4) throw capacity_error("moment_consistency: guarded at 4 sites");
  if (n < 2) throw domain_error("moment_consistency: need at least 2 sites");
  if (ens == GateEnsemble::Clifford) two_qubit_clifford_group();  // warm cache

  const std::uint64_t dim = 1ull << (2 * n);
  const Eigen::MatrixXcd start = pauli_matrix(mu);
  const double norm = std::pow(2.0, -n);
  std::vector<PauliAction> actions;
  actions.reserve(dim);
  // The matrix index of site i is bit (n-1-i); PauliAction::from_index reads
  // digit q of nu at bit pair 2q, which is exactly how PauliString::index
  // packs site i there.
  for (std::uint64_t nu = 0; nu < dim; ++nu)
    actions.push_back(PauliAction::from_index(n, nu));

  auto body = [&](std::uint64_t, Rng& rng, VectorMeanVar& acc) {
    Eigen::MatrixXcd m = start;
    for (std::int64_t s = 0; s < t; ++s) {
      const Gate g = sample_gate_pair(n, rng);
      conjugate_two_qubit(m, n - 1 - g.a, n - 1 - g.b, sample_gate(ens, rng));
    }
    for (std::uint64_t nu = 0; nu < dim; ++nu) {
      const PauliAction& act = actions[nu];
      std::complex<double> tr = 0.0;
      for (std::uint64_t r = 0; r < (1ull << n); ++r) {
        const std::uint64_t c = r ^ act.flip;
        tr += act.entry(r) * m(static_cast<Eigen::Index>(c),
                               static_cast<Eigen::Index>(r));
      }
      const double coeff = tr.real() * norm;
      acc.add(nu, coeff * coeff);
    }
  };
  const VectorMeanVar res = run_trials_ordered(
      trials, seed, threads, VectorMeanVar(dim), body, /*block=*/64);

  MomentCheck out;
  out.t = t;
  out.trials = trials;
  out.exact_row = StringMatrix::build(n).power_row(
      static_cast<std::uint32_t>(mu.index()), t);
  for (std::uint64_t nu = 0; nu < dim; ++nu) {
    const MeanVar& mv = res.comp[nu];
    out.empirical.push_back(mv.mean());
    out.stderr_emp.push_back(mv.stderr_mean());
    const double diff = mv.mean() - out.exact_row[nu];
    double z = 0.0;
    if (std::abs(diff) > 1e-12)  // below that both sides agree at double precision
      z = mv.stderr_mean() > 0.0 ? diff / mv.stderr_mean()
                                 : std::numeric_limits<double>::infinity();
    out.z.push_back(z);
  }
  return out;
}

}  // namespace rqc
