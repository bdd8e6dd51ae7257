#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "rqc/density.hpp"
#include "rqc/pauli.hpp"
#include "rqc/stats.hpp"

namespace rqc {

// Index-space action of a Pauli string: sigma(row, row ^ flip) =
// i^{y_count} * (-1)^{popcount((row ^ flip) & phase)}, zero elsewhere.
struct PauliAction {
  std::uint64_t flip = 0;   // X and Y sites
  std::uint64_t phase = 0;  // Y and Z sites
  int y_count = 0;

  // nu is a packed base-4 string index over `sites` sites.
  static PauliAction from_index(int sites, std::uint64_t nu);

  std::complex<double> entry(std::uint64_t row) const {
    static constexpr std::complex<double> kIPow[4] = {
        {1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    const std::uint64_t col = row ^ flip;
    const int par = __builtin_popcountll(col & phase) & 1;
    const std::complex<double> v = kIPow[y_count & 3];
    return par ? -v : v;
  }
};

// tr[ tr_A[sigma_nu W]^2 ] for a Hermitian operator W on A x E.
double pauli_mass(const Eigen::MatrixXcd& w, int a_qubits, int e_qubits,
                  std::uint64_t nu);

// Sum of pauli_mass over all strings of the given weight, W = tilde(rho).
// Guarded at 6 A-qubits.
double pauli_level_mass(const DensityMatrix& rho, int level);

// Largest eta in [0,3) such that level mass <= 12 n^4 (3-eta)^l C(n,l) for
// every l >= 1 (the l = 0 mass is checked against 12 n^4 directly).
struct LevelMassReport {
  std::vector<double> mass;  // index l = 0..n
  double best_eta = 0.0;
  bool l0_ok = false;
};
LevelMassReport level_mass_report(const DensityMatrix& rho);

// Average of tr[ tilde(rho)_{A_S E}^2 ] over all subsets S of size m.
// Guarded at 8 A-qubits.
double sampled_purity(const DensityMatrix& rho, int m);

// Monte Carlo mean of || tr_{S^c}[U rho U^dag] - I/2^|S| x rho_E ||_1 over
// random circuits, evaluated at every t in the (ascending) grid along the
// same trajectories. Guards: <= 8 A-qubits, <= 4 E-qubits.
struct DecouplingPoint {
  std::int64_t t = 0;
  MeanVar error;
};
std::vector<DecouplingPoint> decoupling_sweep(
    const DensityMatrix& rho, std::span<const int> keep_s,
    std::span<const std::int64_t> t_grid, GateEnsemble ens,
    std::uint64_t trials, std::uint64_t seed, int threads = 0);

MeanVar decoupling_error(const DensityMatrix& rho, std::span<const int> keep_s,
                         std::int64_t t, GateEnsemble ens, std::uint64_t trials,
                         std::uint64_t seed, int threads = 0);

// Gate-level estimate of the t-step string-chain row: the average over
// random circuits of the squared Pauli coefficients of U sigma_mu U^dag,
// against the exact row. Guarded at 4 sites.
struct MomentCheck {
  std::int64_t t = 0;
  std::uint64_t trials = 0;
  std::vector<double> empirical;
  std::vector<double> stderr_emp;
  std::vector<double> exact_row;
  std::vector<double> z;  // (empirical - exact) / stderr; 0 when both agree exactly
};
MomentCheck moment_consistency(const PauliString& mu, std::int64_t t,
                               std::uint64_t trials, GateEnsemble ens,
                               std::uint64_t seed, int threads = 0);

}  // namespace rqc
