#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "rqc/circuit.hpp"
#include "rqc/gates.hpp"
#include "rqc/pauli.hpp"
#include "rqc/rng.hpp"

namespace rqc {

// A state on n A-qubits plus one environment block E of e qubits. Basis
// index is a * 2^e + eidx with A-qubit 0 in the most significant bit of a,
// matching the tensor order of pauli_matrix. Dense storage guarded at
// total dimension 2^12.
class DensityMatrix {
 public:
  DensityMatrix(int a_qubits, int e_qubits, Eigen::MatrixXcd data);

  int a_qubits() const { return a_; }
  int e_qubits() const { return e_; }
  Eigen::Index dim() const { return data_.rows(); }
  const Eigen::MatrixXcd& mat() const { return data_; }
  Eigen::MatrixXcd& mat() { return data_; }

  // Hermiticity / unit trace / eigenvalues >= -1e-9.
  void check_state(double tol = 1e-10) const;

  // --- Initial-state library ---
  // Maximally mixed A with a given environment state.
  static DensityMatrix mixed_times_env(int a_qubits, const Eigen::MatrixXcd& rho_e);
  // First `ebits` A-qubits maximally entangled with E (e_qubits == ebits is
  // the usual choice). The remaining A-qubits are |0> by default; with
  // rest_mixed they are maximally mixed instead, which realizes
  // H2(A|E) = n - 2 ebits (the |0> fill gives H2 = -ebits).
  static DensityMatrix entangled_with_env(int a_qubits, int e_qubits, int ebits,
                                          bool rest_mixed = false);
  // Haar-random joint pure state.
  static DensityMatrix random_pure(int a_qubits, int e_qubits, Rng& rng);
  // |psi_A> x |psi_E> with both factors Haar random.
  static DensityMatrix random_pure_product(int a_qubits, int e_qubits, Rng& rng);

 private:
  int a_ = 0;
  int e_ = 0;
  Eigen::MatrixXcd data_;
};

// Partial trace keeping the listed A-qubits (strictly increasing) and, if
// keep_e, the environment block.
DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const int> keep_a,
                            bool keep_e = true);

// Same, on a raw operator over a_qubits + e_qubits (need not be a state).
Eigen::MatrixXcd partial_trace_matrix(const Eigen::MatrixXcd& m, int a_qubits,
                                      int e_qubits, std::span<const int> keep_a,
                                      bool keep_e = true);

// Environment marginal tr_A rho.
Eigen::MatrixXcd env_marginal(const DensityMatrix& rho);

// Schatten-1 norm of rho - sigma (sum of |eigenvalues|; at most 2).
double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma);
double trace_distance(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b);

// Spectral pseudo-inverse fourth root; eigenvalues below cutoff map to 0.
Eigen::MatrixXcd pseudo_inv_quarter(const Eigen::MatrixXcd& rho_e,
                                    double cutoff = 1e-12);

// rho_E^{-1/4} rho rho_E^{-1/4} with the pseudo-inverse convention.
Eigen::MatrixXcd tilde_state(const DensityMatrix& rho);

// -log2 tr[tilde(rho)^2], in bits; ranges over [-n, n].
double h2_conditional(const DensityMatrix& rho);

// Conjugate a dense operator by a two-qubit unitary whose tensor factors sit
// at the given (distinct) bit positions of the index; first factor at bit1.
void conjugate_two_qubit(Eigen::MatrixXcd& m, int bit1, int bit2,
                         const Eigen::Matrix4cd& u);

// Conjugate rho by a two-qubit unitary on A-qubits (q1, q2).
void apply_two_qubit_gate(DensityMatrix& rho, int q1, int q2,
                          const Eigen::Matrix4cd& u);

// Apply gates in order, each conjugating with a fresh draw from the ensemble.
void apply_circuit(DensityMatrix& rho, std::span<const Gate> gates,
                   GateEnsemble ens, Rng& rng);

}  // namespace rqc
