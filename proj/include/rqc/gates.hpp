#pragma once

#include <vector>

#include <Eigen/Dense>

#include "rqc/rng.hpp"

namespace rqc {

// Both ensembles share the Haar second moment on two qubits, which is all
// the string chain sees.
enum class GateEnsemble { Haar, Clifford };

// Haar: QR of a complex Ginibre matrix with the phase correction that makes
// the law exactly Haar. Clifford: uniform over the 11520 two-qubit Clifford
// unitaries modulo global phase (table built once).
Eigen::Matrix4cd sample_gate(GateEnsemble ens, Rng& rng);

// The cached two-qubit Clifford group (one representative per phase class).
const std::vector<Eigen::Matrix4cd>& two_qubit_clifford_group();

}  // namespace rqc
