#include "rqc/gates.hpp"

#include <array>
#include <complex>
#include <stdexcept>
#include <unordered_map>

namespace rqc {

namespace {

using cd = std::complex<double>;

Eigen::Matrix4cd sample_haar(Rng& rng) {
  Eigen::Matrix4cd g;
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c)
      g(r, c) = cd(rng.normal(), rng.normal()) * inv_sqrt2;
  Eigen::HouseholderQR<Eigen::Matrix4cd> qr(g);
  Eigen::Matrix4cd q = qr.householderQ();
  const Eigen::Vector4cd d = qr.matrixQR().diagonal();
  for (int c = 0; c < 4; ++c) q.col(c) *= d(c) / std::abs(d(c));
  return q;
}

const std::array<Eigen::Matrix2cd, 4>& paulis1() {
  static const std::array<Eigen::Matrix2cd, 4> p = {
      (Eigen::Matrix2cd() << 1, 0, 0, 1).finished(),
      (Eigen::Matrix2cd() << 0, 1, 1, 0).finished(),
      (Eigen::Matrix2cd() << 0, cd(0, -1), cd(0, 1), 0).finished(),
      (Eigen::Matrix2cd() << 1, 0, 0, -1).finished()};
  return p;
}

Eigen::Matrix4cd kron2(const Eigen::Matrix2cd& a, const Eigen::Matrix2cd& b) {
  Eigen::Matrix4cd out;
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c)
      out.block<2, 2>(2 * r, 2 * c) = a(r, c) * b;
  return out;
}

// Identify U P U^dagger as a signed two-qubit Pauli; 5 bits per generator
// image (pauli index + sign) make a 20-bit canonical key, which is exact
// integer data even though the matrices are floating point.
std::uint32_t tableau_key(const Eigen::Matrix4cd& u) {
  static const std::array<Eigen::Matrix4cd, 4> gen = {
      kron2(paulis1()[1], paulis1()[0]), kron2(paulis1()[3], paulis1()[0]),
      kron2(paulis1()[0], paulis1()[1]), kron2(paulis1()[0], paulis1()[3])};
  std::uint32_t key = 0;
  for (int g = 0; g < 4; ++g) {
    const Eigen::Matrix4cd m = u * gen[static_cast<std::size_t>(g)] * u.adjoint();
    int found = -1;
    int sign = 0;
    for (int p = 0; p < 16; ++p) {
      const Eigen::Matrix4cd pm = kron2(paulis1()[static_cast<std::size_t>(p >> 2)],
                                        paulis1()[static_cast<std::size_t>(p & 3)]);
      const cd overlap = (pm.adjoint() * m).trace() / 4.0;
      if (std::abs(overlap) > 0.5) {
        found = p;
        sign = overlap.real() > 0.0 ? 0 : 1;
        break;
      }
    }
    if (found < 0) throw std::logic_error("clifford table: non-Pauli image");
    key |= static_cast<std::uint32_t>((found << 1) | sign) << (5 * g);
  }
  return key;
}

std::vector<Eigen::Matrix4cd> build_clifford_group() {
  const cd i1(0, 1);
  Eigen::Matrix2cd h;
  h << 1, 1, 1, -1;
  h *= 1.0 / std::sqrt(2.0);
  Eigen::Matrix2cd s;
  s << 1, 0, 0, i1;
  Eigen::Matrix4cd cnot01;
  cnot01 << 1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 1, 0, 0, 1, 0;
  Eigen::Matrix4cd cnot10;
  cnot10 << 1, 0, 0, 0, 0, 0, 0, 1, 0, 0, 1, 0, 0, 1, 0, 0;
  const Eigen::Matrix2cd id2 = Eigen::Matrix2cd::Identity();
  const std::array<Eigen::Matrix4cd, 6> gens = {
      kron2(h, id2), kron2(id2, h), kron2(s, id2),
      kron2(id2, s), cnot01,        cnot10};

  std::vector<Eigen::Matrix4cd> group;
  std::unordered_map<std::uint32_t, std::size_t> seen;
  group.push_back(Eigen::Matrix4cd::Identity());
  seen.emplace(tableau_key(group[0]), 0);
  for (std::size_t head = 0; head < group.size(); ++head) {
    const Eigen::Matrix4cd u = group[head];
    for (const auto& g : gens) {
      Eigen::Matrix4cd v = g * u;
      const std::uint32_t key = tableau_key(v);
      if (seen.emplace(key, group.size()).second) group.push_back(v);
    }
  }
  if (group.size() != 11520)
    throw std::logic_error("clifford table: closure has wrong order");
  return group;
}

}  // namespace

const std::vector<Eigen::Matrix4cd>& two_qubit_clifford_group() {
  static const std::vector<Eigen::Matrix4cd> group = build_clifford_group();
  return group;
}

Eigen::Matrix4cd sample_gate(GateEnsemble ens, Rng& rng) {
  if (ens == GateEnsemble::Haar) return sample_haar(rng);
  const auto& group = two_qubit_clifford_group();
  return group[static_cast<std::size_t>(rng.below(group.size()))];
}

}  // namespace rqc
