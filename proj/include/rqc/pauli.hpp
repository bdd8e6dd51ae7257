#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "rqc/rng.hpp"

namespace rqc {

// Per-site relabeling of the non-identity symbols {1,2,3}; entry 0 must be 0.
using SymbolPerm = std::array<std::uint8_t, 4>;

// A length-n string over {0,1,2,3} labelling a tensor product of the four
// single-qubit Pauli matrices. Packed 2 bits per site, site 0 at the least
// significant end of word 0, so weight is a couple of word ops per word.
// Immutable in spirit: chain steps copy or mutate a worker's private value.
class PauliString {
 public:
  PauliString() = default;
  explicit PauliString(int sites);  // all-identity string

  static PauliString from_symbols(std::span<const std::uint8_t> symbols);
  // Parse the textual form, site 1 leftmost (e.g. "1203").
  static PauliString parse(std::string_view text);
  // Inverse of index(); base-4 digits, site 0 the most significant.
  static PauliString from_index(int sites, std::uint64_t index);

  int sites() const { return n_; }

  std::uint8_t site(int i) const {
    return static_cast<std::uint8_t>((words_[static_cast<std::size_t>(i) >> 5] >>
                                      (2 * (i & 31))) &
                                     3u);
  }

  void set_site(int i, std::uint8_t symbol) {
    std::uint64_t& w = words_[static_cast<std::size_t>(i) >> 5];
    const int sh = 2 * (i & 31);
    w = (w & ~(3ull << sh)) | (static_cast<std::uint64_t>(symbol & 3u) << sh);
  }

  // Number of non-identity sites.
  int weight() const;

  bool is_identity() const { return weight() == 0; }

  // Base-4 integer with site 0 as the most significant digit; requires
  // sites() <= 31. Used as the row/column index of the string-space matrices.
  std::uint64_t index() const;

  std::string str() const;

  bool operator==(const PauliString& o) const = default;

 private:
  int n_ = 0;
  std::vector<std::uint64_t> words_;
};

// Count of non-identity base-4 digits of a packed index (2 bits per site).
inline int index_weight(std::uint64_t index) {
  const std::uint64_t nz = (index | (index >> 1)) & 0x5555555555555555ull;
  return static_cast<int>(__builtin_popcountll(nz));
}

// Uniform over all 3^l * C(n,l) strings of weight exactly l.
PauliString sample_uniform_weight(int sites, int weight, Rng& rng);

// Moves the symbol at site i to site perm[i]; perm must be a bijection.
PauliString permute(const PauliString& p, std::span<const int> perm);

// Applies gamma[i] to the symbol at site i; each gamma[i] must fix 0 and
// permute {1,2,3}. Preserves weight.
PauliString relabel(const PauliString& p, std::span<const SymbolPerm> gamma);
// Same relabeling at every site.
PauliString relabel(const PauliString& p, const SymbolPerm& gamma);

// Dense 2^n x 2^n matrix sigma_{p_1} x ... x sigma_{p_n}. Guarded at n <= 12;
// exists for cross-validation against the exact density-matrix engine.
Eigen::MatrixXcd pauli_matrix(const PauliString& p);

}  // namespace rqc
