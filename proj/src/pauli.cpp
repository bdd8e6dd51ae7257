#include "rqc/pauli.hpp"

#include <algorithm>

#include "rqc/errors.hpp"

namespace rqc {

PauliString::PauliString(int sites) : n_(sites) {
  if (sites < 0) throw domain_error("PauliString: negative site count");
  words_.assign(static_cast<std::size_t>((sites + 31) / 32), 0);
}

PauliString PauliString::from_symbols(std::span<const std::uint8_t> symbols) {
  PauliString p(static_cast<int>(symbols.size()));
  for (int i = 0; i < p.n_; ++i) {
    if (symbols[static_cast<std::size_t>(i)] > 3)
      throw domain_error("PauliString: symbol outside {0,1,2,3}");
    p.set_site(i, symbols[static_cast<std::size_t>(i)]);
  }
  return p;
}

PauliString PauliString::parse(std::string_view text) {
  PauliString p(static_cast<int>(text.size()));
  for (int i = 0; i < p.n_; ++i) {
    const char c = text[static_cast<std::size_t>(i)];
    if (c < '0' || c > '3') throw domain_error("PauliString: bad character");
    p.set_site(i, static_cast<std::uint8_t>(c - '0'));
  }
  return p;
}

PauliString PauliString::from_index(int sites, std::uint64_t index) {
  if (sites < 0 || sites > 31)
    throw domain_error("PauliString::from_index: sites outside [0,31]");
  PauliString p(sites);
  for (int i = sites - 1; i >= 0; --i) {
    p.set_site(i, static_cast<std::uint8_t>(index & 3u));
    index >>= 2;
  }
  return p;
}

int PauliString::weight() const {
  int w = 0;
  for (std::uint64_t word : words_) {
    const std::uint64_t nz = (word | (word >> 1)) & 0x5555555555555555ull;
    w += __builtin_popcountll(nz);
  }
  return w;
}

std::uint64_t PauliString::index() const {
  if (n_ > 31) throw capacity_error("PauliString::index: more than 31 sites");
  std::uint64_t idx = 0;
  for (int i = 0; i < n_; ++i) idx = (idx << 2) | site(i);
  return idx;
}

std::string PauliString::str() const {
  std::string s(static_cast<std::size_t>(n_), '0');
  for (int i = 0; i < n_; ++i)
    s[static_cast<std::size_t>(i)] = static_cast<char>('0' + site(i));
  return s;
}

PauliString sample_uniform_weight(int sites, int weight, Rng& rng) {
  if (weight < 0 || weight > sites)
    throw domain_error("sample_uniform_weight: weight outside [0, sites]");
  PauliString p(sites);
  // Partial Fisher-Yates for a uniform `weight`-subset of the sites.
  std::vector<int> order(static_cast<std::size_t>(sites));
  for (int i = 0; i < sites; ++i) order[static_cast<std::size_t>(i)] = i;
  for (int i = 0; i < weight; ++i) {
    const auto j =
        i + static_cast<int>(rng.below(static_cast<std::uint64_t>(sites - i)));
    std::swap(order[static_cast<std::size_t>(i)],
              order[static_cast<std::size_t>(j)]);
    p.set_site(order[static_cast<std::size_t>(i)],
               static_cast<std::uint8_t>(1 + rng.below(3)));
  }
  return p;
}

PauliString permute(const PauliString& p, std::span<const int> perm) {
  const int n = p.sites();
  if (static_cast<int>(perm.size()) != n)
    throw domain_error("permute: permutation size mismatch");
  std::vector<bool> seen(static_cast<std::size_t>(n), false);
  for (int v : perm) {
    if (v < 0 || v >= n || seen[static_cast<std::size_t>(v)])
      throw domain_error("permute: not a bijection on the sites");
    seen[static_cast<std::size_t>(v)] = true;
  }
  PauliString out(n);
  for (int i = 0; i < n; ++i)
    out.set_site(perm[static_cast<std::size_t>(i)], p.site(i));
  return out;
}

namespace {

void check_symbol_perm(const SymbolPerm& g) {
  if (g[0] != 0) throw domain_error("relabel: permutation must fix 0");
  bool seen[4] = {true, false, false, false};
  for (int s = 1; s < 4; ++s) {
    if (g[static_cast<std::size_t>(s)] < 1 || g[static_cast<std::size_t>(s)] > 3 ||
        seen[g[static_cast<std::size_t>(s)]])
      throw domain_error("relabel: not a permutation of {1,2,3}");
    seen[g[static_cast<std::size_t>(s)]] = true;
  }
}

}  // namespace

PauliString relabel(const PauliString& p, std::span<const SymbolPerm> gamma) {
  const int n = p.sites();
  if (static_cast<int>(gamma.size()) != n)
    throw domain_error("relabel: per-site permutation count mismatch");
  PauliString out(n);
  for (int i = 0; i < n; ++i) {
    const SymbolPerm& g = gamma[static_cast<std::size_t>(i)];
    check_symbol_perm(g);
    out.set_site(i, g[p.site(i)]);
  }
  return out;
}

PauliString relabel(const PauliString& p, const SymbolPerm& gamma) {
  check_symbol_perm(gamma);
  PauliString out(p.sites());
  for (int i = 0; i < p.sites(); ++i) out.set_site(i, gamma[p.site(i)]);
  return out;
}

Eigen::MatrixXcd pauli_matrix(const PauliString& p) {
  const int n = p.sites();
  if (n > 12) throw capacity_error("pauli_matrix: guarded at 12 sites");
  using cd = std::complex<double>;
  static const Eigen::Matrix2cd kPauli[4] = {
      (Eigen::Matrix2cd() << 1, 0, 0, 1).finished(),
      (Eigen::Matrix2cd() << 0, 1, 1, 0).finished(),
      (Eigen::Matrix2cd() << 0, cd(0, -1), cd(0, 1), 0).finished(),
      (Eigen::Matrix2cd() << 1, 0, 0, -1).finished()};
  // site 0 is the first tensor factor, i.e. the most significant index bits
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Ones(1, 1);
  for (int i = 0; i < n; ++i) {
    const Eigen::Matrix2cd& f = kPauli[p.site(i)];
    Eigen::MatrixXcd next(out.rows() * 2, out.cols() * 2);
    for (Eigen::Index r = 0; r < out.rows(); ++r)
      for (Eigen::Index c = 0; c < out.cols(); ++c)
        next.block(2 * r, 2 * c, 2, 2) = out(r, c) * f;
    out.swap(next);
  }
  return out;
}

}  // namespace rqc
