#include "rqc/density.hpp"

#include <algorithm>
#include <cmath>

#include "rqc/errors.hpp"

namespace rqc {

namespace {

constexpr int kMaxTotalQubits = 12;

using cd = std::complex<double>;

// Insert a zero bit at position `pos` (bits at and above pos shift up).
inline std::uint64_t insert_zero_bit(std::uint64_t x, int pos) {
  const std::uint64_t low = x & ((1ull << pos) - 1);
  return ((x >> pos) << (pos + 1)) | low;
}

}  // namespace

DensityMatrix::DensityMatrix(int a_qubits, int e_qubits, Eigen::MatrixXcd data)
    : a_(a_qubits), e_(e_qubits), data_(std::move(data)) {
  if (a_ < 0 || e_ < 0) throw domain_error("DensityMatrix: negative qubit count");
  if (a_ + e_ > kMaxTotalQubits)
    throw capacity_error("DensityMatrix: total dimension exceeds 2^12");
  const Eigen::Index dim = Eigen::Index(1) << (a_ + e_);
  if (data_.rows() != dim || data_.cols() != dim)
    throw domain_error("DensityMatrix: matrix dimension mismatch");
}

void DensityMatrix::check_state(double tol) const {
  if ((data_ - data_.adjoint()).cwiseAbs().maxCoeff() > tol)
    throw domain_error("DensityMatrix: not Hermitian");
  if (std::abs(data_.trace().real() - 1.0) > tol ||
      std::abs(data_.trace().imag()) > tol)
    throw domain_error("DensityMatrix: trace differs from 1");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(data_, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -1e-9)
    throw domain_error("DensityMatrix: negative eigenvalue");
}

DensityMatrix DensityMatrix::mixed_times_env(int a_qubits,
                                             const Eigen::MatrixXcd& rho_e) {
  const auto de = rho_e.rows();
  int e_qubits = 0;
  while ((Eigen::Index(1) << e_qubits) < de) ++e_qubits;
  if ((Eigen::Index(1) << e_qubits) != de || rho_e.cols() != de)
    throw domain_error("mixed_times_env: environment dimension not a power of 2");
  const Eigen::Index da = Eigen::Index(1) << a_qubits;
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(da * de, da * de);
  const double scale = 1.0 / static_cast<double>(da);
  for (Eigen::Index a = 0; a < da; ++a)
    out.block(a * de, a * de, de, de) = scale * rho_e;
  return DensityMatrix(a_qubits, e_qubits, std::move(out));
}

DensityMatrix DensityMatrix::entangled_with_env(int a_qubits, int e_qubits,
                                                int ebits, bool rest_mixed) {
  if (ebits > a_qubits || ebits > e_qubits)
    throw domain_error("entangled_with_env: more ebits than qubits");
  const Eigen::Index da = Eigen::Index(1) << a_qubits;
  const Eigen::Index de = Eigen::Index(1) << e_qubits;
  const int rest = a_qubits - ebits;
  if (!rest_mixed) {
    Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(da * de);
    const double amp = std::pow(2.0, -0.5 * ebits);
    for (std::uint64_t x = 0; x < (1ull << ebits); ++x) {
      const std::uint64_t a = x << rest;
      const std::uint64_t e = x << (e_qubits - ebits);
      psi(static_cast<Eigen::Index>(a * static_cast<std::uint64_t>(de) + e)) = amp;
    }
    return DensityMatrix(a_qubits, e_qubits, psi * psi.adjoint());
  }
  // Phi^{(ebits)} on (leading A-qubits, E) tensor I/2^rest on the others.
  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(da * de, da * de);
  const double w = std::pow(2.0, -ebits - rest);
  for (std::uint64_t x = 0; x < (1ull << ebits); ++x) {
    for (std::uint64_t y = 0; y < (1ull << ebits); ++y) {
      const std::uint64_t ex = x << (e_qubits - ebits);
      const std::uint64_t ey = y << (e_qubits - ebits);
      for (std::uint64_t r = 0; r < (1ull << rest); ++r) {
        const std::uint64_t ra = ((x << rest) | r) * static_cast<std::uint64_t>(de) + ex;
        const std::uint64_t rb = ((y << rest) | r) * static_cast<std::uint64_t>(de) + ey;
        rho(static_cast<Eigen::Index>(ra), static_cast<Eigen::Index>(rb)) = w;
      }
    }
  }
  return DensityMatrix(a_qubits, e_qubits, std::move(rho));
}

DensityMatrix DensityMatrix::random_pure(int a_qubits, int e_qubits, Rng& rng) {
  const Eigen::Index dim = Eigen::Index(1) << (a_qubits + e_qubits);
  Eigen::VectorXcd psi(dim);
  for (Eigen::Index i = 0; i < dim; ++i) psi(i) = cd(rng.normal(), rng.normal());
  psi.normalize();
  return DensityMatrix(a_qubits, e_qubits, psi * psi.adjoint());
}

DensityMatrix DensityMatrix::random_pure_product(int a_qubits, int e_qubits,
                                                 Rng& rng) {
  const Eigen::Index da = Eigen::Index(1) << a_qubits;
  const Eigen::Index de = Eigen::Index(1) << e_qubits;
  Eigen::VectorXcd pa(da), pe(de);
  for (Eigen::Index i = 0; i < da; ++i) pa(i) = cd(rng.normal(), rng.normal());
  for (Eigen::Index i = 0; i < de; ++i) pe(i) = cd(rng.normal(), rng.normal());
  pa.normalize();
  pe.normalize();
  Eigen::VectorXcd psi(da * de);
  for (Eigen::Index a = 0; a < da; ++a)
    psi.segment(a * de, de) = pa(a) * pe;
  return DensityMatrix(a_qubits, e_qubits, psi * psi.adjoint());
}

Eigen::MatrixXcd partial_trace_matrix(const Eigen::MatrixXcd& in, int a_qubits,
                                      int e_qubits, std::span<const int> keep_a,
                                      bool keep_e) {
  const int n = a_qubits;
  for (std::size_t x = 0; x < keep_a.size(); ++x) {
    if (keep_a[x] < 0 || keep_a[x] >= n)
      throw domain_error("partial_trace: kept qubit out of range");
    if (x > 0 && keep_a[x] <= keep_a[x - 1])
      throw domain_error("partial_trace: kept qubits must be strictly increasing");
  }
  const int m = static_cast<int>(keep_a.size());
  std::vector<int> dropped;
  for (int q = 0; q < n; ++q)
    if (std::find(keep_a.begin(), keep_a.end(), q) == keep_a.end())
      dropped.push_back(q);

  const Eigen::Index de_in = Eigen::Index(1) << e_qubits;
  const Eigen::Index de_out = keep_e ? de_in : 1;
  const Eigen::Index dk = Eigen::Index(1) << m;
  if (in.rows() != (Eigen::Index(1) << n) * de_in)
    throw domain_error("partial_trace: operator dimension mismatch");
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(dk * de_out, dk * de_out);

  auto a_bits = [&](std::uint64_t kept_index, std::uint64_t dropped_index) {
    std::uint64_t a = 0;
    for (int x = 0; x < m; ++x)
      a |= ((kept_index >> (m - 1 - x)) & 1ull) << (n - 1 - keep_a[static_cast<std::size_t>(x)]);
    for (std::size_t x = 0; x < dropped.size(); ++x)
      a |= ((dropped_index >> x) & 1ull) << (n - 1 - dropped[x]);
    return a;
  };

  const std::uint64_t ndrop = 1ull << dropped.size();
  for (Eigen::Index ka = 0; ka < dk; ++ka) {
    for (Eigen::Index kb = 0; kb < dk; ++kb) {
      for (Eigen::Index ea = 0; ea < de_out; ++ea) {
        for (Eigen::Index eb = 0; eb < de_out; ++eb) {
          cd sum = 0.0;
          for (std::uint64_t d = 0; d < ndrop; ++d) {
            const std::uint64_t ra = a_bits(static_cast<std::uint64_t>(ka), d);
            const std::uint64_t rb = a_bits(static_cast<std::uint64_t>(kb), d);
            if (keep_e) {
              sum += in(static_cast<Eigen::Index>(ra) * de_in + ea,
                        static_cast<Eigen::Index>(rb) * de_in + eb);
            } else {
              for (Eigen::Index et = 0; et < de_in; ++et)
                sum += in(static_cast<Eigen::Index>(ra) * de_in + et,
                          static_cast<Eigen::Index>(rb) * de_in + et);
            }
          }
          out(ka * de_out + ea, kb * de_out + eb) = sum;
        }
      }
    }
  }
  return out;
}

DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const int> keep_a,
                            bool keep_e) {
  Eigen::MatrixXcd out = partial_trace_matrix(rho.mat(), rho.a_qubits(),
                                              rho.e_qubits(), keep_a, keep_e);
  return DensityMatrix(static_cast<int>(keep_a.size()),
                       keep_e ? rho.e_qubits() : 0, std::move(out));
}

Eigen::MatrixXcd env_marginal(const DensityMatrix& rho) {
  return partial_trace(rho, {}, true).mat();
}

double trace_distance(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw domain_error("trace_distance: dimension mismatch");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(a - b, Eigen::EigenvaluesOnly);
  return es.eigenvalues().cwiseAbs().sum();
}

double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma) {
  return trace_distance(rho.mat(), sigma.mat());
}

Eigen::MatrixXcd pseudo_inv_quarter(const Eigen::MatrixXcd& rho_e,
                                    double cutoff) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho_e);
  Eigen::VectorXd vals = es.eigenvalues();
  for (Eigen::Index i = 0; i < vals.size(); ++i)
    vals(i) = vals(i) > cutoff ? std::pow(vals(i), -0.25) : 0.0;
  return es.eigenvectors() * vals.asDiagonal() * es.eigenvectors().adjoint();
}

Eigen::MatrixXcd tilde_state(const DensityMatrix& rho) {
  const Eigen::MatrixXcd e14 = pseudo_inv_quarter(env_marginal(rho));
  const Eigen::Index de = e14.rows();
  const Eigen::Index da = rho.dim() / de;
  Eigen::MatrixXcd out(rho.dim(), rho.dim());
  for (Eigen::Index a = 0; a < da; ++a)
    for (Eigen::Index b = 0; b < da; ++b)
      out.block(a * de, b * de, de, de) =
          e14 * rho.mat().block(a * de, b * de, de, de) * e14;
  return out;
}

double h2_conditional(const DensityMatrix& rho) {
  const Eigen::MatrixXcd t = tilde_state(rho);
  return -std::log2(t.squaredNorm());
}

void conjugate_two_qubit(Eigen::MatrixXcd& m, int b1, int b2,
                         const Eigen::Matrix4cd& u) {
  if (b1 == b2) throw domain_error("conjugate_two_qubit: equal bit positions");
  const std::uint64_t o1 = 1ull << b1;
  const std::uint64_t o2 = 1ull << b2;
  const int lo = std::min(b1, b2);
  const int hi = std::max(b1, b2);

  const auto dim = static_cast<std::uint64_t>(m.rows());
  const std::uint64_t groups = dim >> 2;

  // rho <- (U x I) rho: transform row quadruples within each column.
  for (std::uint64_t c = 0; c < dim; ++c) {
    cd* col = m.col(static_cast<Eigen::Index>(c)).data();
    for (std::uint64_t g = 0; g < groups; ++g) {
      const std::uint64_t base = insert_zero_bit(insert_zero_bit(g, lo), hi);
      cd x0 = col[base];
      cd x1 = col[base + o2];
      cd x2 = col[base + o1];
      cd x3 = col[base + o1 + o2];
      col[base]           = u(0, 0) * x0 + u(0, 1) * x1 + u(0, 2) * x2 + u(0, 3) * x3;
      col[base + o2]      = u(1, 0) * x0 + u(1, 1) * x1 + u(1, 2) * x2 + u(1, 3) * x3;
      col[base + o1]      = u(2, 0) * x0 + u(2, 1) * x1 + u(2, 2) * x2 + u(2, 3) * x3;
      col[base + o1 + o2] = u(3, 0) * x0 + u(3, 1) * x1 + u(3, 2) * x2 + u(3, 3) * x3;
    }
  }
  // rho <- rho (U x I)^dagger: transform column quadruples within each row.
  const Eigen::Matrix4cd uc = u.conjugate();
  for (std::uint64_t g = 0; g < groups; ++g) {
    const std::uint64_t base = insert_zero_bit(insert_zero_bit(g, lo), hi);
    for (std::uint64_t r = 0; r < dim; ++r) {
      const auto ri = static_cast<Eigen::Index>(r);
      cd x0 = m(ri, static_cast<Eigen::Index>(base));
      cd x1 = m(ri, static_cast<Eigen::Index>(base + o2));
      cd x2 = m(ri, static_cast<Eigen::Index>(base + o1));
      cd x3 = m(ri, static_cast<Eigen::Index>(base + o1 + o2));
      m(ri, static_cast<Eigen::Index>(base))           = uc(0, 0) * x0 + uc(0, 1) * x1 + uc(0, 2) * x2 + uc(0, 3) * x3;
      m(ri, static_cast<Eigen::Index>(base + o2))      = uc(1, 0) * x0 + uc(1, 1) * x1 + uc(1, 2) * x2 + uc(1, 3) * x3;
      m(ri, static_cast<Eigen::Index>(base + o1))      = uc(2, 0) * x0 + uc(2, 1) * x1 + uc(2, 2) * x2 + uc(2, 3) * x3;
      m(ri, static_cast<Eigen::Index>(base + o1 + o2)) = uc(3, 0) * x0 + uc(3, 1) * x1 + uc(3, 2) * x2 + uc(3, 3) * x3;
    }
  }
}

void apply_two_qubit_gate(DensityMatrix& rho, int q1, int q2,
                          const Eigen::Matrix4cd& u) {
  const int n = rho.a_qubits();
  if (q1 == q2 || q1 < 0 || q2 < 0 || q1 >= n || q2 >= n)
    throw domain_error("apply_two_qubit_gate: bad qubit indices");
  conjugate_two_qubit(rho.mat(), (n - 1 - q1) + rho.e_qubits(),
                      (n - 1 - q2) + rho.e_qubits(), u);
}

void apply_circuit(DensityMatrix& rho, std::span<const Gate> gates,
                   GateEnsemble ens, Rng& rng) {
  for (const Gate& g : gates) {
    const Eigen::Matrix4cd u = sample_gate(ens, rng);
    apply_two_qubit_gate(rho, g.a, g.b, u);
  }
}

}  // namespace rqc
