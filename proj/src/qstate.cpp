#include "sqc/qstate.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>
#include <string>

namespace sqc {

namespace {

std::uint64_t checked_binom_u64(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t r = 1;
  for (std::size_t i = 1; i <= k; ++i) {
    r = r * (n - k + i) / i;  // exact: product of i consecutive ints / i!
  }
  return r;
}

void check_qubit_count(std::size_t n) {
  if (n > 26)
    throw std::invalid_argument("qstate: register of " + std::to_string(n) +
                                " qubits exceeds the supported size");
}

}  // namespace

PureState basis_state(std::size_t n, const std::vector<int>& bits) {
  check_qubit_count(n);
  if (bits.size() != n)
    throw std::invalid_argument("basis_state: bit list length != n");
  std::size_t idx = 0;
  for (int b : bits) {
    if (b != 0 && b != 1)
      throw std::invalid_argument("basis_state: bits must be 0 or 1");
    idx = (idx << 1) | static_cast<std::size_t>(b);
  }
  PureState s;
  s.n_qubits = n;
  s.amps.assign(std::size_t{1} << n, cplx(0.0, 0.0));
  s.amps[idx] = 1.0;
  return s;
}

PureState dicke(std::size_t n, std::size_t ones) {
  check_qubit_count(n);
  if (n == 0) throw std::invalid_argument("dicke: n must be >= 1");
  if (ones > n)
    throw std::invalid_argument("dicke: ones = " + std::to_string(ones) +
                                " out of range for n = " + std::to_string(n));
  const std::uint64_t count = checked_binom_u64(n, ones);
  const double amp = 1.0 / std::sqrt(static_cast<double>(count));
  PureState s;
  s.n_qubits = n;
  s.amps.assign(std::size_t{1} << n, cplx(0.0, 0.0));
  for (std::size_t x = 0; x < s.amps.size(); ++x) {
    if (std::popcount(x) == static_cast<int>(ones)) s.amps[x] = amp;
  }
  return s;
}

PureState tensor(const PureState& a, const PureState& b) {
  check_qubit_count(a.n_qubits + b.n_qubits);
  PureState s;
  s.n_qubits = a.n_qubits + b.n_qubits;
  s.amps.assign(std::size_t{1} << s.n_qubits, cplx(0.0, 0.0));
  const std::size_t nb = std::size_t{1} << b.n_qubits;
  for (std::size_t ia = 0; ia < a.amps.size(); ++ia) {
    if (a.amps[ia] == cplx(0.0, 0.0)) continue;
    for (std::size_t ib = 0; ib < nb; ++ib) {
      s.amps[(ia << b.n_qubits) | ib] = a.amps[ia] * b.amps[ib];
    }
  }
  return s;
}

double state_norm(const PureState& s) { return vec_norm(s.amps); }

void state_normalize(PureState& s) { vec_normalize(s.amps); }

PureState random_state(std::size_t n, std::mt19937_64& rng) {
  check_qubit_count(n);
  std::normal_distribution<double> gauss(0.0, 1.0);
  PureState s;
  s.n_qubits = n;
  s.amps.resize(std::size_t{1} << n);
  for (cplx& z : s.amps) z = cplx(gauss(rng), gauss(rng));
  state_normalize(s);
  return s;
}

ComplexMatrix coefficient_matrix(const PureState& s, std::size_t a) {
  if (a < 1 || a >= s.n_qubits)
    throw std::invalid_argument("coefficient_matrix: cut must satisfy 1 <= a <= n-1");
  const std::size_t rows = std::size_t{1} << a;
  const std::size_t cols = std::size_t{1} << (s.n_qubits - a);
  ComplexMatrix m(rows, cols);
  // The first a qubits are the most significant index bits, so this is a
  // plain row-major reshape.
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = s.amps[(r << (s.n_qubits - a)) | c];
  return m;
}

std::size_t schmidt_rank(const PureState& s, std::size_t a, double tol) {
  const SvdResult f = svd(coefficient_matrix(s, a));
  return numeric_rank(f.s, tol);
}

std::size_t max_chi(const PureState& s, double tol) {
  if (s.n_qubits == 0)
    throw std::invalid_argument("max_chi: empty register");
  if (s.n_qubits == 1) return 1;
  std::size_t best = 0;
  for (std::size_t a = 1; a < s.n_qubits; ++a)
    best = std::max(best, schmidt_rank(s, a, tol));
  return best;
}

DensityMatrix reduced_density(const PureState& s,
                              const std::vector<std::size_t>& keep) {
  if (keep.empty())
    throw std::invalid_argument("reduced_density: keep set is empty");
  std::vector<std::size_t> k = keep;
  std::sort(k.begin(), k.end());
  if (std::adjacent_find(k.begin(), k.end()) != k.end())
    throw std::invalid_argument("reduced_density: duplicate qubit index");
  if (k.front() < 1 || k.back() > s.n_qubits)
    throw std::invalid_argument("reduced_density: qubit index out of range");

  const std::size_t n = s.n_qubits;
  const std::size_t nk = k.size();
  const std::size_t ne = n - nk;

  // Bit offsets (from the least significant end) of kept / traced qubits,
  // listed most significant first so relative qubit order is preserved.
  std::vector<std::size_t> keep_off, env_off;
  std::vector<bool> kept(n + 1, false);
  for (std::size_t q : k) kept[q] = true;
  for (std::size_t q = 1; q <= n; ++q) {
    (kept[q] ? keep_off : env_off).push_back(n - q);
  }

  auto scatter = [](const std::vector<std::size_t>& offsets, std::size_t x) {
    std::size_t full = 0;
    const std::size_t w = offsets.size();
    for (std::size_t b = 0; b < w; ++b) {
      const std::size_t bit = (x >> (w - 1 - b)) & 1u;
      full |= bit << offsets[b];
    }
    return full;
  };

  const std::size_t dim_k = std::size_t{1} << nk;
  const std::size_t dim_e = std::size_t{1} << ne;

  std::vector<std::size_t> keep_scatter(dim_k), env_scatter(dim_e);
  for (std::size_t r = 0; r < dim_k; ++r) keep_scatter[r] = scatter(keep_off, r);
  for (std::size_t e = 0; e < dim_e; ++e) env_scatter[e] = scatter(env_off, e);

  DensityMatrix rho;
  rho.dim = dim_k;
  rho.mat = ComplexMatrix(dim_k, dim_k);
  for (std::size_t r = 0; r < dim_k; ++r) {
    for (std::size_t c = 0; c < dim_k; ++c) {
      cplx acc(0.0, 0.0);
      for (std::size_t e = 0; e < dim_e; ++e) {
        acc += s.amps[keep_scatter[r] | env_scatter[e]] *
               std::conj(s.amps[keep_scatter[c] | env_scatter[e]]);
      }
      rho.mat(r, c) = acc;
    }
  }
  return rho;
}

double fidelity_pure(const DensityMatrix& rho, const PureState& psi) {
  if (rho.dim != psi.amps.size())
    throw std::invalid_argument("fidelity_pure: dimension mismatch");
  const ComplexVector x = mat_vec(rho.mat, psi.amps);
  return std::real(vec_dot(psi.amps, x));
}

cplx overlap(const PureState& a, const PureState& b) {
  if (a.n_qubits != b.n_qubits)
    throw std::invalid_argument("overlap: qubit count mismatch");
  return vec_dot(a.amps, b.amps);
}

PureState apply_local_phase_gate(const PureState& s,
                                 const std::vector<std::size_t>& qubits) {
  std::size_t mask = 0;
  for (std::size_t q : qubits) {
    if (q < 1 || q > s.n_qubits)
      throw std::invalid_argument("apply_local_phase_gate: qubit out of range");
    mask |= std::size_t{1} << (s.n_qubits - q);
  }
  PureState r = s;
  for (std::size_t x = 0; x < r.amps.size(); ++x) {
    if (std::popcount(x & mask) & 1) r.amps[x] = -r.amps[x];
  }
  return r;
}

PureState apply_one_qubit_gate(const PureState& s, std::size_t qubit,
                               const ComplexMatrix& gate) {
  if (qubit < 1 || qubit > s.n_qubits)
    throw std::invalid_argument("apply_one_qubit_gate: qubit out of range");
  if (gate.rows() != 2 || gate.cols() != 2)
    throw std::invalid_argument("apply_one_qubit_gate: gate must be 2x2");
  const std::size_t bit = std::size_t{1} << (s.n_qubits - qubit);
  PureState r = s;
  for (std::size_t x = 0; x < r.amps.size(); ++x) {
    if (x & bit) continue;
    const cplx a0 = s.amps[x];
    const cplx a1 = s.amps[x | bit];
    r.amps[x] = gate(0, 0) * a0 + gate(0, 1) * a1;
    r.amps[x | bit] = gate(1, 0) * a0 + gate(1, 1) * a1;
  }
  return r;
}

double purity(const DensityMatrix& rho) {
  // tr(rho^2) = sum_ij |rho_ij|^2 for Hermitian rho.
  double p = 0.0;
  for (const cplx& z : rho.mat.data()) p += std::norm(z);
  return p;
}

}  // namespace sqc
