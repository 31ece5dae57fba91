#include "sqc/cloning.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "sqc/protocol.hpp"  // binomial

namespace sqc {

namespace {

constexpr std::size_t kMaxClones = 12;  // hard cap: 2^(2m-1) amplitudes

void check_m(std::size_t m) {
  if (m < 1) throw std::invalid_argument("cloning: m must be >= 1");
  if (m > kMaxClones)
    throw std::invalid_argument("cloning: m = " + std::to_string(m) +
                                " exceeds the hard cap of " +
                                std::to_string(kMaxClones));
}

double binom_d(std::size_t p, std::size_t q) {
  return static_cast<double>(binomial(static_cast<long long>(p),
                                      static_cast<long long>(q)));
}

}  // namespace

ComplexVector BlochQubit::psi() const {
  const double c = std::cos(theta / 2.0), s = std::sin(theta / 2.0);
  return {cplx(c, 0.0), std::polar(s, phi)};
}

ComplexVector BlochQubit::psi_perp() const {
  const double c = std::cos(theta / 2.0), s = std::sin(theta / 2.0);
  return {cplx(s, 0.0), -std::polar(c, phi)};
}

ComplexVector BlochQubit::psi_star() const {
  const double c = std::cos(theta / 2.0), s = std::sin(theta / 2.0);
  return {std::polar(s, -phi), cplx(c, 0.0)};
}

ComplexVector BlochQubit::psi_star_perp() const {
  const double c = std::cos(theta / 2.0), s = std::sin(theta / 2.0);
  return {-std::polar(c, -phi), cplx(s, 0.0)};
}

PureState BlochQubit::state() const { return PureState(1, psi()); }

CoefficientSequence alpha_coeffs(std::size_t m) {
  check_m(m);
  CoefficientSequence c;
  c.m_eff = m;
  c.values.resize(m);
  const double md = static_cast<double>(m);
  for (std::size_t j = 0; j < m; ++j) {
    c.values[j] = std::sqrt(2.0 * (md - static_cast<double>(j)) /
                            (md * (md + 1.0)));
  }
  return c;
}

CoefficientSequence gamma_coeffs(std::size_t k) {
  check_m(2 * k + 1);
  CoefficientSequence c;
  c.m_eff = k + 1;
  c.values.resize(k + 1);
  const double denom = binom_d(2 * k + 1, k + 1);
  for (std::size_t j = 0; j <= k; ++j) {
    c.values[j] =
        std::sqrt(binom_d(k + 1, k + 1 - j) * binom_d(k, j) / denom);
  }
  return c;
}

PureState symmetric_register(std::size_t n_total, std::size_t n_perp,
                             const ComplexVector& v_main,
                             const ComplexVector& v_perp) {
  if (n_total == 0) return PureState();  // empty register: scalar 1
  if (v_main.size() != 2 || v_perp.size() != 2)
    throw std::invalid_argument("symmetric_register: vectors must be 2-dim");
  // Rotate the computational-basis symmetric state qubit by qubit; the
  // basis change U maps |0> -> v_main, |1> -> v_perp.
  ComplexMatrix u(2, 2);
  u(0, 0) = v_main[0];
  u(1, 0) = v_main[1];
  u(0, 1) = v_perp[0];
  u(1, 1) = v_perp[1];
  PureState s = dicke(n_total, n_perp);
  for (std::size_t q = 1; q <= n_total; ++q) s = apply_one_qubit_gate(s, q, u);
  return s;
}

PureState gm_state(const BlochQubit& q, std::size_t m) {
  check_m(m);
  const CoefficientSequence alpha = alpha_coeffs(m);
  const ComplexVector p = q.psi(), pp = q.psi_perp();
  const ComplexVector ps = q.psi_star(), psp = q.psi_star_perp();

  PureState total;
  total.n_qubits = 2 * m - 1;
  total.amps.assign(std::size_t{1} << total.n_qubits, cplx(0.0, 0.0));
  for (std::size_t j = 0; j < m; ++j) {
    // (m-j) copies of psi and j of psi_perp, followed by (m-1-j) copies of
    // psi_star and j of psi_star_perp.
    const PureState clones = symmetric_register(m, j, p, pp);
    const PureState anti = symmetric_register(m - 1, j, ps, psp);
    const PureState term = tensor(clones, anti);
    for (std::size_t x = 0; x < total.amps.size(); ++x)
      total.amps[x] += alpha.values[j] * term.amps[x];
  }
  return total;
}

PureState pc_state(double phi, std::size_t m) {
  check_m(m);
  if (m % 2 == 0)
    throw std::invalid_argument(
        "pc_state: phase-covariant cloning requires an odd number of clones, "
        "got m = " + std::to_string(m));
  const std::size_t k = (m - 1) / 2;
  const PureState low = dicke(m, k);
  const PureState high = dicke(m, k + 1);
  PureState s;
  s.n_qubits = m;
  s.amps.resize(std::size_t{1} << m);
  const cplx w = std::polar(1.0 / std::sqrt(2.0), phi);
  const double inv = 1.0 / std::sqrt(2.0);
  for (std::size_t x = 0; x < s.amps.size(); ++x)
    s.amps[x] = inv * low.amps[x] + w * high.amps[x];
  return s;
}

double gm_fidelity(std::size_t m) {
  check_m(m);
  const double md = static_cast<double>(m);
  return (2.0 * md + 1.0) / (3.0 * md);
}

std::vector<PcBranchTerm> pc_branch_decomposition(std::size_t k) {
  const CoefficientSequence gamma = gamma_coeffs(k);
  std::vector<PcBranchTerm> terms(k + 1);
  for (std::size_t j = 0; j <= k; ++j) {
    terms[j].gamma = gamma.values[j];
    terms[j].left = dicke(k + 1, j);
    terms[j].right = k == 0 ? PureState() : dicke(k, k - j);
  }
  return terms;
}

}  // namespace sqc
