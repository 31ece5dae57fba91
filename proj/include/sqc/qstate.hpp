#pragma once

// Pure states and density matrices on qubit registers.
//
// Bit-ordering convention used throughout the project: qubit 1 is the most
// significant bit of the amplitude index.  A register of n qubits stores
// 2^n amplitudes, and basis_state(3, {1,0,1}) sets amplitude index 0b101.
// Qubit indices in the public interface are 1-based.

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

#include "sqc/linalg.hpp"

namespace sqc {

struct PureState {
  std::size_t n_qubits = 0;
  ComplexVector amps;  // size 1 << n_qubits; n_qubits == 0 is a scalar

  PureState() : amps(1, cplx(1.0, 0.0)) {}
  PureState(std::size_t n, ComplexVector a) : n_qubits(n), amps(std::move(a)) {}
};

struct DensityMatrix {
  std::size_t dim = 0;
  ComplexMatrix mat;
};

// Computational basis state from a bit list (bits.size() == n, each 0 or 1).
PureState basis_state(std::size_t n, const std::vector<int>& bits);

// Normalized symmetric (Dicke) state of n qubits with `ones` qubits set.
PureState dicke(std::size_t n, std::size_t ones);

// Kronecker product; `a` occupies the more significant qubits.
PureState tensor(const PureState& a, const PureState& b);

// Norm of the amplitude vector.
double state_norm(const PureState& s);

void state_normalize(PureState& s);

// Haar-ish random state: i.i.d. complex Gaussian amplitudes, normalized.
PureState random_state(std::size_t n, std::mt19937_64& rng);

// Reshape the amplitudes of an n-qubit state into a 2^a x 2^(n-a) matrix;
// rows are indexed by the first a qubits.  Requires 1 <= a <= n-1.
ComplexMatrix coefficient_matrix(const PureState& s, std::size_t a);

// Schmidt rank across the contiguous cut after qubit a.
std::size_t schmidt_rank(const PureState& s, std::size_t a, double tol = 1e-10);

// Maximum Schmidt rank over all contiguous cuts a = 1..n-1 (1 for n == 1).
std::size_t max_chi(const PureState& s, double tol = 1e-10);

// Partial trace onto the qubits listed in `keep` (1-based, no duplicates).
// Kept qubits retain their relative order in the reduced index.
DensityMatrix reduced_density(const PureState& s,
                              const std::vector<std::size_t>& keep);

// <psi| rho |psi>, returned as the real part (imaginary part is rounding).
double fidelity_pure(const DensityMatrix& rho, const PureState& psi);

// <a|b>; throws on qubit-count mismatch.
cplx overlap(const PureState& a, const PureState& b);

// Apply diag(1, -1) on each listed qubit (1-based).
PureState apply_local_phase_gate(const PureState& s,
                                 const std::vector<std::size_t>& qubits);

// Apply a single-qubit gate (2x2) to one qubit of the register.
PureState apply_one_qubit_gate(const PureState& s, std::size_t qubit,
                               const ComplexMatrix& gate);

// Purity tr(rho^2) of a density matrix (real, uses Hermiticity).
double purity(const DensityMatrix& rho);

}  // namespace sqc
