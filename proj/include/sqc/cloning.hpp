#pragma once

// Target states of optimal 1 -> M qubit cloning and the coefficient
// sequences that parameterize the sequential machines producing them.
//
// Two families are covered:
//  * universal cloning: M clones plus M-1 anticlones, input anywhere on
//    the Bloch sphere;
//  * economical phase-covariant cloning: M clones (M odd), no anticlones,
//    input restricted to the equator.

#include <cstddef>
#include <vector>

#include "sqc/qstate.hpp"

namespace sqc {

// Input qubit parameterized by Bloch angles:
//   psi = cos(theta/2)|0> + e^{i phi} sin(theta/2)|1>.
// The companion vectors fix the phase conventions used by the target-state
// constructions below; they are chosen so that the map psi -> target is
// linear in the amplitudes of psi (see the calibration test).
struct BlochQubit {
  double theta = 0.0;
  double phi = 0.0;

  ComplexVector psi() const;            // the input state itself
  ComplexVector psi_perp() const;       // orthogonal companion
  ComplexVector psi_star() const;       // bit-flipped conjugate
  ComplexVector psi_star_perp() const;  // orthogonal companion of the above
  PureState state() const;              // psi() as a 1-qubit PureState
};

struct CoefficientSequence {
  std::size_t m_eff = 0;        // number of clone slots of the machine
  std::vector<double> values;   // m_eff entries, unit 2-norm
};

// Universal-cloning weights alpha_j = sqrt(2(m-j) / (m(m+1))), j = 0..m-1.
CoefficientSequence alpha_coeffs(std::size_t m);

// Phase-covariant weights for M = 2k+1 clones:
//   gamma_j = sqrt( binom(k+1, k+1-j) binom(k, j) / binom(2k+1, k+1) ),
// j = 0..k.  The sequence has m_eff = k+1 slots.
CoefficientSequence gamma_coeffs(std::size_t k);

// Optimal universal cloning target on 2m-1 qubits: clones on qubits 1..m,
// anticlones on qubits m+1..2m-1.
PureState gm_state(const BlochQubit& q, std::size_t m);

// Economical phase-covariant cloning target on m qubits (m odd) for the
// equatorial input with azimuth phi.
PureState pc_state(double phi, std::size_t m);

// Closed-form single-clone fidelity of universal cloning: (2m+1) / (3m).
double gm_fidelity(std::size_t m);

// One term of the symmetric-state splitting used by the phase-covariant
// machine: dicke(2k+1, k) = sum_j gamma_j * (left_j tensor right_j) where
// left_j = dicke(k+1, j) and right_j = dicke(k, k-j).
struct PcBranchTerm {
  double gamma = 0.0;
  PureState left;
  PureState right;
};

std::vector<PcBranchTerm> pc_branch_decomposition(std::size_t k);

// Normalized symmetric register of (n_total - n_perp) copies of v_main and
// n_perp copies of v_perp; {v_main, v_perp} must be an orthonormal pair.
PureState symmetric_register(std::size_t n_total, std::size_t n_perp,
                             const ComplexVector& v_main,
                             const ComplexVector& v_perp);

}  // namespace sqc
