#pragma once

// Sequential generation of entangled qubit registers by an ancilla that
// emits one qubit per step.
//
// A step is a pair (V0, V1) of d x d matrices acting on the ancilla, with
// row = ancilla index after the step and column = ancilla index before it.
// Emitting bit i maps the ancilla state a to V_i a, and physicality demands
// the isometry sum rule  V0^dag V0 + V1^dag V1 = I.
//
// Running a chain of n steps on an initial ancilla state produces the joint
// state  sum_{i_1..i_n} (V^{i_n} ... V^{i_1} a_init) (x) |i_1..i_n>,
// stored with the ancilla as the most significant index factor.  Qubit 1 is
// the first qubit emitted (and the most significant bit of the register).

#include <cstddef>
#include <span>
#include <vector>

#include "sqc/linalg.hpp"
#include "sqc/qstate.hpp"

namespace sqc {

struct IsometryStep {
  std::size_t d = 0;  // ancilla dimension
  ComplexMatrix v0;   // applied when emitting |0>
  ComplexMatrix v1;   // applied when emitting |1>
};

// Joint ancilla (x) emitted-qubits state; amps[a * 2^n_emitted + x].
struct JointState {
  std::size_t ancilla_dim = 0;
  std::size_t n_emitted = 0;
  ComplexVector amps;
};

// || V0^dag V0 + V1^dag V1 - I ||_F
double isometry_defect(const IsometryStep& step);

// Same chain with the roles of the emitted bits exchanged (V0 <-> V1).
std::vector<IsometryStep> flipped_isometries(std::vector<IsometryStep> steps);

// Control-qubit extension on a 2d-dimensional ancilla: block-diagonal
// |0><0| (x) s0.v + |1><1| (x) s1.v, with the control the more significant
// factor.  The two chains must agree in length and dimension.
std::vector<IsometryStep> doubled_isometries(
    const std::vector<IsometryStep>& s0, const std::vector<IsometryStep>& s1);

// Run the chain; throws NumericError if the norm drifts beyond tol at any
// step (an isometry-sum-rule violation upstream).
JointState run_chain(std::span<const IsometryStep> steps,
                     const ComplexVector& ancilla_init, double tol = 1e-10);

// Purity tr(rho_A^2) of the ancilla reduced state of a joint state.
double ancilla_purity(const JointState& joint);

struct AncillaFactorization {
  ComplexVector phi_f;  // final ancilla state (largest component real >= 0)
  PureState emitted;    // emitted register
  double purity = 0.0;  // ancilla purity before factorization
};

// Split a decoupled joint state into (final ancilla) (x) (emitted register).
// Throws NumericError when the ancilla purity is below 1 - tol, i.e. the
// ancilla is still entangled with the emitted qubits.
AncillaFactorization extract_final_ancilla(const JointState& joint,
                                           std::size_t d, double tol = 1e-10);

// Apply a unitary to the ancilla factor of a joint state.
JointState apply_ancilla_unitary(const JointState& joint,
                                 const ComplexMatrix& u);

}  // namespace sqc
