#pragma once

// Canonical matrix-product-state form of a qubit register and its
// translation into a sequential emission recipe.
//
// The canonical form stores, per site l, a pair of bond matrices
// Gamma[l]^0, Gamma[l]^1 (left bond x right bond) and, per cut l, the
// Schmidt coefficients lambda[l] (unit 2-norm, descending).  Amplitudes
// are recovered as
//   c_{i_1..i_n} = Gamma[1]^{i_1} diag(lambda[1]) Gamma[2]^{i_2} ...
//                  diag(lambda[n-1]) Gamma[n]^{i_n},
// a 1 x 1 product since the outermost bonds are trivial.

#include <cstddef>
#include <vector>

#include "sqc/qstate.hpp"
#include "sqc/sequential.hpp"

namespace sqc {

struct MpsTensor {
  ComplexMatrix g0;  // Gamma^0, left bond x right bond
  ComplexMatrix g1;  // Gamma^1
};

struct MpsForm {
  std::size_t n = 0;                          // number of sites
  std::vector<MpsTensor> gammas;              // n entries
  std::vector<std::vector<double>> lambdas;   // n-1 entries
  std::size_t chi = 1;                        // max bond dimension
};

// Sweep of singular value decompositions across all contiguous cuts.
// Singular values <= tol * (largest at that cut) are truncated; the state
// must be normalized.
MpsForm decompose(const PureState& s, double tol = 1e-12);

// Contract the form back into amplitudes.  If norm_deviation is non-null it
// receives | ||result|| - 1 | before renormalization.
PureState reconstruct(const MpsForm& f, double* norm_deviation = nullptr);

struct SequentialRecipe {
  std::vector<IsometryStep> steps;
  ComplexVector final_ancilla;  // ancilla state after the last emission
};

// Translate the form into an emission chain on a d-dimensional ancilla.
// Site l maps to step l with V^i = transpose(Gamma[l]^i diag(lambda[l]))
// (last site: transpose(Gamma[n]^i)), embedded in d x d and completed on
// the unused ancilla directions so the isometry sum rule holds exactly.
// Requires d >= chi; running the chain from e_1 reproduces the state.
SequentialRecipe to_isometries(const MpsForm& f, std::size_t d);

}  // namespace sqc
