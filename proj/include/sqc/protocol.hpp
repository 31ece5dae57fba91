#pragma once

// The full sequential cloning protocol:
//
//  i.   encode the input amplitudes (alpha, beta) on a control qubit glued
//       to the machine ancilla: phi_I = (alpha, beta) (x) e_1;
//  ii.  run the doubled emission chain, whose control-conditioned blocks
//       are the closed-form step family for the |0> target and its
//       bit-flipped twin for the |1> target;
//  iii. rotate the two possible final ancilla states into each other with
//       a two-dimensional Hadamard extended by the identity;
//  iv.  measure the ancilla; both outcomes occur with probability 1/2;
//  v.   on outcome 1, apply a phase flip to every emitted qubit, which
//       restores the target state up to a global phase.
//
// Ancilla ordering in the doubled machine: (control (x) machine ancilla),
// control most significant, flat index c * d + a.

#include <array>
#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "sqc/cloning.hpp"
#include "sqc/linalg.hpp"
#include "sqc/mps.hpp"
#include "sqc/qstate.hpp"
#include "sqc/sequential.hpp"

namespace sqc {

enum class CloneMode { universal, phase_covariant };

enum class BranchPolicy { random, force0, force1 };

struct ProtocolConfig {
  CloneMode mode = CloneMode::universal;
  std::size_t m = 2;                            // number of clones
  BranchPolicy branch_policy = BranchPolicy::random;
  std::uint64_t rng_seed = 42;
  double tol = 1e-10;
};

struct CloneRunReport {
  std::string mode;
  std::size_t m = 0;
  double theta = 0.0;
  double phi = 0.0;
  std::size_t d_single = 0;  // single-branch ancilla dimension
  std::size_t d_total = 0;   // doubled-machine ancilla dimension
  std::array<double, 2> branch_probabilities{0.0, 0.0};
  int branch_taken = -1;
  std::vector<double> per_clone_fidelity;
  double theory_fidelity = 0.0;        // closed form or oracle value
  double output_overlap_modulus = 0.0; // against the directly built target
  double ancilla_purity_final = 0.0;   // worst single-branch decoupling
  double max_isometry_defect = 0.0;    // over the doubled chain
  std::size_t chi_observed = 0;        // bond dimension of the target
  PureState output;                    // emitted register after correction
};

// Exact binomial coefficient; zero when q > p, error on negative input.
std::uint64_t binomial(long long p, long long q);

// Amplitude of an emission history with i zeros and j ones, given the
// machine weights; the closed-form step entries are ratios of these.
double c_coefficient(std::size_t i, std::size_t j,
                     const CoefficientSequence& coeffs);

// Closed-form emission chain for the |0>-branch target of a machine with
// coeffs.m_eff clone slots: 2*m_eff - 1 steps on an ancilla of dimension
// d = m_eff.  Every step satisfies the isometry sum rule to within tol.
std::vector<IsometryStep> closed_form_isometries(
    const CoefficientSequence& coeffs, double tol = 1e-10);

// Unitary on the doubled ancilla mapping |0> (x) f0 and |1> (x) f1 to their
// sum and difference over sqrt(2), identity on the orthogonal complement.
ComplexMatrix generalized_hadamard(const ComplexVector& f0,
                                   const ComplexVector& f1);

struct MeasureOutcome {
  int branch = -1;
  PureState emitted;
  std::array<double, 2> probabilities{0.0, 0.0};
};

// Project the doubled ancilla onto |b> (x) f_b, normalize the emitted
// register, and undo the relative sign of branch 1 with a phase flip on
// every emitted qubit.
MeasureOutcome measure_and_correct(const JointState& joint,
                                   const ComplexVector& f0,
                                   const ComplexVector& f1,
                                   BranchPolicy policy, std::mt19937_64& rng,
                                   double tol = 1e-10);

// End-to-end protocol run.
CloneRunReport clone(const ProtocolConfig& config, const BlochQubit& q);

}  // namespace sqc
