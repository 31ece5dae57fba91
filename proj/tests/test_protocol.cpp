#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "sqc/cloning.hpp"
#include "sqc/mps.hpp"
#include "sqc/protocol.hpp"

using namespace sqc;

namespace {

constexpr double kPi = 3.14159265358979323846;

PureState branch_target(CloneMode mode, std::size_t m, int branch) {
  if (mode == CloneMode::universal)
    return gm_state(BlochQubit{branch == 0 ? 0.0 : kPi, 0.0}, m);
  const std::size_t k = (m - 1) / 2;
  return dicke(m, branch == 0 ? k : k + 1);
}

// Chain overlap against a directly built target.
double chain_overlap(const std::vector<IsometryStep>& steps,
                     const PureState& want) {
  ComplexVector init(steps.front().d, 0.0);
  init[0] = 1.0;
  const auto fin = extract_final_ancilla(run_chain(steps, init),
                                         steps.front().d);
  return std::abs(vec_dot(fin.emitted.amps, want.amps));
}

}  // namespace

TEST_CASE("binomial coefficients") {
  CHECK(binomial(0, 0) == 1);
  CHECK(binomial(5, 2) == 10);
  CHECK(binomial(12, 6) == 924);
  CHECK(binomial(3, 5) == 0);
  CHECK_THROWS_AS(binomial(-1, 0), std::invalid_argument);
  CHECK_THROWS_AS(binomial(3, -2), std::invalid_argument);
}

TEST_CASE("emission-history amplitudes: frozen two-clone values") {
  const CoefficientSequence a = alpha_coeffs(2);
  CHECK(c_coefficient(0, 0, a) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(c_coefficient(1, 0, a) ==
        doctest::Approx(std::sqrt(5.0 / 6.0)).epsilon(1e-14));
  CHECK(c_coefficient(0, 1, a) ==
        doctest::Approx(std::sqrt(1.0 / 6.0)).epsilon(1e-14));
  CHECK_THROWS_AS(c_coefficient(2, 1, a), std::invalid_argument);
}

TEST_CASE("emission-history amplitudes sum to unit probability per depth") {
  // sum over histories of length L of binom(L, j) C(L-j, j)^2 = 1.
  for (std::size_t m : {2, 4, 6}) {
    const CoefficientSequence a = alpha_coeffs(m);
    for (std::size_t len = 1; len <= m; ++len) {
      double total = 0.0;
      for (std::size_t j = 0; j <= len; ++j) {
        const double c = c_coefficient(len - j, j, a);
        total += static_cast<double>(binomial(static_cast<long long>(len),
                                              static_cast<long long>(j))) *
                 c * c;
      }
      CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
    }
  }
}

TEST_CASE("two-clone chain: frozen first-step matrices") {
  const auto steps = closed_form_isometries(alpha_coeffs(2));
  REQUIRE(steps.size() == 3);
  REQUIRE(steps[0].d == 2);

  const double a = std::sqrt(5.0 / 6.0), b = std::sqrt(1.0 / 6.0);
  const ComplexMatrix& v0 = steps[0].v0;
  const ComplexMatrix& v1 = steps[0].v1;
  CHECK(std::abs(v0(0, 0) - a) < 1e-12);
  CHECK(std::abs(v0(1, 1) - b) < 1e-12);
  CHECK(std::abs(v0(0, 1)) + std::abs(v0(1, 0)) < 1e-12);
  CHECK(std::abs(v1(1, 0) - b) < 1e-12);
  CHECK(std::abs(v1(0, 1) - a) < 1e-12);
  CHECK(std::abs(v1(0, 0)) + std::abs(v1(1, 1)) < 1e-12);
}

TEST_CASE("closed-form chains satisfy the sum rule at every step") {
  for (std::size_t m = 1; m <= 6; ++m) {
    const auto steps = closed_form_isometries(alpha_coeffs(m));
    REQUIRE(steps.size() == 2 * m - 1);
    for (const auto& st : steps) {
      CHECK(st.d == m);
      CHECK(isometry_defect(st) < 1e-10);
    }
  }
  for (std::size_t k = 0; k <= 3; ++k) {
    const auto steps = closed_form_isometries(gamma_coeffs(k));
    REQUIRE(steps.size() == 2 * k + 1);
    for (const auto& st : steps) CHECK(isometry_defect(st) < 1e-10);
  }
}

TEST_CASE("closed-form chains regenerate the branch targets") {
  for (std::size_t m = 1; m <= 6; ++m) {
    const auto steps = closed_form_isometries(alpha_coeffs(m));
    CHECK(chain_overlap(steps, branch_target(CloneMode::universal, m, 0)) >=
          1.0 - 1e-9);
    CHECK(chain_overlap(flipped_isometries(steps),
                        branch_target(CloneMode::universal, m, 1)) >=
          1.0 - 1e-9);
  }
  for (std::size_t m : {1, 3, 5, 7}) {
    const auto steps = closed_form_isometries(gamma_coeffs((m - 1) / 2));
    CHECK(chain_overlap(steps, branch_target(CloneMode::phase_covariant, m, 0)) >=
          1.0 - 1e-9);
    CHECK(chain_overlap(flipped_isometries(steps),
                        branch_target(CloneMode::phase_covariant, m, 1)) >=
          1.0 - 1e-9);
  }
}

TEST_CASE("closed-form chain agrees with the decomposition-derived chain") {
  // Two independent routes to an emission recipe must generate the same
  // state: closed form vs singular-value sweep of the target itself.
  for (std::size_t m : {2, 3, 4}) {
    const PureState want = branch_target(CloneMode::universal, m, 0);
    const MpsForm f = decompose(want);
    CHECK(f.chi == m);
    const SequentialRecipe recipe = to_isometries(f, m);
    CHECK(chain_overlap(recipe.steps, want) >= 1.0 - 1e-9);

    const auto closed = closed_form_isometries(alpha_coeffs(m));
    CHECK(chain_overlap(closed, want) >= 1.0 - 1e-9);
  }
}

TEST_CASE("a corrupted step is rejected, not silently accepted") {
  auto steps = closed_form_isometries(alpha_coeffs(3));
  steps[1].v0(0, 0) += 0.05;  // break the sum rule
  CHECK(isometry_defect(steps[1]) > 1e-3);
  ComplexVector init(3, 0.0);
  init[0] = 1.0;
  CHECK_THROWS_AS(run_chain(steps, init), NumericError);
}

TEST_CASE("mid-chain ancilla is entangled, final ancilla decoupled") {
  const auto steps = closed_form_isometries(alpha_coeffs(3));
  ComplexVector init(3, 0.0);
  init[0] = 1.0;

  const std::span<const IsometryStep> all(steps);
  const JointState half = run_chain(all.subspan(0, 3), init);
  CHECK(ancilla_purity(half) < 1.0 - 1e-3);

  const JointState full = run_chain(all, init);
  CHECK(ancilla_purity(full) >= 1.0 - 1e-10);
}

TEST_CASE("doubled chain carries both branches in parallel") {
  const std::size_t m = 3;
  const auto s0 = closed_form_isometries(alpha_coeffs(m));
  const auto s1 = flipped_isometries(s0);
  const auto dbl = doubled_isometries(s0, s1);
  REQUIRE(dbl.size() == s0.size());
  for (const auto& st : dbl) {
    CHECK(st.d == 2 * m);
    CHECK(isometry_defect(st) < 1e-10);
  }

  // Feeding (alpha, beta) (x) e_1 runs both branch chains coherently.
  const cplx alpha = 0.6, beta = 0.8;
  ComplexVector init(2 * m, 0.0);
  init[0] = alpha;
  init[m] = beta;
  const JointState joint = run_chain(dbl, init);

  // Each control block must hold its branch amplitude times the factorized
  // single-chain result (final ancilla) (x) (branch target).
  ComplexVector e1(m, 0.0);
  e1[0] = 1.0;
  const auto fin0 = extract_final_ancilla(run_chain(s0, e1), m);
  const auto fin1 = extract_final_ancilla(run_chain(s1, e1), m);

  const std::size_t block = std::size_t{1} << joint.n_emitted;
  cplx ov0 = 0.0, ov1 = 0.0;
  double w0 = 0.0, w1 = 0.0;
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t x = 0; x < block; ++x) {
      const cplx c0 = joint.amps[a * block + x];
      const cplx c1 = joint.amps[(m + a) * block + x];
      w0 += std::norm(c0);
      w1 += std::norm(c1);
      ov0 += std::conj(fin0.phi_f[a] * fin0.emitted.amps[x]) * c0;
      ov1 += std::conj(fin1.phi_f[a] * fin1.emitted.amps[x]) * c1;
    }
  CHECK(w0 == doctest::Approx(std::norm(alpha)).epsilon(1e-10));
  CHECK(w1 == doctest::Approx(std::norm(beta)).epsilon(1e-10));
  CHECK(std::abs(ov0) == doctest::Approx(std::abs(alpha)).epsilon(1e-10));
  CHECK(std::abs(ov1) == doctest::Approx(std::abs(beta)).epsilon(1e-10));
}

TEST_CASE("branch rotation with trivial ancilla is the Hadamard gate") {
  const ComplexVector f0 = {1.0}, f1 = {1.0};
  const ComplexMatrix u = generalized_hadamard(f0, f1);
  REQUIRE(u.rows() == 2);
  const double h = 1.0 / std::sqrt(2.0);
  CHECK(std::abs(u(0, 0) - h) < 1e-12);
  CHECK(std::abs(u(0, 1) - h) < 1e-12);
  CHECK(std::abs(u(1, 0) - h) < 1e-12);
  CHECK(std::abs(u(1, 1) + h) < 1e-12);
}

TEST_CASE("branch rotation is unitary and acts as designed") {
  const std::size_t d = 4;
  ComplexVector f0(d, 0.0), f1(d, 0.0);
  f0[0] = 0.8; f0[2] = 0.6;
  f1[1] = cplx(0.0, 1.0);
  const ComplexMatrix u = generalized_hadamard(f0, f1);
  const ComplexMatrix uu = matmul(adjoint(u), u);
  CHECK(frobenius_distance(uu, ComplexMatrix::identity(2 * d)) < 1e-11);

  // |0> (x) f0 -> (|0> f0 + |1> f1)/sqrt(2)
  ComplexVector in(2 * d, 0.0);
  for (std::size_t a = 0; a < d; ++a) in[a] = f0[a];
  const ComplexVector out = mat_vec(u, in);
  const double h = 1.0 / std::sqrt(2.0);
  for (std::size_t a = 0; a < d; ++a) {
    CHECK(std::abs(out[a] - h * f0[a]) < 1e-11);
    CHECK(std::abs(out[d + a] - h * f1[a]) < 1e-11);
  }
}

TEST_CASE("measurement yields both branches with probability one half") {
  for (std::size_t m : {2, 3}) {
    for (const BlochQubit q :
         {BlochQubit{0.3, 1.0}, BlochQubit{2.0, -0.7}, BlochQubit{kPi / 2, 0.0}}) {
      ProtocolConfig cfg;
      cfg.m = m;
      cfg.branch_policy = BranchPolicy::force0;
      const CloneRunReport rep = clone(cfg, q);
      CHECK(rep.branch_probabilities[0] == doctest::Approx(0.5).epsilon(1e-10));
      CHECK(rep.branch_probabilities[1] == doctest::Approx(0.5).epsilon(1e-10));
    }
  }
}

TEST_CASE("both measurement branches deliver the same corrected state") {
  const BlochQubit q{1.1, 2.3};
  ProtocolConfig cfg;
  cfg.m = 3;
  cfg.branch_policy = BranchPolicy::force0;
  const CloneRunReport rep0 = clone(cfg, q);
  cfg.branch_policy = BranchPolicy::force1;
  const CloneRunReport rep1 = clone(cfg, q);
  CHECK(rep0.branch_taken == 0);
  CHECK(rep1.branch_taken == 1);
  CHECK(std::abs(vec_dot(rep0.output.amps, rep1.output.amps)) >=
        1.0 - 1e-10);
}

TEST_CASE("end-to-end universal run hits the closed-form fidelity") {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  for (std::size_t m : {1, 2, 3, 4, 5}) {
    const BlochQubit q{std::acos(2.0 * uni(rng) - 1.0),
                       2.0 * kPi * uni(rng) - kPi};
    ProtocolConfig cfg;
    cfg.m = m;
    const CloneRunReport rep = clone(cfg, q);
    CHECK(rep.mode == "universal");
    CHECK(rep.d_single == m);
    CHECK(rep.d_total == 2 * m);
    CHECK(rep.chi_observed == m);
    CHECK(rep.max_isometry_defect < 1e-10);
    CHECK(rep.output_overlap_modulus >= 1.0 - 1e-9);
    CHECK(rep.ancilla_purity_final >= 1.0 - 1e-10);
    REQUIRE(rep.per_clone_fidelity.size() == m);
    for (double f : rep.per_clone_fidelity)
      CHECK(std::abs(f - gm_fidelity(m)) < 1e-9);
    CHECK(rep.output.n_qubits == 2 * m - 1);
  }
}

TEST_CASE("end-to-end equatorial run hits the oracle fidelity") {
  for (std::size_t m : {1, 3, 5}) {
    const BlochQubit q{kPi / 2, 0.8};
    ProtocolConfig cfg;
    cfg.mode = CloneMode::phase_covariant;
    cfg.m = m;
    const CloneRunReport rep = clone(cfg, q);
    CHECK(rep.mode == "phase-covariant");
    CHECK(rep.d_single == (m - 1) / 2 + 1);
    CHECK(rep.d_total == m + 1);
    CHECK(rep.output_overlap_modulus >= 1.0 - 1e-9);
    REQUIRE(rep.per_clone_fidelity.size() == m);
    for (double f : rep.per_clone_fidelity)
      CHECK(std::abs(f - rep.theory_fidelity) < 1e-9);
    if (m == 3) CHECK(rep.theory_fidelity == doctest::Approx(5.0 / 6.0));
  }
}

TEST_CASE("single-clone runs return the input unchanged") {
  const BlochQubit q{0.9, -1.4};
  ProtocolConfig cfg;
  cfg.m = 1;
  const CloneRunReport rep = clone(cfg, q);
  CHECK(rep.per_clone_fidelity[0] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::abs(vec_dot(rep.output.amps, q.state().amps)) >=
        1.0 - 1e-10);
}

TEST_CASE("protocol rejects invalid configurations") {
  ProtocolConfig cfg;
  cfg.mode = CloneMode::phase_covariant;
  cfg.m = 4;  // even
  CHECK_THROWS_AS(clone(cfg, BlochQubit{kPi / 2, 0.0}), std::invalid_argument);

  cfg.m = 3;
  CHECK_THROWS_AS(clone(cfg, BlochQubit{0.3, 0.0}),  // off the equator
                  std::invalid_argument);

  ProtocolConfig uni;
  uni.m = 13;
  CHECK_THROWS_AS(clone(uni, BlochQubit{}), std::invalid_argument);
  uni.m = 0;
  CHECK_THROWS_AS(clone(uni, BlochQubit{}), std::invalid_argument);
}

TEST_CASE("clone runs are reproducible for a fixed seed") {
  ProtocolConfig cfg;
  cfg.m = 2;
  cfg.rng_seed = 777;
  const BlochQubit q{1.0, 0.5};
  const CloneRunReport a = clone(cfg, q);
  const CloneRunReport b = clone(cfg, q);
  CHECK(a.branch_taken == b.branch_taken);
  CHECK(std::abs(vec_dot(a.output.amps, b.output.amps)) ==
        doctest::Approx(1.0).epsilon(1e-14));
}
