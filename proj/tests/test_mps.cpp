#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "sqc/cloning.hpp"
#include "sqc/mps.hpp"
#include "sqc/sequential.hpp"

using namespace sqc;

namespace {

PureState bell_pair() {
  PureState s;
  s.n_qubits = 2;
  s.amps.assign(4, 0.0);
  s.amps[0] = s.amps[3] = 1.0 / std::sqrt(2.0);
  return s;
}

double roundtrip_overlap(const PureState& s) {
  const MpsForm f = decompose(s);
  const PureState back = reconstruct(f);
  return std::abs(vec_dot(back.amps, s.amps));
}

}  // namespace

TEST_CASE("Bell pair decomposes with the expected bond data") {
  const MpsForm f = decompose(bell_pair());
  CHECK(f.n == 2);
  CHECK(f.chi == 2);
  REQUIRE(f.lambdas.size() == 1);
  REQUIRE(f.lambdas[0].size() == 2);
  CHECK(f.lambdas[0][0] == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-12));
  CHECK(f.lambdas[0][1] == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-12));
  CHECK(roundtrip_overlap(bell_pair()) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("single-qubit states round-trip") {
  std::mt19937_64 rng(1);
  const PureState s = random_state(1, rng);
  const MpsForm f = decompose(s);
  CHECK(f.chi == 1);
  CHECK(roundtrip_overlap(s) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("product states decompose with trivial bonds") {
  std::mt19937_64 rng(2);
  PureState s = random_state(1, rng);
  for (int i = 0; i < 4; ++i) s = tensor(s, random_state(1, rng));
  const MpsForm f = decompose(s);
  CHECK(f.chi == 1);
  CHECK(roundtrip_overlap(s) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("random states round-trip across many trials") {
  std::mt19937_64 rng(1234);
  for (int trial = 0; trial < 50; ++trial) {
    const PureState s = random_state(8, rng);
    double dev = 0.0;
    const MpsForm f = decompose(s);
    const PureState back = reconstruct(f, &dev);
    CHECK(std::abs(vec_dot(back.amps, s.amps)) >= 1.0 - 1e-8);
    CHECK(dev < 1e-8);
  }
}

TEST_CASE("bond spectra match the bipartite singular values") {
  std::mt19937_64 rng(77);
  const PureState s = random_state(6, rng);
  const MpsForm f = decompose(s);
  for (std::size_t cut = 1; cut < 6; ++cut) {
    const SvdResult direct = svd(coefficient_matrix(s, cut));
    const std::vector<double>& lam = f.lambdas[cut - 1];
    REQUIRE(lam.size() <= direct.s.size());
    for (std::size_t i = 0; i < lam.size(); ++i)
      CHECK(lam[i] == doctest::Approx(direct.s[i]).epsilon(1e-10));
  }
}

TEST_CASE("reported bond dimension equals the true maximum") {
  std::mt19937_64 rng(88);
  for (int n : {2, 4, 6}) {
    const PureState s = random_state(n, rng);
    CHECK(decompose(s).chi == max_chi(s));
  }
  const PureState g = gm_state(BlochQubit{0.0, 0.0}, 3);
  CHECK(decompose(g).chi == 3);
}

TEST_CASE("decompose validates its input") {
  PureState bad = bell_pair();
  bad.amps[0] *= 3.0;  // not normalized
  CHECK_THROWS_AS(decompose(bad), std::invalid_argument);
}

TEST_CASE("emission maps derived from the canonical form obey the sum rule") {
  std::mt19937_64 rng(99);
  for (int n : {2, 3, 5}) {
    const PureState s = random_state(n, rng);
    const MpsForm f = decompose(s);
    const SequentialRecipe recipe = to_isometries(f, f.chi);
    REQUIRE(recipe.steps.size() == static_cast<std::size_t>(n));
    for (const auto& st : recipe.steps) CHECK(isometry_defect(st) < 1e-10);
  }
}

TEST_CASE("the derived chain regenerates the original state") {
  std::mt19937_64 rng(101);
  for (int n : {2, 3, 5}) {
    const PureState s = random_state(n, rng);
    const MpsForm f = decompose(s);
    const SequentialRecipe recipe = to_isometries(f, f.chi);

    ComplexVector init(f.chi, 0.0);
    init[0] = 1.0;  // the chain starts from the first ancilla level
    const JointState joint = run_chain(recipe.steps, init);
    const auto fin = extract_final_ancilla(joint, f.chi);
    CHECK(std::abs(vec_dot(fin.emitted.amps, s.amps)) >= 1.0 - 1e-9);

    // The final ancilla is pinned to the first level by construction.
    CHECK(std::abs(fin.phi_f[0]) == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(std::abs(vec_dot(fin.phi_f, recipe.final_ancilla)) ==
          doctest::Approx(1.0).epsilon(1e-9));
  }
}

TEST_CASE("an undersized ancilla register is rejected") {
  std::mt19937_64 rng(111);
  const PureState s = random_state(4, rng);
  const MpsForm f = decompose(s);
  REQUIRE(f.chi >= 2);
  CHECK_THROWS_AS(to_isometries(f, f.chi - 1), std::invalid_argument);
}

TEST_CASE("oversized ancilla registers embed cleanly") {
  std::mt19937_64 rng(123);
  const PureState s = random_state(3, rng);
  const MpsForm f = decompose(s);
  const SequentialRecipe recipe = to_isometries(f, f.chi + 2);
  for (const auto& st : recipe.steps) CHECK(isometry_defect(st) < 1e-10);

  ComplexVector init(f.chi + 2, 0.0);
  init[0] = 1.0;
  const auto fin =
      extract_final_ancilla(run_chain(recipe.steps, init), f.chi + 2);
  CHECK(std::abs(vec_dot(fin.emitted.amps, s.amps)) >= 1.0 - 1e-9);
}
