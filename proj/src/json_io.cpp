#include "sqc/json_io.hpp"

namespace sqc {

using nlohmann::json;

json json_complex(const cplx& z) { return json::array({z.real(), z.imag()}); }

json json_vector(const ComplexVector& v) {
  json entries = json::array();
  for (const cplx& z : v) entries.push_back(json_complex(z));
  return json{{"dim", v.size()}, {"entries", entries}};
}

json json_matrix(const ComplexMatrix& m) {
  json entries = json::array();
  for (const cplx& z : m.data()) entries.push_back(json_complex(z));
  return json{{"rows", m.rows()}, {"cols", m.cols()}, {"entries", entries}};
}

json json_state(const PureState& s) {
  json entries = json::array();
  for (const cplx& z : s.amps) entries.push_back(json_complex(z));
  return json{{"n_qubits", s.n_qubits}, {"amplitudes", entries}};
}

json json_step(const IsometryStep& st) {
  return json{{"d", st.d},
              {"defect", isometry_defect(st)},
              {"v0", json_matrix(st.v0)},
              {"v1", json_matrix(st.v1)}};
}

json json_mps(const MpsForm& f) {
  json gammas = json::array();
  for (std::size_t l = 0; l < f.n; ++l) {
    gammas.push_back(json{{"site", l + 1},
                          {"g0", json_matrix(f.gammas[l].g0)},
                          {"g1", json_matrix(f.gammas[l].g1)}});
  }
  json lambdas = json::array();
  for (const auto& lam : f.lambdas) lambdas.push_back(lam);
  return json{
      {"n", f.n}, {"chi", f.chi}, {"lambdas", lambdas}, {"gammas", gammas}};
}

json json_clone_report(const CloneRunReport& rep) {
  return json{{"mode", rep.mode},
              {"m", rep.m},
              {"theta", rep.theta},
              {"phi", rep.phi},
              {"d_single", rep.d_single},
              {"d_total", rep.d_total},
              {"branch_probabilities",
               json::array({rep.branch_probabilities[0],
                            rep.branch_probabilities[1]})},
              {"branch_taken", rep.branch_taken},
              {"per_clone_fidelity", rep.per_clone_fidelity},
              {"theory_fidelity", rep.theory_fidelity},
              {"output_overlap_modulus", rep.output_overlap_modulus},
              {"ancilla_purity_final", rep.ancilla_purity_final},
              {"max_isometry_defect", rep.max_isometry_defect},
              {"chi_observed", rep.chi_observed},
              {"output", json_state(rep.output)}};
}

}  // namespace sqc
