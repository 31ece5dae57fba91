#include "sqc/sequential.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

namespace sqc {

double isometry_defect(const IsometryStep& step) {
  const ComplexMatrix sum =
      add(matmul(adjoint(step.v0), step.v0), matmul(adjoint(step.v1), step.v1));
  return frobenius_distance(sum, ComplexMatrix::identity(step.d));
}

std::vector<IsometryStep> flipped_isometries(std::vector<IsometryStep> steps) {
  for (IsometryStep& s : steps) std::swap(s.v0, s.v1);
  return steps;
}

std::vector<IsometryStep> doubled_isometries(
    const std::vector<IsometryStep>& s0, const std::vector<IsometryStep>& s1) {
  if (s0.size() != s1.size())
    throw std::invalid_argument("doubled_isometries: chain lengths differ");
  std::vector<IsometryStep> out;
  out.reserve(s0.size());
  for (std::size_t k = 0; k < s0.size(); ++k) {
    if (s0[k].d != s1[k].d)
      throw std::invalid_argument(
          "doubled_isometries: ancilla dimensions differ at step " +
          std::to_string(k + 1));
    const std::size_t d = s0[k].d;
    IsometryStep st;
    st.d = 2 * d;
    st.v0 = ComplexMatrix(2 * d, 2 * d);
    st.v1 = ComplexMatrix(2 * d, 2 * d);
    for (std::size_t i = 0; i < d; ++i) {
      for (std::size_t j = 0; j < d; ++j) {
        st.v0(i, j) = s0[k].v0(i, j);
        st.v0(d + i, d + j) = s1[k].v0(i, j);
        st.v1(i, j) = s0[k].v1(i, j);
        st.v1(d + i, d + j) = s1[k].v1(i, j);
      }
    }
    out.push_back(std::move(st));
  }
  return out;
}

JointState run_chain(std::span<const IsometryStep> steps,
                     const ComplexVector& ancilla_init, double tol) {
  if (steps.empty()) throw std::invalid_argument("run_chain: no steps");
  const std::size_t d = steps.front().d;
  for (const IsometryStep& s : steps) {
    if (s.d != d)
      throw std::invalid_argument("run_chain: inconsistent ancilla dimension");
    if (s.v0.rows() != d || s.v0.cols() != d || s.v1.rows() != d ||
        s.v1.cols() != d)
      throw std::invalid_argument("run_chain: matrix shape != d x d");
  }
  if (ancilla_init.size() != d)
    throw std::invalid_argument("run_chain: initial ancilla has wrong dimension");
  if (std::abs(vec_norm(ancilla_init) - 1.0) > tol)
    throw std::invalid_argument("run_chain: initial ancilla not normalized");

  JointState j;
  j.ancilla_dim = d;
  j.n_emitted = 0;
  j.amps = ancilla_init;

  for (std::size_t k = 0; k < steps.size(); ++k) {
    const std::size_t nx = std::size_t{1} << j.n_emitted;
    ComplexVector next(d * nx * 2, cplx(0.0, 0.0));
    const ComplexMatrix* v[2] = {&steps[k].v0, &steps[k].v1};
    for (std::size_t a = 0; a < d; ++a) {
      for (std::size_t ap = 0; ap < d; ++ap) {
        const cplx m0 = (*v[0])(ap, a);
        const cplx m1 = (*v[1])(ap, a);
        if (m0 == cplx(0.0, 0.0) && m1 == cplx(0.0, 0.0)) continue;
        for (std::size_t x = 0; x < nx; ++x) {
          const cplx amp = j.amps[a * nx + x];
          if (amp == cplx(0.0, 0.0)) continue;
          if (m0 != cplx(0.0, 0.0)) next[ap * nx * 2 + (x << 1)] += m0 * amp;
          if (m1 != cplx(0.0, 0.0))
            next[ap * nx * 2 + ((x << 1) | 1)] += m1 * amp;
        }
      }
    }
    j.amps = std::move(next);
    j.n_emitted += 1;
    const double norm_dev = std::abs(vec_norm(j.amps) - 1.0);
    if (norm_dev > tol)
      throw NumericError("run_chain: norm drifted by " +
                             std::to_string(norm_dev) + " after step " +
                             std::to_string(k + 1) +
                             " (isometry sum rule violated upstream)",
                         norm_dev);
  }
  return j;
}

double ancilla_purity(const JointState& joint) {
  const std::size_t d = joint.ancilla_dim;
  const std::size_t nx = std::size_t{1} << joint.n_emitted;
  // rho_A = J J^dag with J the d x 2^n amplitude matrix.
  double p = 0.0;
  for (std::size_t a = 0; a < d; ++a) {
    for (std::size_t b = 0; b < d; ++b) {
      cplx acc(0.0, 0.0);
      for (std::size_t x = 0; x < nx; ++x)
        acc += joint.amps[a * nx + x] * std::conj(joint.amps[b * nx + x]);
      p += std::norm(acc);
    }
  }
  return p;
}

AncillaFactorization extract_final_ancilla(const JointState& joint,
                                           std::size_t d, double tol) {
  if (joint.ancilla_dim != d)
    throw std::invalid_argument("extract_final_ancilla: dimension mismatch");

  AncillaFactorization out;
  out.purity = ancilla_purity(joint);
  if (out.purity < 1.0 - tol)
    throw NumericError(
        "extract_final_ancilla: ancilla not decoupled (purity = " +
            std::to_string(out.purity) + ")",
        out.purity);

  const std::size_t nx = std::size_t{1} << joint.n_emitted;
  ComplexMatrix jm(d, nx);
  for (std::size_t a = 0; a < d; ++a)
    for (std::size_t x = 0; x < nx; ++x) jm(a, x) = joint.amps[a * nx + x];

  // Rank-1 factorization J = phi (x) emitted via the dominant singular pair.
  const SvdResult f = svd(jm);
  out.phi_f.resize(d);
  for (std::size_t a = 0; a < d; ++a) out.phi_f[a] = f.u(a, 0);
  out.emitted.n_qubits = joint.n_emitted;
  out.emitted.amps.resize(nx);
  for (std::size_t x = 0; x < nx; ++x)
    out.emitted.amps[x] = f.s[0] * f.vdag(0, x);

  // Deterministic phase: rotate so the largest ancilla component is real
  // and positive, folding the compensating phase into the emitted register.
  std::size_t imax = 0;
  for (std::size_t a = 1; a < d; ++a)
    if (std::abs(out.phi_f[a]) > std::abs(out.phi_f[imax])) imax = a;
  const double mag = std::abs(out.phi_f[imax]);
  if (mag > 0.0) {
    const cplx rot = std::conj(out.phi_f[imax]) / mag;
    for (cplx& z : out.phi_f) z *= rot;
    for (cplx& z : out.emitted.amps) z *= std::conj(rot);
  }
  vec_normalize(out.phi_f);
  state_normalize(out.emitted);

  // Certify the factorization against the joint state itself.
  cplx ov(0.0, 0.0);
  for (std::size_t a = 0; a < d; ++a)
    for (std::size_t x = 0; x < nx; ++x)
      ov += std::conj(out.phi_f[a] * out.emitted.amps[x]) *
            joint.amps[a * nx + x];
  const double modulus = std::abs(ov);
  if (modulus < 1.0 - tol)
    throw NumericError(
        "extract_final_ancilla: factorization overlap only " +
            std::to_string(modulus),
        modulus);
  return out;
}

JointState apply_ancilla_unitary(const JointState& joint,
                                 const ComplexMatrix& u) {
  const std::size_t d = joint.ancilla_dim;
  if (u.rows() != d || u.cols() != d)
    throw std::invalid_argument("apply_ancilla_unitary: shape mismatch");
  const std::size_t nx = std::size_t{1} << joint.n_emitted;
  JointState out;
  out.ancilla_dim = d;
  out.n_emitted = joint.n_emitted;
  out.amps.assign(joint.amps.size(), cplx(0.0, 0.0));
  for (std::size_t ap = 0; ap < d; ++ap) {
    for (std::size_t a = 0; a < d; ++a) {
      const cplx m = u(ap, a);
      if (m == cplx(0.0, 0.0)) continue;
      for (std::size_t x = 0; x < nx; ++x)
        out.amps[ap * nx + x] += m * joint.amps[a * nx + x];
    }
  }
  return out;
}

}  // namespace sqc
