#include "sqc/mps.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace sqc {

namespace {

std::size_t left_dim(const MpsTensor& t) { return t.g0.rows(); }
std::size_t right_dim(const MpsTensor& t) { return t.g0.cols(); }

}  // namespace

MpsForm decompose(const PureState& s, double tol) {
  if (s.n_qubits < 1)
    throw std::invalid_argument("decompose: need at least one qubit");
  if (std::abs(state_norm(s) - 1.0) > 1e-10)
    throw std::invalid_argument("decompose: state not normalized");
  if (tol < 0.0) throw std::invalid_argument("decompose: negative tol");

  const std::size_t n = s.n_qubits;
  MpsForm f;
  f.n = n;
  f.gammas.resize(n);
  f.lambdas.resize(n >= 1 ? n - 1 : 0);
  f.chi = 1;

  // T carries the not-yet-decomposed right part: chi_{l-1} x 2^(n-l+1).
  std::size_t chi_prev = 1;
  std::vector<double> lambda_prev;  // empty means trivial left bond
  ComplexMatrix t(1, s.amps.size());
  for (std::size_t x = 0; x < s.amps.size(); ++x) t(0, x) = s.amps[x];

  for (std::size_t l = 1; l < n; ++l) {
    const std::size_t rest = std::size_t{1} << (n - l);
    // Reshape T from chi_prev x (2 * rest) to (chi_prev * 2) x rest; the
    // physical bit of site l becomes the low bit of the row index.
    ComplexMatrix m(chi_prev * 2, rest);
    for (std::size_t a = 0; a < chi_prev; ++a)
      for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t x = 0; x < rest; ++x)
          m(a * 2 + i, x) = t(a, i * rest + x);

    SvdResult fac = svd(m);

    // Truncate relative to the leading singular value at this cut.
    const double s_max = fac.s.empty() ? 0.0 : fac.s.front();
    std::size_t chi_l = 0;
    for (double sv : fac.s)
      if (sv > tol * s_max) ++chi_l;
    if (chi_l == 0) chi_l = 1;

    // Renormalize the kept spectrum and rescale the carried remainder so
    // every lambda keeps unit 2-norm.
    double kept = 0.0;
    for (std::size_t j = 0; j < chi_l; ++j) kept += fac.s[j] * fac.s[j];
    const double scale = std::sqrt(kept);

    std::vector<double> lambda(chi_l);
    for (std::size_t j = 0; j < chi_l; ++j) lambda[j] = fac.s[j] / scale;

    MpsTensor g;
    g.g0 = ComplexMatrix(chi_prev, chi_l);
    g.g1 = ComplexMatrix(chi_prev, chi_l);
    for (std::size_t a = 0; a < chi_prev; ++a) {
      // Gamma = diag(lambda_prev)^{-1} U restricted to kept columns.
      const double inv =
          lambda_prev.empty() ? 1.0 : 1.0 / lambda_prev[a];
      for (std::size_t b = 0; b < chi_l; ++b) {
        g.g0(a, b) = fac.u(a * 2 + 0, b) * inv;
        g.g1(a, b) = fac.u(a * 2 + 1, b) * inv;
      }
    }
    f.gammas[l - 1] = std::move(g);
    f.lambdas[l - 1] = lambda;
    f.chi = std::max(f.chi, chi_l);

    // T <- diag(s)/scale * V^dag restricted to kept rows.
    ComplexMatrix tn(chi_l, rest);
    for (std::size_t b = 0; b < chi_l; ++b)
      for (std::size_t x = 0; x < rest; ++x)
        tn(b, x) = (fac.s[b] / scale) * fac.vdag(b, x);
    t = std::move(tn);
    chi_prev = chi_l;
    lambda_prev = std::move(lambda);
  }

  // Last site: Gamma[n]^i_a = T(a, i) / lambda[n-1]_a.
  MpsTensor last;
  last.g0 = ComplexMatrix(chi_prev, 1);
  last.g1 = ComplexMatrix(chi_prev, 1);
  for (std::size_t a = 0; a < chi_prev; ++a) {
    const double inv = lambda_prev.empty() ? 1.0 : 1.0 / lambda_prev[a];
    last.g0(a, 0) = t(a, 0) * inv;
    last.g1(a, 0) = t(a, 1) * inv;
  }
  f.gammas[n - 1] = std::move(last);
  return f;
}

PureState reconstruct(const MpsForm& f, double* norm_deviation) {
  if (f.n < 1 || f.gammas.size() != f.n || f.lambdas.size() != f.n - 1)
    throw std::invalid_argument("reconstruct: malformed MPS form");
  for (std::size_t l = 0; l + 1 < f.n; ++l) {
    if (right_dim(f.gammas[l]) != f.lambdas[l].size() ||
        left_dim(f.gammas[l + 1]) != f.lambdas[l].size())
      throw std::invalid_argument(
          "reconstruct: bond dimension mismatch at cut " +
          std::to_string(l + 1));
  }
  if (left_dim(f.gammas.front()) != 1 || right_dim(f.gammas.back()) != 1)
    throw std::invalid_argument("reconstruct: outer bonds must be trivial");

  // Progressive contraction: partial[x][b] over the growing bit prefix x.
  std::vector<ComplexVector> partial(1, ComplexVector{cplx(1.0, 0.0)});
  for (std::size_t l = 0; l < f.n; ++l) {
    const ComplexMatrix* g[2] = {&f.gammas[l].g0, &f.gammas[l].g1};
    const std::size_t dl = left_dim(f.gammas[l]);
    const std::size_t dr = right_dim(f.gammas[l]);
    std::vector<ComplexVector> next(partial.size() * 2,
                                    ComplexVector(dr, cplx(0.0, 0.0)));
    for (std::size_t x = 0; x < partial.size(); ++x) {
      for (int i = 0; i < 2; ++i) {
        ComplexVector& dst = next[x * 2 + i];
        for (std::size_t a = 0; a < dl; ++a) {
          const cplx src = partial[x][a];
          if (src == cplx(0.0, 0.0)) continue;
          for (std::size_t b = 0; b < dr; ++b) {
            cplx w = (*g[i])(a, b) * src;
            if (l + 1 < f.n) w *= f.lambdas[l][b];
            dst[b] += w;
          }
        }
      }
    }
    partial = std::move(next);
  }

  PureState out;
  out.n_qubits = f.n;
  out.amps.resize(partial.size());
  for (std::size_t x = 0; x < partial.size(); ++x) out.amps[x] = partial[x][0];
  const double dev = std::abs(state_norm(out) - 1.0);
  if (norm_deviation) *norm_deviation = dev;
  state_normalize(out);
  return out;
}

SequentialRecipe to_isometries(const MpsForm& f, std::size_t d) {
  if (f.n < 1) throw std::invalid_argument("to_isometries: empty form");
  if (d < f.chi)
    throw std::invalid_argument(
        "to_isometries: ancilla dimension d = " + std::to_string(d) +
        " is smaller than the bond dimension chi = " + std::to_string(f.chi));

  SequentialRecipe recipe;
  recipe.steps.reserve(f.n);

  for (std::size_t l = 0; l < f.n; ++l) {
    const std::size_t dl = left_dim(f.gammas[l]);
    const std::size_t dr = right_dim(f.gammas[l]);

    // B^i = Gamma^i diag(lambda_l) (plain Gamma on the last site); the
    // step matrix is its transpose so that column = incoming ancilla index.
    IsometryStep st;
    st.d = d;
    st.v0 = ComplexMatrix(d, d);
    st.v1 = ComplexMatrix(d, d);
    for (std::size_t a = 0; a < dl; ++a) {
      for (std::size_t b = 0; b < dr; ++b) {
        const double w = (l + 1 < f.n) ? f.lambdas[l][b] : 1.0;
        st.v0(b, a) = f.gammas[l].g0(a, b) * w;
        st.v1(b, a) = f.gammas[l].g1(a, b) * w;
      }
    }

    // Columns dl..d-1 are never reached when the chain starts from e_1 but
    // still need an isometric completion: extend the stacked (V0 tall over
    // V1) column frame by Gram-Schmidt over canonical directions.
    if (dl < d) {
      std::vector<ComplexVector> frame;  // stacked 2d columns
      frame.reserve(d);
      for (std::size_t a = 0; a < dl; ++a) {
        ComplexVector col(2 * d, cplx(0.0, 0.0));
        for (std::size_t b = 0; b < d; ++b) {
          col[b] = st.v0(b, a);
          col[d + b] = st.v1(b, a);
        }
        frame.push_back(std::move(col));
      }
      for (std::size_t a = dl; a < d; ++a) {
        bool placed = false;
        for (std::size_t cand = 0; cand < 2 * d && !placed; ++cand) {
          ComplexVector e(2 * d, cplx(0.0, 0.0));
          e[cand] = 1.0;
          for (const ComplexVector& col : frame) {
            const cplx proj = vec_dot(col, e);
            for (std::size_t i = 0; i < 2 * d; ++i) e[i] -= proj * col[i];
          }
          const double nn = vec_norm(e);
          if (nn > 0.5) {
            for (cplx& z : e) z /= nn;
            for (std::size_t b = 0; b < d; ++b) {
              st.v0(b, a) = e[b];
              st.v1(b, a) = e[d + b];
            }
            frame.push_back(std::move(e));
            placed = true;
          }
        }
        if (!placed)
          throw NumericError(
              "to_isometries: failed to complete isometry at site " +
                  std::to_string(l + 1),
              0.0);
      }
    }
    recipe.steps.push_back(std::move(st));
  }

  // The right bond of the last site is trivial, so the chain always parks
  // the ancilla in the first basis direction.
  recipe.final_ancilla.assign(d, cplx(0.0, 0.0));
  recipe.final_ancilla[0] = 1.0;
  return recipe;
}

}  // namespace sqc
