#include "sqc/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace sqc {

namespace {

// Sweep cap and convergence threshold for the Jacobi SVD.  The threshold is
// relative to ||A||_F^2 because the quantities being driven to zero are
// off-diagonal entries of the implicit Gram matrix A^dagger A.
constexpr int kMaxJacobiSweeps = 60;
constexpr double kJacobiOffTol = 1e-14;

double col_norm_sq(const ComplexVector& c) {
  double s = 0.0;
  for (const cplx& z : c) s += std::norm(z);
  return s;
}

}  // namespace

ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows()) {
    throw std::invalid_argument(
        "matmul: inner dimensions differ (" + std::to_string(a.cols()) +
        " vs " + std::to_string(b.rows()) + ")");
  }
  ComplexMatrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const cplx aik = a(i, k);
      if (aik == cplx(0.0, 0.0)) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) {
        c(i, j) += aik * b(k, j);
      }
    }
  }
  return c;
}

ComplexMatrix adjoint(const ComplexMatrix& a) {
  ComplexMatrix t(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) t(j, i) = std::conj(a(i, j));
  return t;
}

ComplexMatrix add(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw std::invalid_argument("add: shape mismatch");
  ComplexMatrix c = a;
  for (std::size_t i = 0; i < c.data().size(); ++i) c.data()[i] += b.data()[i];
  return c;
}

ComplexMatrix sub(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw std::invalid_argument("sub: shape mismatch");
  ComplexMatrix c = a;
  for (std::size_t i = 0; i < c.data().size(); ++i) c.data()[i] -= b.data()[i];
  return c;
}

ComplexMatrix scaled(const ComplexMatrix& a, cplx factor) {
  ComplexMatrix c = a;
  for (cplx& z : c.data()) z *= factor;
  return c;
}

ComplexMatrix outer(const ComplexVector& u, const ComplexVector& v) {
  ComplexMatrix c(u.size(), v.size());
  for (std::size_t i = 0; i < u.size(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j) c(i, j) = u[i] * std::conj(v[j]);
  return c;
}

ComplexVector mat_vec(const ComplexMatrix& a, const ComplexVector& x) {
  if (a.cols() != x.size())
    throw std::invalid_argument("mat_vec: dimension mismatch");
  ComplexVector y(a.rows(), cplx(0.0, 0.0));
  for (std::size_t i = 0; i < a.rows(); ++i) {
    cplx acc(0.0, 0.0);
    for (std::size_t j = 0; j < a.cols(); ++j) acc += a(i, j) * x[j];
    y[i] = acc;
  }
  return y;
}

double frobenius_norm(const ComplexMatrix& a) {
  double s = 0.0;
  for (const cplx& z : a.data()) s += std::norm(z);
  return std::sqrt(s);
}

double frobenius_distance(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw std::invalid_argument("frobenius_distance: shape mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < a.data().size(); ++i)
    s += std::norm(a.data()[i] - b.data()[i]);
  return std::sqrt(s);
}

SvdResult svd(const ComplexMatrix& a) {
  if (a.rows() == 0 || a.cols() == 0)
    throw std::invalid_argument("svd: empty matrix");

  // One-sided Jacobi wants tall matrices; factor the adjoint when wide.
  // A = U S V^dagger  <=>  A^dagger = V S U^dagger.
  if (a.rows() < a.cols()) {
    SvdResult t = svd(adjoint(a));
    SvdResult r;
    r.u = adjoint(t.vdag);
    r.s = t.s;
    r.vdag = adjoint(t.u);
    return r;
  }

  const std::size_t m = a.rows();
  const std::size_t n = a.cols();

  // Work on explicit column vectors; orthogonalize them pairwise while
  // accumulating the applied rotations into V.
  std::vector<ComplexVector> w(n, ComplexVector(m));
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < m; ++i) w[j][i] = a(i, j);

  std::vector<ComplexVector> v(n, ComplexVector(n, cplx(0.0, 0.0)));
  for (std::size_t j = 0; j < n; ++j) v[j][j] = 1.0;

  double fro_sq = 0.0;
  for (const auto& col : w) fro_sq += col_norm_sq(col);

  const double off_tol = kJacobiOffTol * fro_sq;

  if (fro_sq > 0.0) {
    bool converged = false;
    double worst = 0.0;
    for (int sweep = 0; sweep < kMaxJacobiSweeps && !converged; ++sweep) {
      converged = true;
      worst = 0.0;
      for (std::size_t p = 0; p + 1 < n; ++p) {
        for (std::size_t q = p + 1; q < n; ++q) {
          cplx g(0.0, 0.0);
          for (std::size_t i = 0; i < m; ++i) g += std::conj(w[p][i]) * w[q][i];
          const double gabs = std::abs(g);
          worst = std::max(worst, gabs);
          if (gabs <= off_tol) continue;
          converged = false;

          const double app = col_norm_sq(w[p]);
          const double aqq = col_norm_sq(w[q]);

          // Phase-rotate column q so the pair Gram matrix becomes real
          // symmetric, then apply the classical Jacobi rotation.
          const cplx phase = g / gabs;  // e^{i beta}
          const double zeta = (aqq - app) / (2.0 * gabs);
          const double t =
              (zeta >= 0.0 ? 1.0 : -1.0) /
              (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
          const double cs = 1.0 / std::sqrt(1.0 + t * t);
          const double sn = cs * t;

          const cplx ph = std::conj(phase);
          for (std::size_t i = 0; i < m; ++i) {
            const cplx wp = w[p][i];
            const cplx wq = ph * w[q][i];
            w[p][i] = cs * wp - sn * wq;
            w[q][i] = sn * wp + cs * wq;
          }
          for (std::size_t i = 0; i < n; ++i) {
            const cplx vp = v[p][i];
            const cplx vq = ph * v[q][i];
            v[p][i] = cs * vp - sn * vq;
            v[q][i] = sn * vp + cs * vq;
          }
        }
      }
    }
    if (!converged) {
      throw NumericError(
          "svd: Jacobi sweep cap (" + std::to_string(kMaxJacobiSweeps) +
              ") reached before convergence",
          worst);
    }
  }

  std::vector<double> s(n);
  for (std::size_t j = 0; j < n; ++j) s[j] = std::sqrt(col_norm_sq(w[j]));

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&s](std::size_t x, std::size_t y) { return s[x] > s[y]; });

  SvdResult r;
  r.u = ComplexMatrix(m, n);
  r.vdag = ComplexMatrix(n, n);
  r.s.resize(n);

  const double s_max = s.empty() ? 0.0 : s[order[0]];
  const double zero_tol =
      s_max * 1e-15 * static_cast<double>(std::max(m, n));

  std::vector<std::size_t> degenerate;
  for (std::size_t jj = 0; jj < n; ++jj) {
    const std::size_t src = order[jj];
    r.s[jj] = s[src];
    for (std::size_t i = 0; i < n; ++i)
      r.vdag(jj, i) = std::conj(v[src][i]);
    if (s[src] > zero_tol) {
      const double inv = 1.0 / s[src];
      for (std::size_t i = 0; i < m; ++i) r.u(i, jj) = w[src][i] * inv;
    } else {
      degenerate.push_back(jj);
    }
  }

  // Columns belonging to (numerically) zero singular values still need an
  // orthonormal direction; extend with Gram-Schmidt over canonical vectors.
  for (std::size_t jj : degenerate) {
    for (std::size_t cand = 0; cand < m; ++cand) {
      ComplexVector e(m, cplx(0.0, 0.0));
      e[cand] = 1.0;
      for (std::size_t k = 0; k < n; ++k) {
        if (k == jj) continue;
        bool filled = (r.s[k] > zero_tol);
        if (!filled) {
          // Earlier degenerate columns are filled in order.
          filled = (k < jj);
        }
        if (!filled) continue;
        cplx proj(0.0, 0.0);
        for (std::size_t i = 0; i < m; ++i)
          proj += std::conj(r.u(i, k)) * e[i];
        for (std::size_t i = 0; i < m; ++i) e[i] -= proj * r.u(i, k);
      }
      const double nn = std::sqrt(col_norm_sq(e));
      if (nn > 0.5) {
        for (std::size_t i = 0; i < m; ++i) r.u(i, jj) = e[i] / nn;
        break;
      }
    }
  }

  return r;
}

std::size_t numeric_rank(const std::vector<double>& s, double tol) {
  if (tol < 0.0) throw std::invalid_argument("numeric_rank: negative tol");
  const double s_max = s.empty() ? 0.0 : s.front();
  const double threshold = tol * std::max(s_max, 1.0);
  std::size_t r = 0;
  for (double x : s)
    if (x > threshold) ++r;
  return r;
}

cplx vec_dot(const ComplexVector& a, const ComplexVector& b) {
  if (a.size() != b.size())
    throw std::invalid_argument("vec_dot: length mismatch");
  cplx s(0.0, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
  return s;
}

double vec_norm(const ComplexVector& v) {
  double s = 0.0;
  for (const cplx& z : v) s += std::norm(z);
  return std::sqrt(s);
}

void vec_normalize(ComplexVector& v) {
  const double n = vec_norm(v);
  if (n == 0.0) throw std::invalid_argument("vec_normalize: zero vector");
  for (cplx& z : v) z /= n;
}

}  // namespace sqc
