#include "ncp/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

namespace ncp {

namespace {

double off_diagonal_norm(const Matrix& a) {
  double sum = 0.0;
  for (Eigen::Index p = 0; p < a.rows(); ++p)
    for (Eigen::Index q = p + 1; q < a.cols(); ++q)
      sum += std::norm(a(p, q));
  return std::sqrt(2.0 * sum);
}

// Phase-fix a column in place: first entry of magnitude above the cutoff is
// made real positive.
void fix_phase(Matrix& vectors, Eigen::Index col) {
  for (Eigen::Index k = 0; k < vectors.rows(); ++k) {
    const Complex v = vectors(k, col);
    if (std::abs(v) > 1e-12) {
      vectors.col(col) *= std::conj(v) / std::abs(v);
      return;
    }
  }
}

// Lexicographic order on (re, im) pairs of the entries, with a small
// tolerance so roundoff does not flip the comparison.
bool lex_less(const Matrix& vectors, Eigen::Index a, Eigen::Index b) {
  constexpr double tol = 1e-10;
  for (Eigen::Index k = 0; k < vectors.rows(); ++k) {
    const Complex u = vectors(k, a);
    const Complex v = vectors(k, b);
    if (std::abs(u.real() - v.real()) > tol) return u.real() < v.real();
    if (std::abs(u.imag() - v.imag()) > tol) return u.imag() < v.imag();
  }
  return false;
}

}  // namespace

Matrix pauli(int k) {
  Matrix s(2, 2);
  switch (k) {
    case 1:
      s << 0, 1, 1, 0;
      break;
    case 2:
      s << 0, Complex(0, -1), Complex(0, 1), 0;
      break;
    case 3:
      s << 1, 0, 0, -1;
      break;
    default:
      throw std::invalid_argument("pauli: index must be 1, 2 or 3");
  }
  return s;
}

Matrix partial_trace(const Eigen::Ref<const Matrix>& m, Subsystem traced_out,
                     int dim_first, int dim_second) {
  if (dim_first < 1 || dim_second < 1 ||
      m.rows() != dim_first * dim_second || m.cols() != m.rows())
    throw std::invalid_argument("partial_trace: dimension mismatch");
  if (traced_out == Subsystem::second) {
    Matrix out = Matrix::Zero(dim_first, dim_first);
    for (int i = 0; i < dim_first; ++i)
      for (int j = 0; j < dim_first; ++j)
        for (int k = 0; k < dim_second; ++k)
          out(i, j) += m(i * dim_second + k, j * dim_second + k);
    return out;
  }
  Matrix out = Matrix::Zero(dim_second, dim_second);
  for (int k = 0; k < dim_second; ++k)
    for (int l = 0; l < dim_second; ++l)
      for (int i = 0; i < dim_first; ++i)
        out(k, l) += m(i * dim_second + k, i * dim_second + l);
  return out;
}

bool is_hermitian(const Eigen::Ref<const Matrix>& m, double tol) {
  if (m.rows() != m.cols()) return false;
  return (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

EigenSystem eig_hermitian(const Eigen::Ref<const Matrix>& h) {
  if (h.rows() != h.cols())
    throw std::invalid_argument("eig_hermitian: matrix must be square");
  if (!is_hermitian(h))
    throw std::invalid_argument("eig_hermitian: matrix is not Hermitian");

  const Eigen::Index n = h.rows();
  Matrix a = 0.5 * (h + h.adjoint());
  Matrix v = Matrix::Identity(n, n);

  constexpr int max_sweeps = 60;
  int sweep = 0;
  for (; sweep < max_sweeps; ++sweep) {
    if (off_diagonal_norm(a) < jacobi_off_tol) break;
    for (Eigen::Index p = 0; p < n - 1; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        const Complex apq = a(p, q);
        const double r = std::abs(apq);
        if (r == 0.0) continue;
        const Complex phase = apq / r;  // e^{i phi}
        const double alpha = a(p, p).real();
        const double beta = a(q, q).real();
        const double tau = (beta - alpha) / (2.0 * r);
        const double t =
            (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::hypot(1.0, tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        // Unitary J acting on columns p, q:
        //   J(p,p) = c          J(p,q) = s
        //   J(q,p) = -s e^{-i phi}   J(q,q) = c e^{-i phi}
        const Complex cph = std::conj(phase);
        for (Eigen::Index k = 0; k < n; ++k) {  // A <- A J
          const Complex akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp - s * cph * akq;
          a(k, q) = s * akp + c * cph * akq;
        }
        for (Eigen::Index k = 0; k < n; ++k) {  // A <- J^dag A
          const Complex apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk - s * phase * aqk;
          a(q, k) = s * apk + c * phase * aqk;
        }
        for (Eigen::Index k = 0; k < n; ++k) {  // V <- V J
          const Complex vkp = v(k, p), vkq = v(k, q);
          v(k, p) = c * vkp - s * cph * vkq;
          v(k, q) = s * vkp + c * cph * vkq;
        }
        a(p, q) = a(q, p) = Complex(0, 0);
        a(p, p) = Complex(alpha - t * r, 0);
        a(q, q) = Complex(beta + t * r, 0);
      }
    }
  }
  if (sweep == max_sweeps && off_diagonal_norm(a) >= jacobi_off_tol)
    throw std::runtime_error("eig_hermitian: Jacobi sweeps did not converge");

  for (Eigen::Index col = 0; col < n; ++col) fix_phase(v, col);

  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&a](Eigen::Index i, Eigen::Index j) {
                     return a(i, i).real() > a(j, j).real();
                   });
  // Near-degenerate runs get a deterministic order from the vectors.
  constexpr double tie_tol = 1e-10;
  std::size_t lo = 0;
  while (lo < order.size()) {
    std::size_t hi = lo + 1;
    while (hi < order.size() &&
           a(order[hi - 1], order[hi - 1]).real() -
                   a(order[hi], order[hi]).real() <=
               tie_tol)
      ++hi;
    std::stable_sort(order.begin() + lo, order.begin() + hi,
                     [&v](Eigen::Index i, Eigen::Index j) {
                       return lex_less(v, i, j);
                     });
    lo = hi;
  }

  EigenSystem out;
  out.eigenvalues.resize(n);
  out.eigenvectors.resize(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    out.eigenvalues(k) = a(order[k], order[k]).real();
    out.eigenvectors.col(k) = v.col(order[k]);
  }
  return out;
}

bool is_psd(const Eigen::Ref<const Matrix>& h, double tol) {
  const EigenSystem es = eig_hermitian(h);
  return es.eigenvalues(es.eigenvalues.size() - 1) >= -tol;
}

Matrix matrix_exp_unitary(const Eigen::Ref<const Matrix>& h, double t) {
  const EigenSystem es = eig_hermitian(h);
  Vector ph(es.eigenvalues.size());
  for (Eigen::Index k = 0; k < ph.size(); ++k)
    ph(k) = std::exp(Complex(0, es.eigenvalues(k) * t));
  return es.eigenvectors * ph.asDiagonal() * es.eigenvectors.adjoint();
}

}  // namespace ncp
