#include "ncp/matrix_map.hpp"

#include <algorithm>
#include <cmath>

namespace ncp {

namespace {

void check_map(const MatrixMap& map, const char* who) {
  const int n = map.dim;
  if (n < 1 || map.b.rows() != n * n || map.b.cols() != n * n)
    throw std::invalid_argument(std::string(who) + ": malformed B matrix");
}

}  // namespace

MatrixMap map_from_action(int dim,
                          const std::function<Matrix(const Matrix&)>& action) {
  if (dim < 1) throw std::invalid_argument("map_from_action: dim must be >= 1");
  MatrixMap out;
  out.dim = dim;
  out.b.resize(dim * dim, dim * dim);
  Matrix unit = Matrix::Zero(dim, dim);
  for (int j = 0; j < dim; ++j) {
    for (int k = 0; k < dim; ++k) {
      unit(j, k) = 1;
      const Matrix image = action(unit);
      unit(j, k) = 0;
      if (image.rows() != dim || image.cols() != dim)
        throw std::invalid_argument("map_from_action: action changed shape");
      for (int r = 0; r < dim; ++r)
        for (int s = 0; s < dim; ++s)
          out.b(r * dim + j, s * dim + k) = image(r, s);
    }
  }
  return out;
}

Matrix act(const MatrixMap& map, const Matrix& q) {
  check_map(map, "act");
  const int n = map.dim;
  if (q.rows() != n || q.cols() != n)
    throw std::invalid_argument("act: operand dimension mismatch");
  Matrix out = Matrix::Zero(n, n);
  for (int r = 0; r < n; ++r)
    for (int s = 0; s < n; ++s) {
      Complex acc(0, 0);
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
          acc += map.b(r * n + j, s * n + k) * q(j, k);
      out(r, s) = acc;
    }
  return out;
}

SignedKraus signed_kraus(const MatrixMap& map) {
  check_map(map, "signed_kraus");
  if (!is_hermitian(map.b))
    throw std::invalid_argument(
        "signed_kraus: B is not Hermitian (map does not preserve Hermiticity)");
  const int n = map.dim;
  const EigenSystem es = eig_hermitian(map.b);

  struct Picked {
    double lambda;
    Eigen::Index col;
  };
  std::vector<Picked> keep;
  for (Eigen::Index k = 0; k < es.eigenvalues.size(); ++k)
    if (std::abs(es.eigenvalues(k)) >= zero_eigenvalue_tol)
      keep.push_back({es.eigenvalues(k), k});
  std::stable_sort(keep.begin(), keep.end(), [](const Picked& a, const Picked& b) {
    const bool na = a.lambda < 0, nb = b.lambda < 0;
    if (na != nb) return nb;  // nonnegative block first
    return std::abs(a.lambda) > std::abs(b.lambda);
  });

  SignedKraus out;
  for (const Picked& p : keep) {
    SignedKrausTerm term;
    term.sign = p.lambda < 0 ? -1 : 1;
    term.c.resize(n, n);
    const double scale = std::sqrt(std::abs(p.lambda));
    for (int r = 0; r < n; ++r)
      for (int j = 0; j < n; ++j)
        term.c(r, j) = scale * es.eigenvectors(r * n + j, p.col);
    out.terms.push_back(std::move(term));
    out.eigenvalues.push_back(p.lambda);
  }
  return out;
}

Matrix act(const SignedKraus& kraus, const Matrix& q) {
  if (kraus.terms.empty())
    throw std::invalid_argument("act: empty operator sum");
  const Eigen::Index n = kraus.terms.front().c.rows();
  if (q.rows() != n || q.cols() != n)
    throw std::invalid_argument("act: operand dimension mismatch");
  Matrix out = Matrix::Zero(n, n);
  for (const SignedKrausTerm& term : kraus.terms)
    out += double(term.sign) * term.c * q * term.c.adjoint();
  return out;
}

bool is_completely_positive(const MatrixMap& map, double tol) {
  check_map(map, "is_completely_positive");
  return is_psd(map.b, tol);
}

bool is_trace_preserving(const MatrixMap& map, double tol) {
  check_map(map, "is_trace_preserving");
  const int n = map.dim;
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) {
      Complex acc(0, 0);
      for (int r = 0; r < n; ++r) acc += map.b(r * n + j, r * n + k);
      if (std::abs(acc - (j == k ? 1.0 : 0.0)) > tol) return false;
    }
  return true;
}

MatrixMap extend_with_identity(const MatrixMap& map, int dim_env) {
  check_map(map, "extend_with_identity");
  if (dim_env < 1)
    throw std::invalid_argument("extend_with_identity: dim_env must be >= 1");
  const int n = map.dim;
  const int ne = n * dim_env;
  MatrixMap out;
  out.dim = ne;
  out.b = Matrix::Zero(ne * ne, ne * ne);
  // B_ext_{(rm)(jm');(sn)(kn')} = B_{rj;sk} delta_{mm'} delta_{nn'} with the
  // composite index (r, m) -> r*dim_env + m of tensor().
  for (int r = 0; r < n; ++r)
    for (int j = 0; j < n; ++j)
      for (int s = 0; s < n; ++s)
        for (int k = 0; k < n; ++k) {
          const Complex val = map.b(r * n + j, s * n + k);
          if (val == Complex(0, 0)) continue;
          for (int m = 0; m < dim_env; ++m)
            for (int nn = 0; nn < dim_env; ++nn)
              out.b((r * dim_env + m) * ne + (j * dim_env + m),
                    (s * dim_env + nn) * ne + (k * dim_env + nn)) = val;
        }
  return out;
}

}  // namespace ncp
