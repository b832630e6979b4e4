#pragma once

// Linear maps of density matrices in the B-matrix representation
//   Q'_{rs} = sum_{jk} B_{rj;sk} Q_{jk},
// stored as a dim^2 x dim^2 matrix with composite index (r, j) -> r*dim + j.
// A map is Hermiticity-preserving iff B is Hermitian under this pairing;
// its eigendecomposition then yields a signed operator-sum form
//   Q' = sum_n sign(lambda_n) C_n Q C_n^dag.

#include "ncp/linalg.hpp"

#include <functional>
#include <vector>

namespace ncp {

struct MatrixMap {
  int dim = 0;
  Matrix b;  // (dim*dim) x (dim*dim)
};

// Builds B column by column from the images of the matrix units E_jk.
MatrixMap map_from_action(int dim,
                          const std::function<Matrix(const Matrix&)>& action);

// Q'_{rs} = sum_{jk} B_{rj;sk} Q_{jk}.
Matrix act(const MatrixMap& map, const Matrix& q);

struct SignedKrausTerm {
  int sign = 1;  // +1 or -1
  Matrix c;      // dim x dim
};

struct SignedKraus {
  std::vector<SignedKrausTerm> terms;
  std::vector<double> eigenvalues;  // the lambda_n each term came from
};

// Eigendecomposition of B: C_n(r, j) = sqrt(|lambda_n|) <rj|n>.  Terms with
// |lambda_n| below zero_eigenvalue_tol are dropped.  Nonnegative-eigenvalue
// terms come first, then negative, each block in descending |lambda|.
// Throws std::invalid_argument when B is not Hermitian (the map does not
// preserve Hermiticity).
SignedKraus signed_kraus(const MatrixMap& map);

// Reconstruction sum_n sign_n C_n Q C_n^dag.
Matrix act(const SignedKraus& kraus, const Matrix& q);

// All eigenvalues of B nonnegative (to tol).
bool is_completely_positive(const MatrixMap& map, double tol = psd_default_tol);

// sum_r B_{rj;rk} = delta_{jk} (to tol), equivalent to
// sum_n sign_n C_n^dag C_n = 1.
bool is_trace_preserving(const MatrixMap& map, double tol = 1e-10);

// The map tensored with the identity on a dim_env environment, acting on
// (dim*dim_env)-dimensional matrices; first factor is the mapped one.
MatrixMap extend_with_identity(const MatrixMap& map, int dim_env);

}  // namespace ncp
