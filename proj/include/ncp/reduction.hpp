#pragma once

// Reduced dynamics of subsystem A of a closed A+B system evolving under a
// joint Hamiltonian.  Means of an orthonormal Hermitian operator basis
// (Tr[F_mu F_nu] = dim * delta_munu, F_0 = 1) evolve through a real
// orthogonal transfer matrix; holding the B-side and correlation means
// fixed at their initial values yields an affine map of the A-side mean
// vector, and from it the B matrix of the induced map on density matrices.

#include "ncp/matrix_map.hpp"

namespace ncp {

struct OperatorBasis {
  int dim = 0;
  std::vector<Matrix> f;  // dim^2 elements, f[0] = identity
};

// Default basis: identity, then for each pair j < k (row-major pair order)
// the symmetric then antisymmetric unit combination, then the diagonal
// traceless elements; every element scaled to Tr[F^2] = dim.  For dim = 2
// this is (1, S1, S2, S3).
OperatorBasis build_basis(int dim);

// Gram-Schmidt from the identity through the dim^2 - 1 Hermitian seeds,
// normalizing each survivor to Tr[F^2] = dim.  Throws when a seed is not
// Hermitian or its residual drops below 1e-10 (linear dependence).
OperatorBasis build_basis(int dim, const std::vector<Matrix>& seeds);

struct BipartiteHamiltonian {
  int dim_a = 0, dim_b = 0;
  Matrix h;  // (dim_a*dim_b) square, Hermitian
};

struct TransferMatrix {
  int dim_a = 0, dim_b = 0;
  double time = 0;
  // t(mu*Mb2 + nu, alpha*Mb2 + beta) with Mb2 = dim_b^2:
  //   (1/(Na*Nb)) Tr[(e^{iHt} F_{mu nu} e^{-iHt}) F_{alpha beta}].
  RealMatrix t;
};

// Real orthogonal transfer matrix of the Heisenberg evolution on the
// product basis F_{mu nu} = F_mu (x) F_nu.
TransferMatrix transfer_matrix(const BipartiteHamiltonian& h, double time,
                               const OperatorBasis& basis_a,
                               const OperatorBasis& basis_b);

// Affine map of the A-side mean vector obtained by freezing the initial
// B-side and correlation means:
//   <F_mu>' = drift_mu + sum_alpha block_{mu alpha} <F_alpha>.
struct ReducedAffineMap {
  int dim = 0;             // dim_a
  RealVector drift;        // dim^2 - 1
  RealMatrix block;        // (dim^2 - 1) square
};

struct EnvMeans {
  int dim_a = 0, dim_b = 0;
  RealMatrix means;  // dim_a^2 rows, dim_b^2 - 1 cols: <F_{alpha beta}>,
                     // beta >= 1 (column beta - 1)
};

// Means must satisfy |<F>| <= sqrt(dim_b) (the operator norm bound of the
// normalization Tr[F^2] = dim).
ReducedAffineMap reduce(const TransferMatrix& tm, const EnvMeans& env);

// Max entry difference between the two routes to the evolved reduced state
// of initial_state: the affine mean-vector map built from initial means,
// and the partial trace of the evolved joint state.
double schrodinger_crosscheck(const BipartiteHamiltonian& h, double time,
                              const Eigen::Ref<const Matrix>& initial_state);

// B-matrix form of the affine map (trace-preserving and
// Hermiticity-preserving by construction).
MatrixMap reduced_matrix_map(const ReducedAffineMap& ram,
                             const OperatorBasis& basis_a);

}  // namespace ncp
