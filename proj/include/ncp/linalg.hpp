#pragma once

// Dense complex linear algebra kernel: Pauli matrices, tensor products,
// partial traces, and a cyclic Jacobi eigensolver for Hermitian matrices
// with a deterministic eigenpair ordering.  Intended for the small
// matrices of open-system calculations (dimensions up to a few dozen).

#include <Eigen/Dense>

#include <complex>
#include <stdexcept>

namespace ncp {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

// Hermiticity check tolerance (max entry of |A - A^dag|).
inline constexpr double hermitian_tol = 1e-12;
// Jacobi sweep convergence: off-diagonal Frobenius norm below this.
inline constexpr double jacobi_off_tol = 1e-13;
// Default positive semidefiniteness slack.
inline constexpr double psd_default_tol = 1e-10;
// Eigenvalues of smaller magnitude count as zero when truncating.
inline constexpr double zero_eigenvalue_tol = 1e-12;

// Pauli matrix, k in {1, 2, 3}.
Matrix pauli(int k);

// Kronecker product, first factor outer:
// (a (x) b)(i*rb + k, j*cb + l) = a(i, j) * b(k, l).
template <typename DerivedA, typename DerivedB>
Matrix tensor(const Eigen::MatrixBase<DerivedA>& a,
              const Eigen::MatrixBase<DerivedB>& b) {
  Matrix bc = b.template cast<Complex>();
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * bc.rows(), j * bc.cols(), bc.rows(), bc.cols()) =
          Complex(a(i, j)) * bc;
  return out;
}

// Hilbert-Schmidt inner product Tr[a^dag b].
template <typename DerivedA, typename DerivedB>
Complex hs_inner(const Eigen::MatrixBase<DerivedA>& a,
                 const Eigen::MatrixBase<DerivedB>& b) {
  return (a.adjoint() * b.derived()).trace();
}

enum class Subsystem { first, second };

// Partial trace over the named subsystem of a (dim_first*dim_second)-dim
// composite, returning the matrix of the retained subsystem.
Matrix partial_trace(const Eigen::Ref<const Matrix>& m, Subsystem traced_out,
                     int dim_first, int dim_second);

bool is_hermitian(const Eigen::Ref<const Matrix>& m, double tol = hermitian_tol);

struct EigenSystem {
  RealVector eigenvalues;  // descending
  Matrix eigenvectors;     // orthonormal columns, matching order
};

// Eigendecomposition of a Hermitian matrix by cyclic Jacobi rotations.
// Eigenvalues are sorted descending; near-ties are ordered by lexicographic
// comparison of the eigenvector entries after each column's phase is fixed
// so that its first nonzero entry is real positive.  Throws
// std::invalid_argument when the input is not Hermitian to tolerance, and
// std::runtime_error if the sweeps fail to converge.
EigenSystem eig_hermitian(const Eigen::Ref<const Matrix>& h);

// True when every eigenvalue of the Hermitian matrix h is >= -tol.
bool is_psd(const Eigen::Ref<const Matrix>& h, double tol = psd_default_tol);

// exp(i h t) for Hermitian h, via the spectral decomposition.
Matrix matrix_exp_unitary(const Eigen::Ref<const Matrix>& h, double t);

}  // namespace ncp
