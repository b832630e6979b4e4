#include <doctest.h>

#include <Eigen/Eigenvalues>
#include <random>
#include <stdexcept>
#include <vector>

#include "ncp/linalg.hpp"
#include "test_util.hpp"

using namespace ncp;
using testutil::max_diff;
using testutil::random_hermitian;

TEST_CASE("pauli matrices satisfy the algebra") {
  const Complex i(0, 1);
  for (int k = 1; k <= 3; ++k) {
    CHECK(max_diff(pauli(k) * pauli(k), Matrix::Identity(2, 2)) == 0.0);
    CHECK(is_hermitian(pauli(k)));
    CHECK(std::abs(pauli(k).trace()) == 0.0);
  }
  CHECK(max_diff(pauli(1) * pauli(2), i * pauli(3)) == 0.0);
  CHECK(max_diff(pauli(2) * pauli(3), i * pauli(1)) == 0.0);
  CHECK(max_diff(pauli(3) * pauli(1), i * pauli(2)) == 0.0);
  CHECK_THROWS_AS(pauli(0), std::invalid_argument);
  CHECK_THROWS_AS(pauli(4), std::invalid_argument);
  CHECK_THROWS_AS(pauli(-1), std::invalid_argument);
}

TEST_CASE("tensor product and partial trace are mutually consistent") {
  std::mt19937_64 rng(11);
  const Matrix a = random_hermitian(2, rng);
  const Matrix b = random_hermitian(3, rng);
  const Matrix ab = tensor(a, b);
  REQUIRE(ab.rows() == 6);

  CHECK(max_diff(partial_trace(ab, Subsystem::second, 2, 3),
                 b.trace() * a) < 1e-14);
  CHECK(max_diff(partial_trace(ab, Subsystem::first, 2, 3),
                 a.trace() * b) < 1e-14);

  // index placement: first factor owns the outer (slow) index
  Matrix e00 = Matrix::Zero(2, 2);
  e00(0, 0) = 1.0;
  const Matrix embedded = tensor(e00, b);
  CHECK(max_diff(embedded.block(0, 0, 3, 3), b) == 0.0);
  CHECK(embedded.block(3, 3, 3, 3).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("hs_inner is the trace pairing") {
  std::mt19937_64 rng(12);
  const Matrix a = random_hermitian(3, rng);
  const Matrix b = random_hermitian(3, rng);
  CHECK(std::abs(hs_inner(a, b) - (a.adjoint() * b).trace()) < 1e-14);
  CHECK(std::abs(hs_inner(a, a).imag()) < 1e-14);
  CHECK(hs_inner(a, a).real() > 0.0);
}

TEST_CASE("eig_hermitian reconstructs and matches the library solver") {
  std::mt19937_64 rng(13);
  for (int dim : {2, 3, 4, 5, 8, 16}) {
    const Matrix h = random_hermitian(dim, rng);
    const EigenSystem es = eig_hermitian(h);

    const Matrix reconstructed =
        es.eigenvectors *
        es.eigenvalues.cast<Complex>().asDiagonal() *
        es.eigenvectors.adjoint();
    CHECK(max_diff(reconstructed, h) < 1e-11);
    CHECK(max_diff(es.eigenvectors.adjoint() * es.eigenvectors,
                   Matrix::Identity(dim, dim)) < 1e-12);
    for (int k = 0; k + 1 < dim; ++k) {
      CHECK(es.eigenvalues(k) >= es.eigenvalues(k + 1));
    }

    Eigen::SelfAdjointEigenSolver<Matrix> oracle(h);
    const RealVector ascending = oracle.eigenvalues();
    for (int k = 0; k < dim; ++k) {
      CHECK(std::abs(es.eigenvalues(k) - ascending(dim - 1 - k)) < 1e-11);
    }
  }
}

TEST_CASE("eig_hermitian handles degeneracies deterministically") {
  // two doubly degenerate eigenvalues mixed by a fixed unitary
  std::mt19937_64 rng(14);
  const Matrix u = testutil::random_unitary(4, rng);
  Matrix d = Matrix::Zero(4, 4);
  d.diagonal() << 2.0, 1.0, 2.0, 1.0;
  const Matrix h = u * d * u.adjoint();

  const EigenSystem first = eig_hermitian(h);
  const EigenSystem second = eig_hermitian(h);
  CHECK(std::abs(first.eigenvalues(0) - 2.0) < 1e-12);
  CHECK(std::abs(first.eigenvalues(1) - 2.0) < 1e-12);
  CHECK(std::abs(first.eigenvalues(2) - 1.0) < 1e-12);
  CHECK(std::abs(first.eigenvalues(3) - 1.0) < 1e-12);
  CHECK(max_diff(first.eigenvectors, second.eigenvectors) == 0.0);
}

TEST_CASE("eig_hermitian rejects bad input") {
  CHECK_THROWS_AS(eig_hermitian(Matrix::Zero(2, 3)), std::invalid_argument);
  Matrix skew = Matrix::Zero(2, 2);
  skew(0, 1) = 1.0;
  CHECK_THROWS_AS(eig_hermitian(skew), std::invalid_argument);
}

TEST_CASE("is_psd distinguishes signs at the tolerance") {
  std::mt19937_64 rng(15);
  const Matrix a = random_hermitian(3, rng);
  const Matrix psd = a * a.adjoint();
  CHECK(is_psd(psd));
  Matrix neg = Matrix::Identity(2, 2);
  neg(1, 1) = -1e-5;
  CHECK(!is_psd(neg));
  CHECK(is_psd(neg, 1e-4));
}

TEST_CASE("matrix_exp_unitary") {
  const Matrix u = matrix_exp_unitary(pauli(3), 0.7);
  Matrix expected = Matrix::Zero(2, 2);
  expected(0, 0) = std::exp(Complex(0, 0.7));
  expected(1, 1) = std::exp(Complex(0, -0.7));
  CHECK(max_diff(u, expected) < 1e-14);

  std::mt19937_64 rng(16);
  const Matrix h = random_hermitian(4, rng);
  const Matrix v = matrix_exp_unitary(h, 1.3);
  CHECK(max_diff(v * v.adjoint(), Matrix::Identity(4, 4)) < 1e-12);
  CHECK(max_diff(matrix_exp_unitary(h, 0.0), Matrix::Identity(4, 4)) < 1e-14);
  // group property
  CHECK(max_diff(matrix_exp_unitary(h, 0.4) * matrix_exp_unitary(h, 0.9), v) <
        1e-12);
}
