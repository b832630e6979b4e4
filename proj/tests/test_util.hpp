#pragma once

#include <random>

#include "ncp/linalg.hpp"

namespace testutil {

inline ncp::Matrix random_hermitian(int dim, std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  ncp::Matrix m(dim, dim);
  for (int r = 0; r < dim; ++r) {
    for (int c = 0; c < dim; ++c) {
      m(r, c) = ncp::Complex(g(rng), g(rng));
    }
  }
  return 0.5 * (m + m.adjoint()).eval();
}

inline ncp::Matrix random_unitary(int dim, std::mt19937_64& rng) {
  return ncp::matrix_exp_unitary(random_hermitian(dim, rng), 1.0);
}

inline ncp::Matrix random_density(int dim, std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  ncp::Matrix a(dim, dim);
  for (int r = 0; r < dim; ++r) {
    for (int c = 0; c < dim; ++c) {
      a(r, c) = ncp::Complex(g(rng), g(rng));
    }
  }
  ncp::Matrix rho = a * a.adjoint();
  rho /= rho.trace().real();
  return rho;
}

inline ncp::Vector random_pure_state(int dim, std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  ncp::Vector psi(dim);
  for (int i = 0; i < dim; ++i) {
    psi(i) = ncp::Complex(g(rng), g(rng));
  }
  return psi / psi.norm();
}

inline double max_diff(const ncp::Matrix& a, const ncp::Matrix& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

}  // namespace testutil
