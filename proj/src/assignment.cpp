#include "ncp/assignment.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <random>
#include <stdexcept>

namespace ncp {

namespace {

void check_dims(int dim_a, int dim_b) {
  if (dim_a < 1 || dim_b < 1) {
    throw std::invalid_argument("assignment dimensions must be positive");
  }
}

int row_index(const AssignmentMap& am, int mu, int beta) {
  return mu * am.dim_b * am.dim_b + beta;
}

}  // namespace

AssignmentMap make_assignment(int dim_a, int dim_b, const RealMatrix& l) {
  check_dims(dim_a, dim_b);
  const int rows = dim_a * dim_a * dim_b * dim_b;
  const int cols = dim_a * dim_a;
  if (l.rows() != rows || l.cols() != cols) {
    throw std::invalid_argument("assignment matrix has wrong shape");
  }
  AssignmentMap am;
  am.dim_a = dim_a;
  am.dim_b = dim_b;
  am.l = l;
  am.basis_a = build_basis(dim_a);
  am.basis_b = build_basis(dim_b);
  return am;
}

AssignmentMap product_assignment(int dim_a, int dim_b, const Matrix& rho_b) {
  check_dims(dim_a, dim_b);
  if (rho_b.rows() != dim_b || rho_b.cols() != dim_b) {
    throw std::invalid_argument("environment state has wrong dimension");
  }
  if (!is_hermitian(rho_b)) {
    throw std::invalid_argument("environment state is not Hermitian");
  }
  if (std::abs(rho_b.trace() - Complex(1.0)) > 1e-10) {
    throw std::invalid_argument("environment state is not normalized");
  }
  if (!is_psd(rho_b)) {
    throw std::invalid_argument("environment state is not positive");
  }
  const OperatorBasis basis_b = build_basis(dim_b);
  const int na2 = dim_a * dim_a;
  const int nb2 = dim_b * dim_b;
  RealMatrix l = RealMatrix::Zero(na2 * nb2, na2);
  for (int mu = 0; mu < na2; ++mu) {
    for (int beta = 0; beta < nb2; ++beta) {
      l(mu * nb2 + beta, mu) =
          hs_inner(basis_b.f[static_cast<std::size_t>(beta)], rho_b).real();
    }
  }
  return make_assignment(dim_a, dim_b, l);
}

AssignmentMap perturbed_assignment(int dim_a, int dim_b, double eps) {
  if (dim_a < 2 || dim_b < 2) {
    throw std::invalid_argument(
        "perturbed assignment needs at least two levels on each side");
  }
  const Matrix mixed =
      Matrix::Identity(dim_b, dim_b) / static_cast<double>(dim_b);
  AssignmentMap am = product_assignment(dim_a, dim_b, mixed);
  am.l(row_index(am, 1, 1), 1) += eps;
  return am;
}

Matrix act(const AssignmentMap& am, const Matrix& rho) {
  if (rho.rows() != am.dim_a || rho.cols() != am.dim_a) {
    throw std::invalid_argument("state has wrong dimension");
  }
  if (!is_hermitian(rho)) {
    throw std::invalid_argument("state is not Hermitian");
  }
  const int na2 = am.dim_a * am.dim_a;
  const int nb2 = am.dim_b * am.dim_b;
  RealVector x(na2);
  for (int alpha = 0; alpha < na2; ++alpha) {
    x(alpha) =
        hs_inner(am.basis_a.f[static_cast<std::size_t>(alpha)], rho).real();
  }
  const RealVector y = am.l * x;
  const int dim_ab = am.dim_a * am.dim_b;
  Matrix out = Matrix::Zero(dim_ab, dim_ab);
  const double scale = 1.0 / static_cast<double>(dim_ab);
  for (int mu = 0; mu < na2; ++mu) {
    Matrix env_part = Matrix::Zero(am.dim_b, am.dim_b);
    for (int beta = 0; beta < nb2; ++beta) {
      env_part += y(mu * nb2 + beta) *
                  am.basis_b.f[static_cast<std::size_t>(beta)];
    }
    out += scale *
           tensor(am.basis_a.f[static_cast<std::size_t>(mu)], env_part);
  }
  return out;
}

double partial_trace_consistency(const AssignmentMap& am) {
  const int na2 = am.dim_a * am.dim_a;
  double worst = 0.0;
  for (int mu = 0; mu < na2; ++mu) {
    for (int alpha = 0; alpha < na2; ++alpha) {
      const double expected = (mu == alpha) ? 1.0 : 0.0;
      worst = std::max(worst,
                       std::abs(am.l(row_index(am, mu, 0), alpha) - expected));
    }
  }
  return worst;
}

FactorizationCheck check_pure_state_factorization(const AssignmentMap& am,
                                                  const Vector& psi,
                                                  double psd_tol) {
  if (psi.size() != am.dim_a) {
    throw std::invalid_argument("state vector has wrong dimension");
  }
  if (std::abs(psi.norm() - 1.0) > 1e-10) {
    throw std::invalid_argument("state vector is not normalized");
  }
  FactorizationCheck check;
  const Matrix rho = psi * psi.adjoint();
  check.rho_ab = act(am, rho);
  const EigenSystem es = eig_hermitian(check.rho_ab);
  check.min_eigenvalue = es.eigenvalues(es.eigenvalues.size() - 1);
  check.psd = check.min_eigenvalue >= -psd_tol;
  const int mb = am.dim_b;
  check.rho_b = Matrix::Zero(mb, mb);
  for (int k = 0; k < mb; ++k) {
    for (int l = 0; l < mb; ++l) {
      Complex sum = 0.0;
      for (int j = 0; j < am.dim_a; ++j) {
        for (int jp = 0; jp < am.dim_a; ++jp) {
          sum += std::conj(psi(j)) * check.rho_ab(j * mb + k, jp * mb + l) *
                 psi(jp);
        }
      }
      check.rho_b(k, l) = sum;
    }
  }
  check.product_residual =
      (check.rho_ab - tensor(rho, check.rho_b)).cwiseAbs().maxCoeff();
  return check;
}

ConstantEnvironmentCheck check_constant_rho_b(const AssignmentMap& am,
                                              const Vector& psi1,
                                              const Vector& psi2, double alpha,
                                              double beta, double psd_tol) {
  if (psi1.size() != am.dim_a || psi2.size() != am.dim_a) {
    throw std::invalid_argument("state vectors have wrong dimension");
  }
  if (std::abs(psi1.norm() - 1.0) > 1e-10 ||
      std::abs(psi2.norm() - 1.0) > 1e-10) {
    throw std::invalid_argument("state vectors are not normalized");
  }
  if (std::abs(psi1.dot(psi2)) > 1e-10) {
    throw std::invalid_argument("state vectors are not orthogonal");
  }
  const Complex phase = std::exp(Complex(0.0, beta));
  const Complex i_unit(0.0, 1.0);
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  std::array<Vector, 6> psis;
  psis[0] = psi1;
  psis[1] = psi2;
  psis[2] = inv_sqrt2 * (psi1 + i_unit * phase * psi2);
  psis[3] = inv_sqrt2 * (psi1 - i_unit * phase * psi2);
  psis[4] = std::cos(alpha) * psi1 + std::sin(alpha) * phase * psi2;
  psis[5] = std::sin(alpha) * psi1 - std::cos(alpha) * phase * psi2;

  ConstantEnvironmentCheck out;
  for (std::size_t n = 0; n < psis.size(); ++n) {
    out.states[n] = check_pure_state_factorization(am, psis[n], psd_tol);
  }
  out.mixture_residual = (out.states[0].rho_ab + out.states[1].rho_ab -
                          out.states[2].rho_ab - out.states[3].rho_ab)
                             .cwiseAbs()
                             .maxCoeff();
  const Matrix half_sum34 = 0.5 * (out.states[2].rho_b + out.states[3].rho_b);
  out.equation_residuals[0] =
      (out.states[0].rho_b - half_sum34).cwiseAbs().maxCoeff();
  out.equation_residuals[1] =
      (out.states[1].rho_b - half_sum34).cwiseAbs().maxCoeff();
  out.equation_residuals[2] =
      (0.5 * (out.states[0].rho_b + out.states[1].rho_b) - out.states[2].rho_b)
          .cwiseAbs()
          .maxCoeff();
  for (std::size_t m = 0; m < psis.size(); ++m) {
    for (std::size_t n = m + 1; n < psis.size(); ++n) {
      out.max_pairwise_distance =
          std::max(out.max_pairwise_distance,
                   (out.states[m].rho_b - out.states[n].rho_b)
                       .cwiseAbs()
                       .maxCoeff());
    }
  }
  return out;
}

PositivityHunt hunt_positivity_failure(const AssignmentMap& am,
                                       int random_samples, std::uint64_t seed,
                                       double tol) {
  PositivityHunt hunt;
  hunt.min_eigenvalue = std::numeric_limits<double>::infinity();

  const auto evaluate = [&](const Vector& psi) {
    const Matrix rho = psi * psi.adjoint();
    const Matrix rho_ab = act(am, rho);
    const EigenSystem es = eig_hermitian(rho_ab);
    const double min_eig = es.eigenvalues(es.eigenvalues.size() - 1);
    ++hunt.samples_checked;
    if (min_eig < -tol) {
      ++hunt.failures;
    }
    if (min_eig < hunt.min_eigenvalue) {
      hunt.min_eigenvalue = min_eig;
      hunt.worst_state = psi;
    }
  };

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (int s = 0; s < random_samples; ++s) {
    Vector psi(am.dim_a);
    double norm = 0.0;
    while (norm < 1e-8) {
      for (int j = 0; j < am.dim_a; ++j) {
        psi(j) = Complex(gauss(rng), gauss(rng));
      }
      norm = psi.norm();
    }
    evaluate(psi / norm);
  }

  const int alpha_steps = 9;   // [0, pi/2] in pi/16 steps
  const int beta_steps = 16;   // [0, 2 pi) in pi/8 steps
  for (int j = 0; j < am.dim_a; ++j) {
    for (int k = j + 1; k < am.dim_a; ++k) {
      Vector e1 = Vector::Zero(am.dim_a);
      Vector e2 = Vector::Zero(am.dim_a);
      e1(j) = 1.0;
      e2(k) = 1.0;
      for (int ia = 0; ia < alpha_steps; ++ia) {
        const double alpha = ia * M_PI / 16.0;
        for (int ib = 0; ib < beta_steps; ++ib) {
          const double beta = ib * M_PI / 8.0;
          const Complex phase = std::exp(Complex(0.0, beta));
          evaluate(std::cos(alpha) * e1 + std::sin(alpha) * phase * e2);
          evaluate(std::sin(alpha) * e1 - std::cos(alpha) * phase * e2);
        }
      }
    }
  }
  return hunt;
}

}  // namespace ncp
