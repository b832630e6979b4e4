#pragma once

#include <array>
#include <cstdint>

#include "ncp/linalg.hpp"
#include "ncp/reduction.hpp"

namespace ncp {

// Linear assignment of system states to composite system+environment states,
// represented in real coordinates: a Hermitian system operator rho has
// coordinates x_alpha = Tr[F_alpha rho], the assigned composite operator has
// coordinates y_(mu,beta) = Tr[(F_mu (x) G_beta) L(rho)], and l is the real
// matrix with y = l x.  Row index is mu * dim_b^2 + beta.
struct AssignmentMap {
  int dim_a = 0;
  int dim_b = 0;
  RealMatrix l;
  OperatorBasis basis_a;
  OperatorBasis basis_b;
};

AssignmentMap make_assignment(int dim_a, int dim_b, const RealMatrix& l);

// rho -> rho (x) rho_b for a fixed environment state rho_b.
AssignmentMap product_assignment(int dim_a, int dim_b, const Matrix& rho_b);

// Product assignment onto the maximally mixed environment, plus a correlation
// term: the (mu=1, beta=1) composite coordinate picks up eps * x_1.
AssignmentMap perturbed_assignment(int dim_a, int dim_b, double eps);

Matrix act(const AssignmentMap& am, const Matrix& rho);

// max_{mu,alpha} |l((mu,0), alpha) - delta_{mu alpha}|.  Zero exactly when
// tracing the environment out of the assigned state recovers the input.
double partial_trace_consistency(const AssignmentMap& am);

// Data for one pure input state |psi><psi|.
struct FactorizationCheck {
  Matrix rho_ab;            // assigned composite state
  Matrix rho_b;             // conditional environment state <psi| rho_ab |psi>
  double min_eigenvalue = 0.0;
  bool psd = false;
  double product_residual = 0.0;  // max entry of rho_ab - |psi><psi| (x) rho_b
};

FactorizationCheck check_pure_state_factorization(
    const AssignmentMap& am, const Vector& psi,
    double psd_tol = psd_default_tol);

// Consistency relations that force the conditional environment state to be
// independent of the input state whenever the assignment is positive on pure
// states.  From an orthonormal pair (psi1, psi2) build
//   psi3 = (psi1 + i e^{i beta} psi2) / sqrt(2)
//   psi4 = (psi1 - i e^{i beta} psi2) / sqrt(2)
//   psi5 = cos(alpha) psi1 + sin(alpha) e^{i beta} psi2
//   psi6 = sin(alpha) psi1 - cos(alpha) e^{i beta} psi2
// Linearity of the assignment plus factorization on pure states then pins
// rho_b(1) = rho_b(2) = (rho_b(3) + rho_b(4)) / 2 and
// (rho_b(1) + rho_b(2)) / 2 = rho_b(3).
struct ConstantEnvironmentCheck {
  std::array<FactorizationCheck, 6> states;
  double mixture_residual = 0.0;           // L(P1) + L(P2) - L(P3) - L(P4)
  std::array<double, 3> equation_residuals{};
  double max_pairwise_distance = 0.0;      // over the six conditional states
};

ConstantEnvironmentCheck check_constant_rho_b(const AssignmentMap& am,
                                              const Vector& psi1,
                                              const Vector& psi2,
                                              double alpha, double beta,
                                              double psd_tol = psd_default_tol);

// Search pure states for assigned composite states with negative eigenvalues:
// random unit vectors plus a structured family of superpositions of
// computational basis pairs.
struct PositivityHunt {
  double min_eigenvalue = 0.0;
  Vector worst_state;
  int failures = 0;
  int samples_checked = 0;
};

PositivityHunt hunt_positivity_failure(const AssignmentMap& am,
                                       int random_samples, std::uint64_t seed,
                                       double tol = 1e-9);

}  // namespace ncp
