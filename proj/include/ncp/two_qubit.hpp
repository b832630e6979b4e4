#pragma once

// Reduced dynamics of one qubit of a pair coupled by H = (w/2) S3 X1
// (S: system Pauli, X: environment Pauli).  The one-parameter family of
// reduced maps depends only on the initial correlations
//   a1 = -<S2 X1>,  a2 = <S1 X1>,  a = a1 + i a2,
// and the dimensionless time wt.  Everything here is in closed form: the
// B matrix, its eigensystem, the signed operator-sum decomposition, the
// short-time expansions, and the witnesses that certify failures of
// positivity and complete positivity.

#include "ncp/matrix_map.hpp"

#include <array>

namespace ncp {

struct BlochVector {
  double s1 = 0, s2 = 0, s3 = 0;
};

class CorrelationParams {
 public:
  // Requires a1^2 + a2^2 <= 1 (no larger correlation fits a state).
  CorrelationParams(double a1, double a2, double omega_t);

  double a1() const { return a1_; }
  double a2() const { return a2_; }
  double omega_t() const { return omega_t_; }
  double r2() const { return a1_ * a1_ + a2_ * a2_; }  // |a|^2

 private:
  double a1_, a2_, omega_t_;
};

// Image of a Bloch vector:
// (s1 cos wt + a1 sin wt, s2 cos wt + a2 sin wt, s3).
BlochVector evolve_bloch(const BlochVector& v, const CorrelationParams& p);

// rho = (1 + s . Sigma) / 2.
Matrix density_from_bloch(const BlochVector& v);

// The closed-form B matrix of the reduced map.
MatrixMap reduced_map(const CorrelationParams& p);

// Closed-form eigensystem of the B matrix.  The labels follow the two
// families of the construction: lambda1, lambda2 >= 0 >= lambda3, lambda4
// with lambda1*lambda3 = lambda2*lambda4 = -|a|^2 sin^2(wt) / 4.  (For
// cos wt < 0, lambda2 exceeds lambda1; the labels are not globally sorted.)
// Eigenvectors are normalized; in the degenerate a*sin(wt) = 0 cases the
// component directions of each family replace the vanishing formula vectors.
struct AnalyticEigensystem {
  std::array<double, 4> lambda;
  std::array<Eigen::Vector4cd, 4> psi;
};
AnalyticEigensystem analytic_eigensystem(const CorrelationParams& p);

// Closed-form signed operator-sum decomposition; terms with |lambda| below
// zero_eigenvalue_tol are dropped, so a = 0 yields the two-term form
//   C1 = sqrt((1+cos wt)/2) 1,  C2 = sqrt((1-cos wt)/2) S3.
// Terms are ordered like signed_kraus: nonnegative eigenvalues first, each
// block by descending magnitude.
SignedKraus analytic_kraus(const CorrelationParams& p);

// Leading small-wt behavior (requires a != 0, wt > 0):
// lambda1 ~ 2 - (wt)^2/2 + |a|^2 (wt)^2/8, lambda2 ~ |a| wt/2 + ...,
// lambda3 ~ -|a|^2 (wt)^2/8, lambda4 ~ -|a| wt/2 + ..., with the matching
// C_n through the same order.
struct SmallTimeSeries {
  std::array<double, 4> lambda;
  std::array<Matrix, 4> c;
};
SmallTimeSeries small_t_series(const CorrelationParams& p);

// Image of the projector (1 + S3)/2 under the reduced map, and its smallest
// eigenvalue; at wt = pi/2 this is (1 - sqrt(1 + |a|^2))/2 < 0 whenever
// a != 0, exhibiting the positivity failure outside the proper domain.
struct WitnessP {
  Matrix op;       // P' (2x2)
  double min_eig;  // numeric
};
WitnessP witness_P(const CorrelationParams& p);

// The fixed two-qubit witness W = (1 + S2/sqrt2 + S3 X3/sqrt2)/4.
Matrix witness_W_operator();

// Tr[Pi' W] = (1 + <S1 X1>/sqrt2 + <S3 X3>/sqrt2)/4 under the extension of
// the wt = pi/2 map; validates W^2 = W/2 before returning.  A negative value
// certifies the extended map is not positive, hence the map is not CP.
double witness_W(double mean_s1x1, double mean_s3x3);

// Completely positive map obtained when the pair starts in a product state
// with environment mean <X1> = xi1:  1' = 1, S1' = xi1 S2, S2' = -xi1 S1,
// S3' = S3 (the wt = pi/2 case).  Requires |xi1| <= 1.
MatrixMap product_state_map(double xi1);

}  // namespace ncp
