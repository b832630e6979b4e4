#include "ncp/two_qubit.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

namespace ncp {

namespace {

constexpr double kSqrt2 = 1.4142135623730951;

Matrix pauli_combo(double w0, double w1, double w2, double w3) {
  Matrix m(2, 2);
  m << Complex(w0 + w3, 0), Complex(w1, -w2), Complex(w1, w2),
      Complex(w0 - w3, 0);
  return m;
}

}  // namespace

CorrelationParams::CorrelationParams(double a1, double a2, double omega_t)
    : a1_(a1), a2_(a2), omega_t_(omega_t) {
  if (a1 * a1 + a2 * a2 > 1.0 + 1e-12)
    throw std::invalid_argument(
        "CorrelationParams: a1^2 + a2^2 must not exceed 1");
}

BlochVector evolve_bloch(const BlochVector& v, const CorrelationParams& p) {
  const double co = std::cos(p.omega_t()), si = std::sin(p.omega_t());
  return {v.s1 * co + p.a1() * si, v.s2 * co + p.a2() * si, v.s3};
}

Matrix density_from_bloch(const BlochVector& v) {
  return 0.5 * pauli_combo(1.0, v.s1, v.s2, v.s3);
}

MatrixMap reduced_map(const CorrelationParams& p) {
  const double co = std::cos(p.omega_t()), si = std::sin(p.omega_t());
  const Complex a(p.a1(), p.a2());
  const Complex half_as = 0.5 * a * si;
  MatrixMap out;
  out.dim = 2;
  out.b = Matrix::Zero(4, 4);
  out.b(0, 0) = 1;
  out.b(0, 2) = std::conj(half_as);
  out.b(0, 3) = co;
  out.b(1, 3) = std::conj(half_as);
  out.b(2, 0) = half_as;
  out.b(3, 0) = co;
  out.b(3, 1) = half_as;
  out.b(3, 3) = 1;
  return out;
}

AnalyticEigensystem analytic_eigensystem(const CorrelationParams& p) {
  const double co = std::cos(p.omega_t()), si = std::sin(p.omega_t());
  const Complex a(p.a1(), p.a2());
  const double mod_a = std::abs(a);
  const double hs = 0.5 * mod_a * si;  // |a| sin(wt) / 2
  const Complex ah = mod_a > 0 ? a / mod_a : Complex(1, 0);

  AnalyticEigensystem out;
  const double rad_p = std::hypot(1.0 + co, mod_a * si);
  const double rad_m = std::hypot(1.0 - co, mod_a * si);
  out.lambda[0] = 0.5 * ((1.0 + co) + rad_p);
  out.lambda[1] = 0.5 * ((1.0 - co) + rad_m);
  out.lambda[2] = 0.5 * ((1.0 + co) - rad_p);
  out.lambda[3] = 0.5 * ((1.0 - co) - rad_m);

  const Complex half_as = 0.5 * a * si;
  const Complex half_cs = std::conj(half_as);
  for (int n = 0; n < 4; ++n) {
    const bool family_a = (n == 0 || n == 2);
    const double lam = out.lambda[n];
    Eigen::Vector4cd psi;
    if (family_a)
      psi << lam, half_cs, half_as, lam;
    else
      psi << lam, -half_cs, half_as, -lam;
    const double norm2 = 2.0 * (lam * lam + hs * hs);
    if (norm2 > 1e-28) {
      out.psi[n] = psi / std::sqrt(norm2);
    } else if (n < 2) {
      // Zero formula vector in a degenerate family: component directions.
      out.psi[n] = family_a ? Eigen::Vector4cd(1, 0, 0, 1) / kSqrt2
                            : Eigen::Vector4cd(1, 0, 0, -1) / kSqrt2;
    } else {
      out.psi[n] =
          family_a
              ? Eigen::Vector4cd(0, std::conj(ah), ah, 0) / kSqrt2
              : Eigen::Vector4cd(0, -std::conj(ah), ah, 0) / kSqrt2;
    }
  }
  return out;
}

SignedKraus analytic_kraus(const CorrelationParams& p) {
  const double co = std::cos(p.omega_t()), si = std::sin(p.omega_t());
  std::vector<std::pair<double, Matrix>> pairs;
  if (p.r2() == 0.0) {
    const double w1 = 0.5 * (1.0 + co), w2 = 0.5 * (1.0 - co);
    if (2.0 * w1 >= zero_eigenvalue_tol) {
      pairs.emplace_back(2.0 * w1,  // lambda = 1 + cos wt
                         std::sqrt(w1) * Matrix::Identity(2, 2));
    }
    if (2.0 * w2 >= zero_eigenvalue_tol) {
      pairs.emplace_back(2.0 * w2, std::sqrt(w2) * pauli(3));
    }
  } else {
    const AnalyticEigensystem es = analytic_eigensystem(p);
    const double hs2 = 0.25 * p.r2() * si * si;
    for (int n = 0; n < 4; ++n) {
      const double lam = es.lambda[n];
      if (std::abs(lam) < zero_eigenvalue_tol) continue;
      const double norm2 = 2.0 * (lam * lam + hs2);
      const double pref = std::sqrt(std::abs(lam) / norm2);
      Matrix c;
      if (n == 0 || n == 2) {
        c = pref * (lam * Matrix::Identity(2, 2) +
                    0.5 * si * pauli_combo(0, p.a1(), p.a2(), 0));
      } else {
        // lam S3 + (i/2) sin(wt) (a2 S1 - a1 S2)
        c = pref * (lam * pauli(3) +
                    Complex(0, 0.5) * si *
                        (p.a2() * pauli(1) - p.a1() * pauli(2)));
      }
      pairs.emplace_back(lam, std::move(c));
    }
  }

  // Same ordering as signed_kraus: nonnegative eigenvalues first, each
  // block by descending magnitude.
  std::stable_sort(pairs.begin(), pairs.end(),
                   [](const auto& x, const auto& y) {
                     const bool xneg = x.first < 0, yneg = y.first < 0;
                     if (xneg != yneg) return yneg;
                     return std::abs(x.first) > std::abs(y.first);
                   });
  SignedKraus out;
  for (auto& [lam, c] : pairs) {
    out.terms.push_back({lam < 0 ? -1 : 1, std::move(c)});
    out.eigenvalues.push_back(lam);
  }
  return out;
}

SmallTimeSeries small_t_series(const CorrelationParams& p) {
  if (p.r2() == 0.0)
    throw std::invalid_argument("small_t_series: requires a != 0");
  const double t = p.omega_t();
  if (t <= 0.0)
    throw std::invalid_argument("small_t_series: requires omega_t > 0");
  const double mod_a = std::sqrt(p.r2());
  const double rt = std::sqrt(t);

  SmallTimeSeries out;
  out.lambda[0] = 2.0 - 0.5 * t * t + 0.125 * p.r2() * t * t;
  out.lambda[1] = 0.5 * mod_a * t + 0.25 * t * t + t * t * t / (16.0 * mod_a);
  out.lambda[2] = -0.125 * p.r2() * t * t;
  out.lambda[3] = -0.5 * mod_a * t + 0.25 * t * t - t * t * t / (16.0 * mod_a);

  const Matrix drift = 0.25 * t * pauli_combo(0, p.a1(), p.a2(), 0);
  out.c[0] = (1.0 - t * t / 8.0) * Matrix::Identity(2, 2) + drift;
  out.c[2] = -(p.r2() / 16.0) * t * t * Matrix::Identity(2, 2) + drift;
  const Matrix skew = std::sqrt(1.0 / (8.0 * mod_a)) * rt *
                      (Complex(0, 1) *
                       (p.a2() * pauli(1) - p.a1() * pauli(2)));
  const double s3_plus = std::sqrt(mod_a / 8.0) * (rt + rt * t / (2.0 * mod_a));
  const double s3_minus =
      std::sqrt(mod_a / 8.0) * (-rt + rt * t / (2.0 * mod_a));
  out.c[1] = s3_plus * pauli(3) + skew;
  out.c[3] = s3_minus * pauli(3) + skew;
  return out;
}

WitnessP witness_P(const CorrelationParams& p) {
  const Matrix proj = 0.5 * pauli_combo(1, 0, 0, 1);
  const MatrixMap map = reduced_map(p);
  WitnessP out;
  out.op = act(map, proj);
  const EigenSystem es = eig_hermitian(out.op);
  out.min_eig = es.eigenvalues(es.eigenvalues.size() - 1);
  return out;
}

Matrix witness_W_operator() {
  const Matrix id2 = Matrix::Identity(2, 2);
  return 0.25 * (tensor(id2, id2) + tensor(pauli(2), id2) / kSqrt2 +
                 tensor(pauli(3), pauli(3)) / kSqrt2);
}

double witness_W(double mean_s1x1, double mean_s3x3) {
  const Matrix w = witness_W_operator();
  if ((w * w - 0.5 * w).cwiseAbs().maxCoeff() > 1e-12)
    throw std::logic_error("witness_W: W^2 != W/2");
  return 0.25 * (1.0 + (mean_s1x1 + mean_s3x3) / kSqrt2);
}

MatrixMap product_state_map(double xi1) {
  if (std::abs(xi1) > 1.0)
    throw std::invalid_argument("product_state_map: |xi1| must be <= 1");
  return map_from_action(2, [xi1](const Matrix& q) {
    // Complex-linear extension of the action on the Pauli basis:
    // 1 -> 1, S1 -> xi1 S2, S2 -> -xi1 S1, S3 -> S3.
    const Complex q0 = 0.5 * q.trace();
    std::array<Complex, 3> qv;
    for (int k = 1; k <= 3; ++k) qv[k - 1] = 0.5 * hs_inner(pauli(k), q);
    Matrix img = q0 * Matrix::Identity(2, 2);
    img += qv[0] * xi1 * pauli(2);
    img -= qv[1] * xi1 * pauli(1);
    img += qv[2] * pauli(3);
    return img;
  });
}

}  // namespace ncp
