#include "ncp/domains.hpp"

#include <cmath>

namespace ncp {

namespace {

void check_c(double c, const char* who) {
  if (!(c >= 0.0) || c >= 1.0)
    throw std::invalid_argument(std::string(who) + ": requires 0 <= c < 1");
}

int grid_count(double step) {
  if (!(step > 0.0) || step > 0.5)
    throw std::invalid_argument("grid step must lie in (0, 0.5]");
  return static_cast<int>(std::lround(2.0 / step)) + 1;
}

}  // namespace

DomainSpec::DomainSpec(double c, double alpha) : c_(c), alpha_(alpha) {
  check_c(c, "DomainSpec");
}

RotatedBloch to_rotated(const BlochVector& v, const DomainSpec& spec) {
  if (spec.c() == 0.0) return {v.s1, v.s2, v.s3};
  const double sa = std::sin(spec.alpha()), ca = std::cos(spec.alpha());
  return {sa * v.s1 - ca * v.s2, -ca * v.s1 - sa * v.s2, v.s3};
}

BlochVector from_rotated(const RotatedBloch& v, const DomainSpec& spec) {
  if (spec.c() == 0.0) return {v.s_plus, v.s_minus, v.s3};
  const double sa = std::sin(spec.alpha()), ca = std::cos(spec.alpha());
  // The rotation is an involution: same reflection both ways.
  return {sa * v.s_plus - ca * v.s_minus, -ca * v.s_plus - sa * v.s_minus,
          v.s3};
}

bool in_compatibility(const RotatedBloch& v, double c) {
  check_c(c, "in_compatibility");
  const double sp2 = v.s_plus * v.s_plus;
  const double sm2 = v.s_minus * v.s_minus;
  const double s32 = v.s3 * v.s3;
  const double c2 = c * c;
  const double rhs = 2.0 - 2.0 * s32 - sm2 - sp2 - c2;
  if (rhs < 0.0) return false;
  const double sum = sm2 + sp2 + c2;
  const double rad = sum * sum - 4.0 * sp2 * c2;  // >= 0 by AM-GM
  return std::sqrt(std::max(rad, 0.0)) <= rhs;
}

Matrix compatibility_witness(const RotatedBloch& v, double c) {
  if (!in_compatibility(v, c))
    throw std::invalid_argument(
        "compatibility_witness: v is outside the compatibility domain");
  const Matrix id2 = Matrix::Identity(2, 2);
  const double u = 1.0 - v.s3 * v.s3;
  if (u <= 0.0) {
    // Only the poles with c = 0 reach here; the product state suffices.
    return tensor(density_from_bloch({v.s_plus, v.s_minus, v.s3}), 0.5 * id2);
  }
  const double xi = v.s_plus * c / u;
  const double m31 = v.s3 * xi;
  Matrix pi = tensor(id2, id2);
  pi += v.s_plus * tensor(pauli(1), id2);
  pi += v.s_minus * tensor(pauli(2), id2);
  pi += v.s3 * tensor(pauli(3), id2);
  pi += c * tensor(pauli(1), pauli(1));
  pi += xi * tensor(id2, pauli(1));
  pi += m31 * tensor(pauli(3), pauli(1));
  return 0.25 * pi;
}

bool in_positivity(const BlochVector& v, const CorrelationParams& p) {
  const double n0 = v.s1 * v.s1 + v.s2 * v.s2 + v.s3 * v.s3;
  if (n0 > 1.0) return false;
  const BlochVector w = evolve_bloch(v, p);
  return w.s1 * w.s1 + w.s2 * w.s2 + w.s3 * w.s3 <= 1.0;
}

BlochVector positivity_boundary(const CorrelationParams& p, double theta,
                                double phi) {
  const double co = std::cos(p.omega_t());
  if (std::abs(co) < 1e-12)
    throw std::invalid_argument(
        "positivity_boundary: degenerate at cos wt = 0 (slab "
        "s3^2 <= 1 - |a|^2)");
  const double ta = std::tan(p.omega_t());
  const double st = std::sin(theta);
  return {-p.a1() * ta + st * std::cos(phi) / co,
          -p.a2() * ta + st * std::sin(phi) / co, std::cos(theta)};
}

IntersectionReport intersection_equals_compatibility(double c,
                                                     double grid_step,
                                                     int t_samples) {
  check_c(c, "intersection_equals_compatibility");
  if (t_samples < 8)
    throw std::invalid_argument(
        "intersection_equals_compatibility: need at least 8 time samples");
  const int n = grid_count(grid_step);

  std::vector<double> coords(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) coords[i] = 2.0 * i / (n - 1) - 1.0;
  std::vector<double> cos_t(static_cast<std::size_t>(t_samples));
  std::vector<double> csin_t(static_cast<std::size_t>(t_samples));
  for (int k = 0; k < t_samples; ++k) {
    const double wt = 2.0 * M_PI * k / t_samples;
    cos_t[static_cast<std::size_t>(k)] = std::cos(wt);
    csin_t[static_cast<std::size_t>(k)] = c * std::sin(wt);
  }

  IntersectionReport rep;
  rep.c = c;
  rep.grid_step = grid_step;
  rep.t_samples = t_samples;
  const double near_tol = std::sqrt(3.0) * grid_step;  // one cell diagonal

  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        const RotatedBloch v{coords[i], coords[j], coords[k]};
        // Unrotated coordinates at alpha = 0: (s1, s2) = (-s_minus, -s_plus).
        const double s1 = -v.s_minus, s2 = -v.s_plus, s3 = v.s3;
        const double r2 = s1 * s1 + s2 * s2 + s3 * s3;
        if (r2 > 1.0) continue;
        ++rep.points_in_ball;
        const bool compat = in_compatibility(v, c);
        bool stays_in = true;
        for (int m = 0; m < t_samples; ++m) {
          const double x = s1 * cos_t[static_cast<std::size_t>(m)] +
                           csin_t[static_cast<std::size_t>(m)];
          const double y = s2 * cos_t[static_cast<std::size_t>(m)];
          if (x * x + y * y + s3 * s3 > 1.0) {
            stays_in = false;
            break;
          }
        }
        if (compat) {
          ++rep.compatible_points;
          if (!stays_in) ++rep.inside_failures;
          continue;
        }
        if (!stays_in) continue;
        ++rep.outside_passes;
        // Radial distance to the compatibility boundary (the domain is
        // convex and contains the origin for c < 1).
        double lo = 0.0, hi = 1.0;
        for (int it = 0; it < 40; ++it) {
          const double mid = 0.5 * (lo + hi);
          const RotatedBloch w{mid * v.s_plus, mid * v.s_minus, mid * v.s3};
          (in_compatibility(w, c) ? lo : hi) = mid;
        }
        const double dist = (1.0 - lo) * std::sqrt(v.s_plus * v.s_plus +
                                                   v.s_minus * v.s_minus +
                                                   v.s3 * v.s3);
        if (dist <= near_tol) {
          ++rep.boundary_exceptions;
          rep.max_exception_distance =
              std::max(rep.max_exception_distance, dist);
        } else {
          ++rep.interior_violations;
        }
      }
  rep.equivalent = rep.inside_failures == 0 && rep.interior_violations == 0;
  return rep;
}

std::vector<CurvePoint> section_minus3(double c, int n) {
  check_c(c, "section_minus3");
  if (n < 4) throw std::invalid_argument("section_minus3: need n >= 4");
  const double r = std::sqrt(1.0 - c * c);
  std::vector<CurvePoint> out;
  out.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const double b = 2.0 * M_PI * i / n;
    out.push_back({r * std::cos(b), r * std::sin(b)});
  }
  return out;
}

std::vector<CurvePoint> section_plusminus(double c, int n) {
  check_c(c, "section_plusminus");
  if (n < 4) throw std::invalid_argument("section_plusminus: need n >= 4");
  const double r = std::sqrt(1.0 - c * c);
  std::vector<CurvePoint> out;
  out.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const double b = 2.0 * M_PI * i / n;
    out.push_back({std::cos(b), r * std::sin(b)});
  }
  return out;
}

std::vector<CurvePoint> section_plus3(double c, int n) {
  check_c(c, "section_plus3");
  if (n < 8) throw std::invalid_argument("section_plus3: need n >= 8");
  const double h = std::sqrt(1.0 - c * c);
  const double b0 = std::acos(c);  // arc half-opening around s_plus = +-1
  std::vector<CurvePoint> out;
  out.reserve(static_cast<std::size_t>(n));
  const int quarter = n / 4;
  // Right arc: (cos b, sin b), b from +b0 down to -b0.
  for (int i = 0; i < quarter; ++i) {
    const double b = b0 - 2.0 * b0 * i / quarter;
    out.push_back({std::cos(b), std::sin(b)});
  }
  // Bottom chord: s3 = -h, s_plus from +c to -c.
  for (int i = 0; i < quarter; ++i)
    out.push_back({c - 2.0 * c * i / quarter, -h});
  // Left arc: (cos b, sin b), b from pi + b0 down to pi - b0 keeps s3
  // rising from -h to +h.
  for (int i = 0; i < quarter; ++i) {
    const double b = M_PI + b0 - 2.0 * b0 * i / quarter;
    out.push_back({std::cos(b), std::sin(b)});
  }
  // Top chord: s3 = +h, s_plus from -c to +c.
  const int rest = n - 3 * quarter;
  for (int i = 0; i < rest; ++i)
    out.push_back({-c + 2.0 * c * i / rest, h});
  return out;
}

std::vector<GridPoint> domain_grid(double c, double step) {
  check_c(c, "domain_grid");
  const int n = grid_count(step);
  std::vector<GridPoint> out;
  out.reserve(static_cast<std::size_t>(n) * n * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        GridPoint g;
        g.s_plus = 2.0 * i / (n - 1) - 1.0;
        g.s_minus = 2.0 * j / (n - 1) - 1.0;
        g.s3 = 2.0 * k / (n - 1) - 1.0;
        g.in_domain = in_compatibility({g.s_plus, g.s_minus, g.s3}, c);
        out.push_back(g);
      }
  return out;
}

}  // namespace ncp
