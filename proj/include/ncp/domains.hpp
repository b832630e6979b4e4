#pragma once

// Geometry of the two domains attached to the two-qubit reduced dynamics:
//
//  * the compatibility domain: Bloch vectors of reduced states that can
//    coexist with the fixed correlations <S1 X1> = c sin(alpha),
//    <S2 X1> = -c cos(alpha) in some joint state of the pair;
//  * the positivity domain: Bloch vectors kept inside the unit ball by the
//    reduced map at one time, for every time.
//
// Work happens in rotated Bloch coordinates (s_plus, s_minus, s3) where the
// correlation singles out one transverse direction: <S_plus X1> = c,
// <S_minus X1> = 0.  The central identity checked here is that the
// intersection of the positivity domains over all times equals the
// compatibility domain.

#include "ncp/two_qubit.hpp"

#include <vector>

namespace ncp {

struct RotatedBloch {
  double s_plus = 0, s_minus = 0, s3 = 0;
};

class DomainSpec {
 public:
  // Requires 0 <= c < 1; c = 1 collapses the domain to a line and is
  // excluded.  alpha is the transverse angle of the correlation,
  // a1 = c cos(alpha), a2 = c sin(alpha).
  DomainSpec(double c, double alpha);

  double c() const { return c_; }
  double alpha() const { return alpha_; }

 private:
  double c_, alpha_;
};

// (s1, s2) -> (s_plus, s_minus) by the involutory reflection
//   s_plus = sin(alpha) s1 - cos(alpha) s2,
//   s_minus = -cos(alpha) s1 - sin(alpha) s2;
// the identity is used at c = 0 where no direction is singled out.
RotatedBloch to_rotated(const BlochVector& v, const DomainSpec& spec);
BlochVector from_rotated(const RotatedBloch& v, const DomainSpec& spec);

// Membership in the compatibility domain:
//   sqrt((s_minus^2 + s_plus^2 + c^2)^2 - 4 s_plus^2 c^2)
//     <= 2 - 2 s3^2 - s_minus^2 - s_plus^2 - c^2,
// false outright when the right side is negative.  Requires 0 <= c < 1.
bool in_compatibility(const RotatedBloch& v, double c);

// A joint two-qubit state witnessing membership: its first-qubit partial
// trace has Bloch vector v and its correlations are <S_plus X1> = c,
// <S_minus X1> = 0 (canonical axes S_plus = S1, S_minus = S2).  Requires
// in_compatibility(v, c).
Matrix compatibility_witness(const RotatedBloch& v, double c);

// v and its image both inside the unit ball.
bool in_positivity(const BlochVector& v, const CorrelationParams& p);

// Preimage of the unit-sphere point (theta, phi) under the Bloch-vector
// evolution:
//   ( -a1 tan wt + sin(theta) cos(phi)/cos wt,
//     -a2 tan wt + sin(theta) sin(phi)/cos wt,  cos(theta) ).
// Throws when |cos wt| < 1e-12 (the preimage degenerates to the slab
// s3^2 <= 1 - |a|^2 there).
BlochVector positivity_boundary(const CorrelationParams& p, double theta,
                                double phi);

struct IntersectionReport {
  double c = 0;
  double grid_step = 0;
  int t_samples = 0;
  long points_in_ball = 0;
  long compatible_points = 0;
  // Compatible points that leave the unit ball at some sampled time.
  long inside_failures = 0;
  // Incompatible points that stay inside at every sampled time...
  long outside_passes = 0;
  // ...split into those within one grid cell of the boundary and the rest.
  long boundary_exceptions = 0;
  long interior_violations = 0;
  double max_exception_distance = 0;
  bool equivalent = false;  // no inside failures, no interior violations
};

// Grid check (rotated coordinates, step over [-1,1]^3, times uniform over
// [0, 2pi)) that the intersection of positivity domains over the sampled
// times coincides with the compatibility domain up to grid resolution.
IntersectionReport intersection_equals_compatibility(double c,
                                                     double grid_step = 0.02,
                                                     int t_samples = 720);

// Boundary sections of the compatibility domain, for plotting.
struct CurvePoint {
  double u = 0, v = 0;
};
// s_plus = 0: circle s_minus^2 + s3^2 = 1 - c^2, points (s_minus, s3).
std::vector<CurvePoint> section_minus3(double c, int n);
// s3 = 0: ellipse s_minus^2/(1-c^2) + s_plus^2 = 1, points (s_plus, s_minus).
std::vector<CurvePoint> section_plusminus(double c, int n);
// s_minus = 0: unit-circle arcs where s_plus^2 >= c^2 joined by the chords
// s3 = +-sqrt(1-c^2), points (s_plus, s3).
std::vector<CurvePoint> section_plus3(double c, int n);

struct GridPoint {
  double s_plus = 0, s_minus = 0, s3 = 0;
  bool in_domain = false;
};
std::vector<GridPoint> domain_grid(double c, double step);

}  // namespace ncp
