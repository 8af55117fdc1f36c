#pragma once

// Frenet frames and the pointwise quantities built on them: Darboux vector,
// geodesic curvature of the principal normal, and the helix / slant-helix
// axis directions.

#include "frenet/vec3.hpp"

namespace frenet {

inline constexpr double kDefaultKappaFloor = 1e-9;
inline constexpr double kFrameTolerance = 1e-9;

struct FrenetFrame {
  Vec3 T{1.0, 0.0, 0.0};
  Vec3 N{0.0, 1.0, 0.0};
  Vec3 B{0.0, 0.0, 1.0};

  friend constexpr bool operator==(const FrenetFrame&, const FrenetFrame&) = default;
};

/// Largest entry of |G - I| where G is the Gram matrix of (T, N, B).
double gram_deviation(const FrenetFrame& frame);

/// Orthonormal and right-handed (B = T x N) within `tol`.
bool is_valid(const FrenetFrame& frame, double tol = kFrameTolerance);

/// Builds a frame from T and N, recomputing B = T x N. No orthonormalization.
FrenetFrame frame_from(const Vec3& T, const Vec3& N);

/// Curvature data at one arclength sample; derivatives are with respect to s.
struct CurvatureSample {
  double s = 0.0;
  double kappa = 0.0;
  double tau = 0.0;
  double dkappa = 0.0;
  double dtau = 0.0;

  bool degenerate(double kappa_floor = kDefaultKappaFloor) const { return kappa < kappa_floor; }
};

/// W = tau T + kappa B.
Vec3 darboux_vector(const FrenetFrame& frame, double kappa, double tau);

/// Geodesic curvature of the principal normal,
/// sigma = (tau' kappa - kappa' tau) / (kappa^2 + tau^2)^(3/2).
/// Signed. Throws SIGMA_UNDEFINED on degenerate samples.
double geodesic_curvature(const CurvatureSample& sample,
                          double kappa_floor = kDefaultKappaFloor);

/// u = cos(theta) T + sin(theta) B.
Vec3 helix_axis_tangent(const FrenetFrame& frame, double theta);

/// u = sin(theta) W/|W| + cos(theta) N. Throws AXIS_UNDEFINED when W = 0.
Vec3 slant_axis(const FrenetFrame& frame, double kappa, double tau, double theta);

/// Modified Gram-Schmidt on (T, N) followed by B = T x N.
/// Throws FRAME_COLLAPSE when T or the N residual is below 1e-8.
FrenetFrame orthonormalize(const FrenetFrame& frame);

}  // namespace frenet
