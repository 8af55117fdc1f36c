#pragma once

// Curve reconstruction from curvature profiles and the inverse problem of
// estimating frames and curvatures from sampled points.

#include <span>
#include <vector>

#include "frenet/framed_curve.hpp"
#include "frenet/profile.hpp"

namespace frenet {

inline constexpr double kDefaultStep = 1e-3;

/// Integrates x' = T, T' = kappa N, N' = -kappa T + tau B, B' = -tau N with
/// classical RK4 on UniformGrid::spanning(s0, s1, h), re-orthonormalizing the
/// frame after every step. kappa, tau, their derivatives and sigma are filled
/// from the profile; samples with kappa < kappa_floor are flagged degenerate.
FramedCurve integrate_frenet(const CurvatureProfile& profile, const Vec3& init_point,
                             const FrenetFrame& init_frame, double s0, double s1,
                             double h = kDefaultStep, double kappa_floor = kDefaultKappaFloor);

/// Third-order local canonical form around a curve point.
Vec3 taylor_local(const Vec3& init_point, const FrenetFrame& init_frame, double kappa0,
                  double dkappa0, double tau0, double s);

/// Frames and curvatures from raw samples: arclength resampling, 5-point
/// finite differences, then the general-parameter formulas. Closed curves use
/// periodic stencils.
FramedCurve estimate_frame_curvatures(std::span<const Vec3> points, bool closed = false,
                                      double kappa_floor = kDefaultKappaFloor);

/// Resamples a polyline uniformly in cumulative chord length using a clamped
/// cubic spline. The output spans the full length with a step that is the
/// largest value <= target_h dividing it evenly.
std::vector<Vec3> arclength_reparametrize(std::span<const Vec3> points, double target_h);

}  // namespace frenet
