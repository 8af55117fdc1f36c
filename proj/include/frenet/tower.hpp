#pragma once

// Towers of k-principal direction curves: gamma_0 is the main curve and
// gamma_{k+1} is the integral curve of the principal normal of gamma_k,
// sharing the main curve's arclength grid.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "frenet/framed_curve.hpp"

namespace frenet {

struct TowerOptions {
  double kappa_floor = kDefaultKappaFloor;
  /// A level whose |tau| stays below this on its valid interval is planar;
  /// the recursion stops there.
  double planar_tol = 1e-6;
  /// Allowed disagreement between the recursive frames and the frames
  /// re-estimated from the integrated points.
  double cross_check_tol = 1e-4;
};

struct TowerLevel {
  int k = 0;
  FramedCurve curve;
  std::vector<double> omega;   // |W_k| = sqrt(kappa_k^2 + tau_k^2)
  std::vector<Vec3> darboux;   // W_k = tau_k T_k + kappa_k B_k
  /// Max |frame difference| against estimate_frame_curvatures on the interior
  /// of the valid interval. Unset for level 0.
  std::optional<double> cross_check_error;
};

struct DirectionTower {
  std::vector<TowerLevel> levels;
  int requested_depth = 0;
  /// Set when construction stopped before requested_depth.
  std::optional<std::string> stop_reason;
  std::vector<std::string> warnings;

  const UniformGrid& grid() const { return levels.front().curve.grid; }
};

/// Wraps a framed curve as level 0. Its valid interval becomes the longest
/// run of non-degenerate samples inside curve.valid.
TowerLevel base_level(const FramedCurve& main, const TowerOptions& options = {});

/// Builds level k+1 from level k: frames by the recursion
///   T' = N, N' = (-kappa T + tau B)/omega, B' = T' x N',
/// curvatures kappa' = omega, tau' = sigma * omega, points by cumulative
/// Simpson integration of N (origin at the start of the valid interval).
/// Throws LEVEL_UNAVAILABLE when the level is planar or too short.
TowerLevel principal_direction_step(const TowerLevel& level, const TowerOptions& options = {});

/// Levels 0..depth; stops early (recording stop_reason) on LEVEL_UNAVAILABLE.
DirectionTower build_tower(const FramedCurve& main, int depth, const TowerOptions& options = {});

/// Sup-norm of W x T - T', W x N - N', W x B - B' over the interior of the
/// valid interval, with the frame derivatives taken by finite differences.
struct DarbouxResidual {
  double t = 0.0;
  double n = 0.0;
  double b = 0.0;

  double max() const { return std::max({t, n, b}); }
};

DarbouxResidual darboux_residual(const TowerLevel& level);

struct MaskedSeries {
  std::vector<double> values;
  std::vector<std::uint8_t> valid;
};

/// Torsion/curvature ratio of the tangent indicatrix T_k(s), estimated by
/// general-parameter formulas from finite differences of the tabulated T_k.
MaskedSeries tangent_indicatrix_ratio(const TowerLevel& level,
                                      double kappa_floor = kDefaultKappaFloor);

}  // namespace frenet
