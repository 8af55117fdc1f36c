#pragma once

// Helix-family classification: the classical curvature cases, N_k-slant
// helices over a direction tower, and N_k-constant precession.
//
// Slant-helix angles follow u = sin(theta) W/|W| + cos(theta) N with
// cot(theta) = sigma. The pair (u, theta) is determined up to
// (u, theta) ~ (-u, theta + pi); the reported representative has
// theta in (-pi/2, pi/2].

#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "frenet/profile.hpp"
#include "frenet/tower.hpp"

namespace frenet {

struct Tolerances {
  double rel_tol = 1e-3;
  double abs_floor = 1e-6;
  double kappa_floor = kDefaultKappaFloor;
};

struct ConstancyTest {
  std::string name;
  double mean = 0.0;
  double spread = 0.0;  // max - min over the interior samples
  double rel_tol = 0.0;
  double abs_floor = 0.0;
  bool verdict = false;

  double tolerance() const;
};

/// Constancy over the middle 90% of `values`. Throws INSUFFICIENT_SAMPLES
/// with fewer than 10 interior samples.
ConstancyTest constancy(std::span<const double> values, double rel_tol, double abs_floor,
                        std::string name = {});

enum class Label { Line, Planar, Circle, Helix, SlantHelix, ConstantPrecession };

std::string_view to_string(Label label);

/// Slant-helix analysis of one tower level.
struct LevelSlant {
  int k = 0;
  bool qualifies = false;
  ConstancyTest sigma_test;
  /// sigma failed numerically but tau/kappa is constant, so sigma = 0 exactly.
  bool implied_by_helix = false;
  std::optional<double> theta;
  std::optional<Vec3> axis;
  /// max |<T,u> - tau sin(theta)/omega|, |<B,u> - kappa sin(theta)/omega|
  std::optional<double> component_residual;
  /// Same residual for the form <T,u> = tau sigma cos(theta), <B,u> = kappa sigma cos(theta).
  std::optional<double> printed_component_residual;
  std::vector<ConstancyTest> checks;
};

struct ClassificationReport {
  std::set<Label> labels;
  std::optional<int> nk_level;
  /// Angle of the axis with T for helices, with N (or N_k) otherwise.
  std::optional<double> theta;
  std::optional<Vec3> axis;
  std::optional<double> omega;
  std::optional<double> mu;
  std::optional<double> frequency;
  std::optional<double> phase;
  std::optional<double> radius;
  std::optional<double> ratio;            // tau/kappa for helices
  std::optional<Vec3> precession_axis;    // W_k + mu N_k, unnormalized
  std::vector<ConstancyTest> tests;
  std::vector<LevelSlant> levels;
  std::optional<std::pair<double, double>> valid_interval;
  std::vector<std::string> warnings;

  bool has(Label l) const { return labels.count(l) != 0; }
};

/// Cases line / planar / circle / helix / slant helix / constant precession
/// of a single framed curve. Labels stack.
ClassificationReport classify_basic(const FramedCurve& curve, const Tolerances& tols = {});

/// Smallest k whose level has constant sigma_k, with axis and angle; every
/// analysed level appears in `levels`. Throws NOT_NK_SLANT.
ClassificationReport detect_nk_slant(const DirectionTower& tower, const Tolerances& tols = {});

/// detect_nk_slant plus constant |W_k|, the precession rate mu and the fixed
/// axis W_k + mu N_k. Throws NOT_NK_SLANT or NK_SLANT_ONLY.
ClassificationReport detect_nk_constant_precession(const DirectionTower& tower,
                                                   const Tolerances& tols = {});

/// kappa = omega sin(mu s + phase), tau = omega cos(mu s + phase) on [s_min, s_max].
CurvatureProfile generate_precession_profile(double omega, double mu, double phase, double s_min,
                                             double s_max);

/// True when (u1, theta1) and (u2, theta2) describe the same slant axis up to
/// (u, theta) ~ (-u, theta + pi), within `angle_tol` radians for both parts.
bool same_slant_axis(const Vec3& u1, double theta1, const Vec3& u2, double theta2,
                     double angle_tol);

}  // namespace frenet
