#pragma once

#include <functional>
#include <memory>
#include <vector>

#include "frenet/expression.hpp"
#include "frenet/frame.hpp"

namespace frenet {

/// Curvature and torsion as functions of arclength on [s_min, s_max].
///
/// Analytic profiles evaluate an expression pair and carry exact derivatives.
/// Table profiles interpolate sorted (s, kappa, tau) rows with a monotone
/// cubic (PCHIP) and differentiate the interpolant.
class CurvatureProfile {
 public:
  enum class Kind { Analytic, Table };

  static CurvatureProfile analytic(Expression kappa, Expression tau, double s_min, double s_max);
  static CurvatureProfile table(std::vector<double> s, std::vector<double> kappa,
                                std::vector<double> tau);

  Kind kind() const { return kind_; }
  double s_min() const { return s_min_; }
  double s_max() const { return s_max_; }

  /// Analytic profiles only.
  const Expression& kappa_expression() const;
  const Expression& tau_expression() const;

  /// Throws PROFILE_EVAL_ERROR with `s` on evaluation failure or outside the domain.
  CurvatureSample evaluate(double s) const;

  /// Arclength locations (on a grid of step h over the domain) where kappa < -tolerance.
  std::vector<double> negative_curvature_locations(double h, double tolerance = kDefaultKappaFloor) const;

 private:
  struct TableData;

  CurvatureProfile() = default;

  Kind kind_ = Kind::Analytic;
  double s_min_ = 0.0;
  double s_max_ = 0.0;
  std::shared_ptr<const Expression> kappa_expr_;
  std::shared_ptr<const Expression> tau_expr_;
  std::shared_ptr<const TableData> table_;
};

}  // namespace frenet
