#pragma once

#include <span>
#include <vector>

#include "frenet/vec3.hpp"

namespace frenet::detail {

/// Cubic spline through (t_i, p_i), t strictly increasing. With at least four
/// knots the end slopes are clamped to the derivative of the cubic through the
/// four nearest knots; otherwise natural end conditions are used.
class CubicSpline {
 public:
  CubicSpline(std::vector<double> t, std::vector<Vec3> p);

  Vec3 operator()(double t) const;

  double front() const { return t_.front(); }
  double back() const { return t_.back(); }

 private:
  std::vector<double> t_;
  std::vector<Vec3> p_;
  std::vector<Vec3> m_;  // second derivatives at the knots
};

}  // namespace frenet::detail
