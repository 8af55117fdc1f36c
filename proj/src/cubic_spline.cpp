#include "cubic_spline.hpp"

#include <algorithm>
#include <array>

#include "frenet/error.hpp"
#include "frenet/finite_difference.hpp"

namespace frenet::detail {
namespace {

Vec3 end_slope(std::span<const double> t, std::span<const Vec3> p, double at) {
  const auto w = fd::fornberg_weights(at, t, 1);
  Vec3 d{};
  for (std::size_t j = 0; j < w.size(); ++j) d += w[j] * p[j];
  return d;
}

}  // namespace

CubicSpline::CubicSpline(std::vector<double> t, std::vector<Vec3> p)
    : t_(std::move(t)), p_(std::move(p)) {
  const std::size_t n = t_.size();
  if (n < 2 || p_.size() != n) throw Error(ErrorCode::InsufficientSamples, "spline needs 2+ knots");
  for (std::size_t i = 1; i < n; ++i) {
    if (!(t_[i] > t_[i - 1])) throw Error(ErrorCode::NotRegular, "spline knots not increasing");
  }
  m_.assign(n, Vec3{});
  if (n == 2) return;

  std::vector<double> lower(n, 0.0), diag(n, 1.0), upper(n, 0.0);
  std::vector<Vec3> rhs(n);
  auto h = [&](std::size_t i) { return t_[i + 1] - t_[i]; };
  auto slope = [&](std::size_t i) { return (p_[i + 1] - p_[i]) / h(i); };
  for (std::size_t i = 1; i + 1 < n; ++i) {
    lower[i] = h(i - 1);
    diag[i] = 2.0 * (h(i - 1) + h(i));
    upper[i] = h(i);
    rhs[i] = 6.0 * (slope(i) - slope(i - 1));
  }
  if (n >= 4) {
    const Vec3 d0 = end_slope(std::span(t_).first(4), std::span(p_).first(4), t_.front());
    const Vec3 d1 = end_slope(std::span(t_).last(4), std::span(p_).last(4), t_.back());
    diag[0] = 2.0 * h(0);
    upper[0] = h(0);
    rhs[0] = 6.0 * (slope(0) - d0);
    lower[n - 1] = h(n - 2);
    diag[n - 1] = 2.0 * h(n - 2);
    rhs[n - 1] = 6.0 * (d1 - slope(n - 2));
  }
  // Thomas algorithm.
  for (std::size_t i = 1; i < n; ++i) {
    const double w = lower[i] / diag[i - 1];
    diag[i] -= w * upper[i - 1];
    rhs[i] -= w * rhs[i - 1];
  }
  m_[n - 1] = rhs[n - 1] / diag[n - 1];
  for (std::size_t i = n - 1; i-- > 0;) m_[i] = (rhs[i] - upper[i] * m_[i + 1]) / diag[i];
}

Vec3 CubicSpline::operator()(double t) const {
  const auto it = std::upper_bound(t_.begin(), t_.end(), t);
  std::size_t i = it == t_.begin() ? 0 : static_cast<std::size_t>(it - t_.begin()) - 1;
  i = std::min(i, t_.size() - 2);
  const double h = t_[i + 1] - t_[i];
  const double a = (t_[i + 1] - t) / h;
  const double b = 1.0 - a;
  return a * p_[i] + b * p_[i + 1] + ((a * a * a - a) * m_[i] + (b * b * b - b) * m_[i + 1]) * (h * h / 6.0);
}

}  // namespace frenet::detail
