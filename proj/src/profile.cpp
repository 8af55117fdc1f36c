#include "frenet/profile.hpp"

#include <cmath>

// Boost 1.74's pchip calls isnan unqualified.
using std::isnan;
#include <boost/math/interpolators/pchip.hpp>
#include <stdexcept>
#include <string>

#include "frenet/error.hpp"

namespace frenet {

struct CurvatureProfile::TableData {
  boost::math::interpolators::pchip<std::vector<double>> kappa;
  boost::math::interpolators::pchip<std::vector<double>> tau;
};

CurvatureProfile CurvatureProfile::analytic(Expression kappa, Expression tau, double s_min,
                                            double s_max) {
  if (!(s_min < s_max) || !std::isfinite(s_min) || !std::isfinite(s_max)) {
    throw Error(ErrorCode::InvalidArgument, "profile domain must satisfy s_min < s_max");
  }
  CurvatureProfile p;
  p.kind_ = Kind::Analytic;
  p.s_min_ = s_min;
  p.s_max_ = s_max;
  p.kappa_expr_ = std::make_shared<const Expression>(std::move(kappa));
  p.tau_expr_ = std::make_shared<const Expression>(std::move(tau));
  return p;
}

CurvatureProfile CurvatureProfile::table(std::vector<double> s, std::vector<double> kappa,
                                         std::vector<double> tau) {
  if (s.size() != kappa.size() || s.size() != tau.size()) {
    throw Error(ErrorCode::InvalidArgument, "table columns differ in length");
  }
  if (s.size() < 4) {
    throw Error(ErrorCode::InsufficientSamples, "table profile needs at least 4 rows");
  }
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (!std::isfinite(s[i]) || !std::isfinite(kappa[i]) || !std::isfinite(tau[i])) {
      throw Error(ErrorCode::NonFinite, "non-finite table entry in row " + std::to_string(i + 1));
    }
    if (i > 0 && !(s[i] > s[i - 1])) {
      throw Error(ErrorCode::InvalidArgument,
                  "table rows must be strictly increasing in s (row " + std::to_string(i + 1) + ")",
                  s[i]);
    }
  }
  CurvatureProfile p;
  p.kind_ = Kind::Table;
  p.s_min_ = s.front();
  p.s_max_ = s.back();
  std::vector<double> s2 = s;
  p.table_ = std::make_shared<const TableData>(TableData{
      boost::math::interpolators::pchip<std::vector<double>>(std::move(s), std::move(kappa)),
      boost::math::interpolators::pchip<std::vector<double>>(std::move(s2), std::move(tau))});
  return p;
}

const Expression& CurvatureProfile::kappa_expression() const {
  if (!kappa_expr_) throw Error(ErrorCode::InvalidArgument, "table profile has no expression");
  return *kappa_expr_;
}

const Expression& CurvatureProfile::tau_expression() const {
  if (!tau_expr_) throw Error(ErrorCode::InvalidArgument, "table profile has no expression");
  return *tau_expr_;
}

CurvatureSample CurvatureProfile::evaluate(double s) const {
  // Grid endpoints may overshoot the domain by rounding.
  const double slack = 1e-12 * std::fmax(1.0, std::fabs(s_max_ - s_min_));
  if (!(s >= s_min_ - slack && s <= s_max_ + slack)) {
    throw Error(ErrorCode::ProfileEvalError,
                "s=" + std::to_string(s) + " outside profile domain [" + std::to_string(s_min_) +
                    ", " + std::to_string(s_max_) + "]",
                s);
  }
  CurvatureSample out;
  out.s = s;
  if (kind_ == Kind::Analytic) {
    const Dual k = kappa_expr_->evaluate(s);
    const Dual t = tau_expr_->evaluate(s);
    out.kappa = k.value;
    out.dkappa = k.deriv;
    out.tau = t.value;
    out.dtau = t.deriv;
    return out;
  }
  const double sc = std::fmin(std::fmax(s, s_min_), s_max_);
  try {
    out.kappa = table_->kappa(sc);
    out.dkappa = table_->kappa.prime(sc);
    out.tau = table_->tau(sc);
    out.dtau = table_->tau.prime(sc);
  } catch (const std::exception& e) {
    throw Error(ErrorCode::ProfileEvalError, std::string("table interpolation failed: ") + e.what(),
                s);
  }
  return out;
}

std::vector<double> CurvatureProfile::negative_curvature_locations(double h,
                                                                   double tolerance) const {
  if (!(h > 0.0)) throw Error(ErrorCode::InvalidArgument, "validation step must be positive");
  std::vector<double> bad;
  const auto n = static_cast<std::size_t>(std::ceil((s_max_ - s_min_) / h));
  for (std::size_t i = 0; i <= n; ++i) {
    const double s = i == n ? s_max_ : s_min_ + static_cast<double>(i) * h;
    if (evaluate(s).kappa < -tolerance) bad.push_back(s);
  }
  return bad;
}

}  // namespace frenet
