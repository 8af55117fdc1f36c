#include "frenet/classifier.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "frenet/error.hpp"
#include "frenet/op_trace.hpp"

namespace frenet {
namespace {

constexpr double kAxisAngleTol = 1e-3;
constexpr double kIdentityTol = 1e-3;
constexpr std::size_t kMinInterior = 10;

std::span<const double> slice(const std::vector<double>& v, IndexRange r) {
  return {v.data() + r.begin, r.size()};
}

/// Bound check recorded in ConstancyTest form: mean = spread = observed
/// deviation, tolerance = bound.
ConstancyTest bound_check(std::string name, double deviation, double bound) {
  ConstancyTest t;
  t.name = std::move(name);
  t.mean = deviation;
  t.spread = deviation;
  t.rel_tol = 0.0;
  t.abs_floor = bound;
  t.verdict = deviation <= bound;
  return t;
}

ConstancyTest zero_test(std::string name, std::span<const double> values, double floor) {
  double worst = 0.0;
  for (double v : values) worst = std::max(worst, std::fabs(v));
  return bound_check(std::move(name), worst, floor);
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

double wrap_angle(double a) {
  a = std::remainder(a, 2.0 * std::numbers::pi);
  return a <= -std::numbers::pi ? a + 2.0 * std::numbers::pi : a;
}

Vec3 unit_darboux(const FramedCurve& c, std::size_t i) {
  return normalized(c.tau[i] * c.frames[i].T + c.kappa[i] * c.frames[i].B);
}

LevelSlant analyse_slant(const FramedCurve& c, IndexRange r, int k, const Tolerances& tols) {
  LevelSlant out;
  out.k = k;
  const std::string prefix = "level" + std::to_string(k) + ".";
  out.sigma_test = constancy(slice(c.sigma, r), tols.rel_tol, tols.abs_floor, prefix + "sigma");
  double sigma = out.sigma_test.mean;
  if (!out.sigma_test.verdict) {
    // sigma carries third derivatives of the data; a helix has sigma = 0
    // identically, which the far better conditioned ratio test can confirm.
    std::vector<double> ratio(r.size());
    for (std::size_t i = r.begin; i < r.end; ++i) ratio[i - r.begin] = c.tau[i] / c.kappa[i];
    ConstancyTest helix = constancy(ratio, tols.rel_tol, tols.abs_floor, prefix + "tau_over_kappa");
    if (!helix.verdict) return out;
    out.implied_by_helix = true;
    out.checks.push_back(std::move(helix));
    sigma = 0.0;
  }
  out.qualifies = true;
  // Below the floor the sign of sigma is noise, and it decides between the
  // representatives (u, pi/2) and (-u, -pi/2).
  if (std::fabs(sigma) <= tols.abs_floor) sigma = 0.0;

  const double theta0 = sigma == 0.0 ? std::numbers::pi / 2.0 : std::atan(1.0 / sigma);
  Vec3 sum{};
  for (std::size_t i = r.begin; i < r.end; ++i) {
    sum += slant_axis(c.frames[i], c.kappa[i], c.tau[i], theta0);
  }
  const Vec3 u = normalized(sum);

  std::vector<double> n_dot(r.size()), w_dot(r.size());
  double angle_spread = 0.0;
  for (std::size_t i = r.begin; i < r.end; ++i) {
    n_dot[i - r.begin] = dot(c.frames[i].N, u);
    w_dot[i - r.begin] = dot(unit_darboux(c, i), u);
  }
  const IndexRange inner = interior(r);
  for (std::size_t i = inner.begin; i < inner.end; ++i) {
    angle_spread = std::max(angle_spread,
                            angle_between(slant_axis(c.frames[i], c.kappa[i], c.tau[i], theta0), u));
  }
  double mean_n = 0.0, mean_w = 0.0;
  for (std::size_t j = 0; j < r.size(); ++j) {
    mean_n += n_dot[j];
    mean_w += w_dot[j];
  }
  const double theta = std::atan2(mean_w, mean_n);

  double residual = 0.0, printed = 0.0;
  const double st = std::sin(theta), ct = std::cos(theta);
  for (std::size_t i = inner.begin; i < inner.end; ++i) {
    const double omega = std::hypot(c.kappa[i], c.tau[i]);
    const double tu = dot(c.frames[i].T, u), bu = dot(c.frames[i].B, u);
    residual = std::max({residual, std::fabs(tu - c.tau[i] * st / omega),
                         std::fabs(bu - c.kappa[i] * st / omega)});
    printed = std::max({printed, std::fabs(tu - c.tau[i] * c.sigma[i] * ct),
                        std::fabs(bu - c.kappa[i] * c.sigma[i] * ct)});
  }

  out.theta = theta;
  out.axis = u;
  out.component_residual = residual;
  out.printed_component_residual = printed;
  out.checks.push_back(constancy(n_dot, tols.rel_tol, tols.abs_floor, prefix + "normal_dot_axis"));
  out.checks.push_back(constancy(w_dot, tols.rel_tol, tols.abs_floor, prefix + "darboux_dot_axis"));
  out.checks.push_back(bound_check(prefix + "axis_angle_spread", angle_spread, kAxisAngleTol));
  out.checks.push_back(bound_check(prefix + "axis_components", residual, kIdentityTol));
  return out;
}

struct PrecessionFit {
  ConstancyTest omega;
  std::optional<ConstancyTest> mu;
  std::vector<ConstancyTest> checks;
  double frequency = 0.0;
  double phase = 0.0;
  Vec3 axis;

  bool ok() const {
    if (!omega.verdict || !mu || !mu->verdict) return false;
    return std::all_of(checks.begin(), checks.end(), [](const ConstancyTest& t) { return t.verdict; });
  }
};

PrecessionFit fit_precession(const FramedCurve& c, IndexRange r, int k, const Tolerances& tols) {
  const std::string prefix = "level" + std::to_string(k) + ".";
  PrecessionFit fit;
  std::vector<double> omega(r.size());
  for (std::size_t i = r.begin; i < r.end; ++i) omega[i - r.begin] = std::hypot(c.kappa[i], c.tau[i]);
  fit.omega = constancy(omega, tols.rel_tol, tols.abs_floor, prefix + "omega");
  const double w = fit.omega.mean;

  // Pointwise rate from tau' = mu kappa, cross-checked by kappa' = -mu tau.
  const IndexRange inner = interior(r);
  std::vector<double> mu;
  double disagreement = 0.0;
  for (std::size_t i = inner.begin; i < inner.end; ++i) {
    if (c.kappa[i] < std::max(tols.kappa_floor, 1e-2 * w)) continue;
    const double m = c.dtau[i] / c.kappa[i];
    mu.push_back(m);
    if (std::fabs(c.tau[i]) >= 1e-2 * w) {
      disagreement = std::max(disagreement, std::fabs(m + c.dkappa[i] / c.tau[i]));
    }
  }
  if (mu.size() < kMinInterior * 10 / 9 + 1) return fit;
  fit.mu = constancy(mu, tols.rel_tol, tols.abs_floor, prefix + "mu");
  const double mu_bar = fit.mu->mean;
  fit.checks.push_back(
      bound_check(prefix + "mu_cross_check", disagreement, 1e-3 * std::max(1.0, std::fabs(mu_bar))));

  Vec3 mean_axis{};
  std::vector<Vec3> axes;
  for (std::size_t i = inner.begin; i < inner.end; ++i) {
    axes.push_back(c.tau[i] * c.frames[i].T + c.kappa[i] * c.frames[i].B + mu_bar * c.frames[i].N);
    mean_axis += axes.back();
  }
  mean_axis = mean_axis / static_cast<double>(axes.size());
  double spread = 0.0;
  for (const Vec3& a : axes) spread = std::max(spread, norm(a - mean_axis));
  fit.axis = mean_axis;
  fit.checks.push_back(bound_check(prefix + "precession_axis_spread", spread, 1e-3 * norm(mean_axis)));

  // Least-squares line through the unwrapped phase atan2(kappa, tau).
  double prev = 0.0, offset = 0.0;
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  const double s_mid = 0.5 * (c.s(r.begin) + c.s(r.end - 1));
  for (std::size_t i = r.begin; i < r.end; ++i) {
    double ph = std::atan2(c.kappa[i], c.tau[i]);
    if (i > r.begin) {
      const double jump = ph + offset - prev;
      offset -= 2.0 * std::numbers::pi * std::round(jump / (2.0 * std::numbers::pi));
    }
    ph += offset;
    prev = ph;
    const double x = c.s(i) - s_mid;
    sx += x;
    sy += ph;
    sxx += x * x;
    sxy += x * ph;
  }
  const auto n = static_cast<double>(r.size());
  const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  const double intercept = (sy - slope * sx) / n;
  fit.frequency = slope;
  fit.phase = wrap_angle(intercept - slope * s_mid);
  double residual = 0.0;
  for (std::size_t i = inner.begin; i < inner.end; ++i) {
    const double arg = fit.frequency * c.s(i) + fit.phase;
    residual = std::max({residual, std::fabs(c.kappa[i] - w * std::sin(arg)),
                         std::fabs(c.tau[i] - w * std::cos(arg))});
  }
  fit.checks.push_back(bound_check(prefix + "sinusoid_residual", residual, 1e-3 * w));
  return fit;
}

void apply_precession(ClassificationReport& rep, const PrecessionFit& fit) {
  rep.omega = fit.omega.mean;
  if (fit.mu) rep.mu = fit.mu->mean;
  rep.frequency = fit.frequency;
  rep.phase = fit.phase;
  rep.precession_axis = fit.axis;
  rep.tests.push_back(fit.omega);
  if (fit.mu) rep.tests.push_back(*fit.mu);
  rep.tests.insert(rep.tests.end(), fit.checks.begin(), fit.checks.end());
}

std::vector<std::string> failed(const std::vector<ConstancyTest>& tests) {
  std::vector<std::string> out;
  for (const auto& t : tests) {
    if (!t.verdict) out.push_back(t.name + " (" + fmt(t.spread) + " > " + fmt(t.tolerance()) + ")");
  }
  return out;
}

std::string implied_note(const LevelSlant& ls) {
  return "level " + std::to_string(ls.k) + ": sigma spread " + fmt(ls.sigma_test.spread) +
         " exceeds its tolerance, but tau/kappa is constant, so sigma = 0 and the level is a slant helix";
}

}  // namespace

double ConstancyTest::tolerance() const { return std::max(rel_tol * std::fabs(mean), abs_floor); }

ConstancyTest constancy(std::span<const double> values, double rel_tol, double abs_floor,
                        std::string name) {
  trace::note(trace::Op::Constancy);
  const IndexRange inner = interior({0, values.size()});
  if (inner.size() < kMinInterior) {
    throw Error(ErrorCode::InsufficientSamples,
                "constancy test '" + name + "' needs at least 10 interior samples");
  }
  ConstancyTest t;
  t.name = std::move(name);
  t.rel_tol = rel_tol;
  t.abs_floor = abs_floor;
  double lo = values[inner.begin], hi = lo, sum = 0.0;
  for (std::size_t i = inner.begin; i < inner.end; ++i) {
    if (!std::isfinite(values[i])) throw Error(ErrorCode::NonFinite, "non-finite sample in constancy test");
    lo = std::min(lo, values[i]);
    hi = std::max(hi, values[i]);
    sum += values[i];
  }
  t.mean = sum / static_cast<double>(inner.size());
  t.spread = hi - lo;
  t.verdict = t.spread <= t.tolerance();
  return t;
}

std::string_view to_string(Label label) {
  switch (label) {
    case Label::Line: return "LINE";
    case Label::Planar: return "PLANAR";
    case Label::Circle: return "CIRCLE";
    case Label::Helix: return "HELIX";
    case Label::SlantHelix: return "SLANT_HELIX";
    case Label::ConstantPrecession: return "CONSTANT_PRECESSION";
  }
  return "?";
}

ClassificationReport classify_basic(const FramedCurve& c, const Tolerances& tols) {
  trace::note(trace::Op::ClassifyBasic);
  ClassificationReport rep;
  const IndexRange r = c.valid;
  if (interior(r).size() < kMinInterior) {
    throw Error(ErrorCode::Unclassifiable, "curve has fewer than 10 interior samples");
  }
  rep.tests.push_back(zero_test("kappa_zero", slice(c.kappa, interior(r)), tols.abs_floor));
  if (rep.tests.back().verdict) {
    rep.labels.insert(Label::Line);
    rep.valid_interval = {{c.s(r.begin), c.s(r.end - 1)}};
    return rep;
  }

  const IndexRange rr = longest_regular_run(c.degenerate, r);
  if (interior(rr).size() < kMinInterior) {
    throw Error(ErrorCode::Unclassifiable, "no regular interval long enough to classify");
  }
  if (rr != r) rep.warnings.push_back("degenerate samples trimmed; classified on the longest regular run");
  rep.valid_interval = {{c.s(rr.begin), c.s(rr.end - 1)}};

  rep.tests.push_back(zero_test("tau_zero", slice(c.tau, interior(rr)), tols.abs_floor));
  if (rep.tests.back().verdict) {
    rep.labels.insert(Label::Planar);
    rep.tests.push_back(constancy(slice(c.kappa, rr), tols.rel_tol, tols.abs_floor, "kappa"));
    if (rep.tests.back().verdict) {
      rep.labels.insert(Label::Circle);
      rep.radius = 1.0 / rep.tests.back().mean;
    }
    return rep;
  }

  std::vector<double> ratio(rr.size());
  for (std::size_t i = rr.begin; i < rr.end; ++i) ratio[i - rr.begin] = c.tau[i] / c.kappa[i];
  rep.tests.push_back(constancy(ratio, tols.rel_tol, tols.abs_floor, "tau_over_kappa"));
  if (rep.tests.back().verdict) {
    rep.labels.insert(Label::Helix);
    rep.ratio = rep.tests.back().mean;
    double theta = 0.0;
    for (std::size_t i = rr.begin; i < rr.end; ++i) theta += std::atan2(c.kappa[i], c.tau[i]);
    theta /= static_cast<double>(rr.size());
    Vec3 sum{};
    for (std::size_t i = rr.begin; i < rr.end; ++i) sum += helix_axis_tangent(c.frames[i], theta);
    const Vec3 u = normalized(sum);
    double spread = 0.0;
    const IndexRange inner = interior(rr);
    for (std::size_t i = inner.begin; i < inner.end; ++i) {
      spread = std::max(spread, angle_between(helix_axis_tangent(c.frames[i], theta), u));
    }
    rep.tests.push_back(bound_check("helix_axis_angle_spread", spread, kAxisAngleTol));
    rep.theta = theta;
    rep.axis = u;
  }

  LevelSlant slant = analyse_slant(c, rr, 0, tols);
  rep.tests.push_back(slant.sigma_test);
  if (!slant.qualifies) return rep;
  rep.labels.insert(Label::SlantHelix);
  if (slant.implied_by_helix) rep.warnings.push_back(implied_note(slant));
  rep.tests.insert(rep.tests.end(), slant.checks.begin(), slant.checks.end());
  if (!rep.has(Label::Helix)) {
    rep.theta = slant.theta;
    rep.axis = slant.axis;
  }

  const PrecessionFit fit = fit_precession(c, rr, 0, tols);
  if (!fit.omega.verdict) {
    rep.tests.push_back(fit.omega);
    return rep;
  }
  rep.labels.insert(Label::ConstantPrecession);
  apply_precession(rep, fit);
  std::vector<ConstancyTest> checks = fit.checks;
  if (fit.mu) checks.push_back(*fit.mu);
  for (const auto& f : failed(checks)) rep.warnings.push_back("precession check failed: " + f);
  return rep;
}

ClassificationReport detect_nk_slant(const DirectionTower& tower, const Tolerances& tols) {
  trace::note(trace::Op::DetectNkSlant);
  if (tower.levels.empty()) throw Error(ErrorCode::InvalidArgument, "empty tower");
  ClassificationReport rep;
  rep.warnings = tower.warnings;
  if (tower.stop_reason) rep.warnings.push_back(*tower.stop_reason);

  for (const TowerLevel& level : tower.levels) {
    const IndexRange r = level.curve.valid;
    if (interior(r).size() < kMinInterior) {
      rep.warnings.push_back("level " + std::to_string(level.k) + " too short to analyse");
      continue;
    }
    rep.levels.push_back(analyse_slant(level.curve, r, level.k, tols));
    const LevelSlant& ls = rep.levels.back();
    if (!ls.qualifies || rep.nk_level) continue;
    rep.nk_level = level.k;
    rep.theta = ls.theta;
    rep.axis = ls.axis;
    rep.valid_interval = {{level.curve.s(r.begin), level.curve.s(r.end - 1)}};
    rep.tests.push_back(ls.sigma_test);
    rep.tests.insert(rep.tests.end(), ls.checks.begin(), ls.checks.end());
    if (ls.implied_by_helix) rep.warnings.push_back(implied_note(ls));
    for (const auto& f : failed(ls.checks)) rep.warnings.push_back("slant check failed: " + f);
  }
  if (!rep.nk_level) {
    throw Error(ErrorCode::NotNkSlant,
                "no level up to k=" + std::to_string(tower.levels.back().k) +
                    " has constant geodesic curvature");
  }
  rep.labels.insert(Label::SlantHelix);
  return rep;
}

ClassificationReport detect_nk_constant_precession(const DirectionTower& tower,
                                                   const Tolerances& tols) {
  trace::note(trace::Op::DetectNkConstantPrecession);
  ClassificationReport rep = detect_nk_slant(tower, tols);
  const int k = *rep.nk_level;
  const FramedCurve& c = tower.levels[static_cast<std::size_t>(k)].curve;
  const PrecessionFit fit = fit_precession(c, c.valid, k, tols);
  if (!fit.omega.verdict) {
    throw Error(ErrorCode::NkSlantOnly, "N_" + std::to_string(k) +
                                            "-slant helix but |W| is not constant (spread " +
                                            fmt(fit.omega.spread) + ")");
  }
  if (!fit.ok()) {
    std::vector<ConstancyTest> all = fit.checks;
    if (fit.mu) all.push_back(*fit.mu);
    std::string why;
    for (const auto& f : failed(all)) why += (why.empty() ? "" : ", ") + f;
    if (!fit.mu) why = "too few samples with usable curvature for the precession rate";
    throw Error(ErrorCode::NkSlantOnly,
                "N_" + std::to_string(k) + "-slant helix with constant |W| but no fixed precession axis: " + why);
  }
  rep.labels.insert(Label::ConstantPrecession);
  apply_precession(rep, fit);
  return rep;
}

CurvatureProfile generate_precession_profile(double omega, double mu, double phase, double s_min,
                                             double s_max) {
  trace::note(trace::Op::GeneratePrecessionProfile);
  if (!std::isfinite(omega) || !std::isfinite(mu) || !std::isfinite(phase)) {
    throw Error(ErrorCode::NonFinite, "non-finite precession parameters");
  }
  if (!(omega > 0.0)) throw Error(ErrorCode::InvalidArgument, "omega must be positive");
  if (mu == 0.0) throw Error(ErrorCode::InvalidArgument, "mu must be nonzero");
  using K = Expression::Kind;
  using F = Expression::Function;
  const Expression arg = Expression::binary(
      K::Add, Expression::binary(K::Multiply, Expression::number(mu), Expression::variable()),
      Expression::number(phase));
  const Expression kappa = Expression::binary(K::Multiply, Expression::number(omega),
                                              Expression::call(F::Sin, arg));
  const Expression tau = Expression::binary(K::Multiply, Expression::number(omega),
                                            Expression::call(F::Cos, arg));
  return CurvatureProfile::analytic(kappa, tau, s_min, s_max);
}

bool same_slant_axis(const Vec3& u1, double theta1, const Vec3& u2, double theta2,
                     double angle_tol) {
  const bool direct = angle_between(u1, u2) <= angle_tol &&
                      std::fabs(wrap_angle(theta1 - theta2)) <= angle_tol;
  const bool flipped = angle_between(u1, -u2) <= angle_tol &&
                       std::fabs(wrap_angle(theta1 - theta2 - std::numbers::pi)) <= angle_tol;
  return direct || flipped;
}

}  // namespace frenet
