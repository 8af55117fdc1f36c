#include "frenet/example1.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "frenet/cli.hpp"
#include "frenet/integrator.hpp"
#include "frenet/rigid.hpp"

namespace frenet::example1 {
namespace {

const double kR2 = std::numbers::sqrt2;
const double kP = kR2 + 1.0;  // sqrt2 + 1
const double kM = kR2 - 1.0;  // sqrt2 - 1
const double kNone = std::numeric_limits<double>::quiet_NaN();

std::string str(double v) {
  std::ostringstream os;
  os.precision(8);
  os << v;
  return os.str();
}

double line_error(const Vec3& a, const Vec3& b) { return line_angle(a, b); }

class Table {
 public:
  void add(std::string name, std::string expected, double observed, double error, double tol) {
    rows_.push_back({std::move(name), std::move(expected), observed, error, tol, error <= tol});
  }
  void flag(std::string name, std::string expected, double observed, bool pass) {
    rows_.push_back({std::move(name), std::move(expected), observed, pass ? 0.0 : 1.0, 0.0, pass});
  }
  std::vector<Row> take() { return std::move(rows_); }

 private:
  std::vector<Row> rows_;
};

/// max over the interior of |f(i) - g(s_i)|
template <class F>
double sup_error(const FramedCurve& c, F&& err) {
  const IndexRange inner = interior(c.valid);
  double worst = 0.0;
  for (std::size_t i = inner.begin; i < inner.end; ++i) worst = std::max(worst, err(i, c.s(i)));
  return worst;
}

/// Least-squares slope of log|taylor - integrated| against log d.
double taylor_slope(const CurvatureProfile& profile, const FrenetFrame& frame, double s0) {
  constexpr double kFine = 1e-5;
  const FramedCurve c = integrate_frenet(profile, {}, frame, s0, s0 + 0.1, kFine);
  const CurvatureSample k0 = profile.evaluate(s0);
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int n = 0;
  for (double d = 1e-3; d <= 0.1 + 1e-12; d *= std::pow(10.0, 0.25)) {
    const auto i = static_cast<std::size_t>(std::llround(d / c.grid.step));
    const double di = c.s(i) - s0;
    const Vec3 t = taylor_local({}, c.frames[0], k0.kappa, k0.dkappa, k0.tau, di);
    const double e = norm(t - c.points[i]);
    sx += std::log(di);
    sy += std::log(e);
    sxx += std::log(di) * std::log(di);
    sxy += std::log(di) * std::log(e);
    ++n;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace

double end() { return std::numbers::pi - kStart; }

Vec3 gamma1(double s) {
  return {kP * kP / (2 * kR2) * std::sin(kM * s) - kM * kM / (2 * kR2) * std::sin(kP * s),
          -kP * kP / (2 * kR2) * std::cos(kM * s) + kM * kM / (2 * kR2) * std::cos(kP * s),
          std::sin(s) / kR2};
}

Vec3 tangent1(double s) {
  return {kP / (2 * kR2) * std::cos(kM * s) - kM / (2 * kR2) * std::cos(kP * s),
          kP / (2 * kR2) * std::sin(kM * s) - kM / (2 * kR2) * std::sin(kP * s),
          std::cos(s) / kR2};
}

Vec3 normal1_printed(double s) {
  return {std::cos(kR2 * s) / kR2, std::sin(kR2 * s) / kR2, 1.0 / kR2};
}

Vec3 normal1(double s) {
  // d/ds tangent1 = sin(s) * (cos(sqrt2 s), sin(sqrt2 s), -1) / sqrt2
  return {std::cos(kR2 * s) / kR2, std::sin(kR2 * s) / kR2, -1.0 / kR2};
}

Vec3 binormal1(double s) {
  return {-std::sin(kR2 * s) * std::cos(s) + std::cos(kR2 * s) * std::sin(s) / kR2,
          std::cos(kR2 * s) * std::cos(s) + std::sin(kR2 * s) * std::sin(s) / kR2,
          std::sin(s) / kR2};
}

Vec3 darboux1(double s) { return {std::cos(kR2 * s) / kR2, std::sin(kR2 * s) / kR2, 1.0 / kR2}; }

Vec3 gamma2_printed(double s) {
  return {0.5 * std::sin(kR2 * s), 0.5 * std::cos(kR2 * s), s / kR2};
}

FrenetFrame main_frame(double s) {
  const Vec3 t1 = tangent1(s);
  const Vec3 n1 = normal1(s);
  const Vec3 b1 = cross(t1, n1);
  const double kappa = std::sin(s) * std::cos(std::sin(s));
  const double tau = std::sin(s) * std::sin(std::sin(s));
  const double omega = std::hypot(kappa, tau);
  return orthonormalize({(tau * b1 - kappa * n1) / omega, t1, (kappa * b1 + tau * n1) / omega});
}

bool Result::passed() const {
  return !rows.empty() && std::all_of(rows.begin(), rows.end(), [](const Row& r) { return r.pass; });
}

Result run(const Options& opt) {
  Result out;
  Table table;
  const double s0 = kStart, s1 = end();
  const CurvatureProfile profile = parse_profile(kKappa, kTau, s0, s1);
  const FramedCurve main = integrate_frenet(profile, {}, main_frame(s0), s0, s1, opt.h,
                                            opt.tols.kappa_floor);
  TowerOptions topt;
  topt.kappa_floor = opt.tols.kappa_floor;
  out.tower = build_tower(main, std::max(opt.depth, 2), topt);
  out.warnings = out.tower.warnings;
  if (out.tower.levels.size() < 3) {
    table.flag("tower depth 2", "levels 0..2", static_cast<double>(out.tower.levels.size()) - 1, false);
    out.rows = table.take();
    return out;
  }
  const TowerLevel& l1 = out.tower.levels[1];
  const TowerLevel& l2 = out.tower.levels[2];
  const FramedCurve& c1 = l1.curve;
  const FramedCurve& c2 = l2.curve;

  table.add("kappa_1", "sin s", kNone,
            sup_error(c1, [&](std::size_t i, double s) { return std::fabs(c1.kappa[i] - std::sin(s)); }), 1e-5);
  table.add("tau_1", "cos s", kNone,
            sup_error(c1, [&](std::size_t i, double s) { return std::fabs(c1.tau[i] - std::cos(s)); }), 1e-4);
  const ConstancyTest sigma1 = constancy(c1.sigma, opt.tols.rel_tol, opt.tols.abs_floor, "sigma_1");
  table.add("sigma_1 mean", "-1", sigma1.mean, std::fabs(sigma1.mean + 1.0), 1e-4);
  table.add("sigma_1 spread", "0", sigma1.spread, sigma1.spread, 1e-4);
  table.add("kappa_2", "1", kNone,
            sup_error(c2, [&](std::size_t i, double) { return std::fabs(c2.kappa[i] - 1.0); }), 1e-4);
  table.add("tau_2", "-1", kNone,
            sup_error(c2, [&](std::size_t i, double) { return std::fabs(c2.tau[i] + 1.0); }), 1e-4);

  out.report = detect_nk_constant_precession(out.tower, opt.tols);
  const ClassificationReport& rep = out.report;
  out.warnings.insert(out.warnings.end(), rep.warnings.begin(), rep.warnings.end());
  table.add("nk_level", "1", *rep.nk_level, std::fabs(*rep.nk_level - 1.0), 0.0);

  const Vec3 axis{0, 0, -1};
  const double theta = -std::numbers::pi / 4;
  const bool direct = angle_between(*rep.axis, axis) < angle_between(*rep.axis, -axis);
  const double axis_err = direct ? angle_between(*rep.axis, axis) : angle_between(*rep.axis, -axis);
  const double theta_err =
      std::fabs(std::remainder(*rep.theta - theta - (direct ? 0.0 : std::numbers::pi), 2 * std::numbers::pi));
  table.add("axis u", "(0,0,-1) or (0,0,1) with theta+pi", kNone, axis_err, 1e-3);
  table.add("theta", "-pi/4", *rep.theta, theta_err, 1e-3);
  for (const auto& t : rep.tests) {
    if (t.name == "level1.normal_dot_axis") table.add("<N_1,u> spread", "0", t.mean, t.spread, 1e-4);
  }
  table.add("omega", "1", *rep.omega, std::fabs(*rep.omega - 1.0), 1e-5);
  table.add("mu", "-1", *rep.mu, std::fabs(*rep.mu + 1.0), 1e-3);
  table.add("precession axis line", "(0,0,sqrt2) on the axis line", norm(*rep.precession_axis),
            line_error(*rep.precession_axis, *rep.axis), 1e-3);
  table.add("|precession axis|", "sqrt2", norm(*rep.precession_axis),
            std::fabs(norm(*rep.precession_axis) - kR2), 1e-3);

  bool level2 = false;
  for (const LevelSlant& ls : rep.levels) level2 = level2 || (ls.k == 2 && ls.qualifies);
  table.flag("level 2 slant", "qualifies", level2 ? 1.0 : 0.0, level2);
  const ClassificationReport basic2 = classify_basic(c2, opt.tols);
  const bool helix2 = basic2.has(Label::Helix) && basic2.axis;
  table.flag("level 2 HELIX", "label present", helix2 ? 1.0 : 0.0, helix2);
  if (helix2) {
    table.add("level 2 axis", "line (0,0,1)", kNone, line_error(*basic2.axis, {0, 0, 1}), 1e-3);
  }

  table.add("gamma_1 points", "a(s) - a(0.2)", kNone,
            sup_error(c1, [&](std::size_t i, double s) { return max_abs(c1.points[i] - (gamma1(s) - gamma1(s0))); }),
            1e-6);
  table.add("T_1", "printed t", kNone,
            sup_error(c1, [&](std::size_t i, double s) { return max_abs(c1.frames[i].T - tangent1(s)); }), 1e-6);
  table.add("B_1", "printed b", kNone,
            sup_error(c1, [&](std::size_t i, double s) { return max_abs(c1.frames[i].B - binormal1(s)); }), 1e-6);
  table.add("W_1", "printed W_1", kNone,
            sup_error(c1, [&](std::size_t i, double s) { return max_abs(l1.darboux[i] - darboux1(s)); }), 1e-6);

  // The printed n_3 = +1/sqrt2; differentiating the printed tangent gives -1/sqrt2.
  double n3 = 0.0;
  const IndexRange in1 = interior(c1.valid);
  for (std::size_t i = in1.begin; i < in1.end; ++i) n3 += c1.frames[i].N.z;
  n3 /= static_cast<double>(in1.size());
  table.add("N_1 third component", "-1/sqrt2", n3, std::fabs(n3 + 1.0 / kR2), 1e-6);
  const double printed_gap =
      sup_error(c1, [&](std::size_t i, double s) { return max_abs(c1.frames[i].N - normal1_printed(s)); });
  if (printed_gap > 1e-3) {
    out.warnings.push_back("printed N_1 has third component +1/sqrt(2); the computed N_1 = T_1'/kappa_1 has " +
                           str(n3) + " (max deviation from the printed N_1: " + str(printed_gap) +
                           "). The printed B_1, W_1 and axis (0,0,-1) are consistent with -1/sqrt(2) only.");
  }

  std::vector<Vec3> g2, g2_ref;
  for (std::size_t i = c2.valid.begin; i < c2.valid.end; ++i) {
    g2.push_back(c2.points[i]);
    g2_ref.push_back(gamma2_printed(c2.s(i)));
  }
  const Alignment al = align_rigid(g2, g2_ref);
  table.add("gamma_2 (rigid)", "printed gamma_2", al.rms, al.max_deviation, 1e-6);

  const MaskedSeries ratio = tangent_indicatrix_ratio(l1, opt.tols.kappa_floor);
  double ratio_err = 0.0;
  for (std::size_t i = in1.begin; i < in1.end; ++i) {
    if (ratio.valid[i]) ratio_err = std::max(ratio_err, std::fabs(ratio.values[i] + 1.0));
  }
  table.add("indicatrix tau/kappa", "-1", -1.0, ratio_err, 1e-4);

  const CurvatureProfile gen = generate_precession_profile(1.0, 1.0, 0.0, s0, s1);
  double gen_err = 0.0;
  for (std::size_t i = 0; i < c1.size(); ++i) {
    const CurvatureSample g = gen.evaluate(c1.s(i));
    gen_err = std::max({gen_err, std::fabs(g.kappa - std::sin(c1.s(i))), std::fabs(g.tau - std::cos(c1.s(i)))});
  }
  table.add("generator(1,1,0)", "sin s, cos s", kNone, gen_err, 1e-12);
  const ClassificationReport gen_rep =
      classify_basic(integrate_frenet(gen, {}, FrenetFrame{}, s0, s1, opt.h, opt.tols.kappa_floor), opt.tols);
  const bool gen_ok = gen_rep.has(Label::SlantHelix) && gen_rep.has(Label::ConstantPrecession);
  table.flag("generated curve", "SLANT_HELIX + CONSTANT_PRECESSION", gen_ok ? 1.0 : 0.0, gen_ok);

  const FramedCurve est = estimate_frame_curvatures(main.points, false, opt.tols.kappa_floor);
  double kmax = 0.0;
  for (double k : main.kappa) kmax = std::max(kmax, std::fabs(k));
  table.add("estimate(kappa)", "profile kappa", kNone,
            sup_error(est, [&](std::size_t i, double) { return std::fabs(est.kappa[i] - main.kappa[i]) / kmax; }),
            1e-4);

  const double slope = taylor_slope(profile, main_frame(std::numbers::pi / 2), std::numbers::pi / 2);
  table.add("Taylor slope", ">= 3.7", slope, std::max(0.0, 3.7 - slope), 0.0);

  out.rows = table.take();
  return out;
}

}  // namespace frenet::example1
