// One PASS/FAIL line per acceptance criterion. Exit status is the number of
// failed criteria.

#include <json.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "frenet/classifier.hpp"
#include "frenet/cli.hpp"
#include "frenet/curve_io.hpp"
#include "frenet/error.hpp"
#include "frenet/example1.hpp"
#include "frenet/finite_difference.hpp"
#include "frenet/integrator.hpp"
#include "frenet/rigid.hpp"
#include "frenet/tower.hpp"

using namespace frenet;
using nlohmann::json;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kS0 = 0.2;
const double kS1 = kPi - 0.2;
constexpr double kTimeLimit = 5.0;  // seconds per pipeline

struct Verdict {
  bool pass = true;
  std::string detail;

  // Records "name=value (<tol)" and folds the comparison into pass.
  void below(const std::string& name, double value, double tol) {
    const bool ok = std::isfinite(value) && value < tol;
    pass = pass && ok;
    char buf[160];
    std::snprintf(buf, sizeof buf, "%s%s=%.3g%s%.0e", detail.empty() ? "" : ", ", name.c_str(), value,
                  ok ? "<" : "!<", tol);
    detail += buf;
  }
  void within(const std::string& name, double value, double lo, double hi) {
    const bool ok = value >= lo && value <= hi;
    pass = pass && ok;
    char buf[160];
    std::snprintf(buf, sizeof buf, "%s%s=%.4g in [%g, %g]%s", detail.empty() ? "" : ", ", name.c_str(), value, lo,
                  hi, ok ? "" : " NO");
    detail += buf;
  }
  void require(const std::string& what, bool ok) {
    pass = pass && ok;
    detail += (detail.empty() ? "" : ", ") + what + (ok ? "" : " NO");
  }
};

CurvatureProfile profile(const std::string& k, const std::string& t, double a, double b) {
  return CurvatureProfile::analytic(Expression::parse(k), Expression::parse(t), a, b);
}

const FramedCurve& main_curve() {
  static const FramedCurve c = integrate_frenet(profile(example1::kKappa, example1::kTau, kS0, kS1), {},
                                                example1::main_frame(kS0), kS0, kS1, 1e-3);
  return c;
}

const DirectionTower& main_tower() {
  static const DirectionTower t = build_tower(main_curve(), 2);
  return t;
}

template <class F>
double sup_interior(const FramedCurve& c, F f) {
  const IndexRange in = interior(c.valid);
  double worst = 0.0;
  for (std::size_t i = in.begin; i < in.end; ++i) worst = std::max(worst, f(i));
  return worst;
}

double angle_to_line(const Vec3& a, const Vec3& b) {
  const double c = std::fabs(dot(a, b)) / (norm(a) * norm(b));
  return std::acos(std::min(1.0, c));
}

Verdict criterion1() {
  const FramedCurve& c = main_tower().levels.at(1).curve;
  Verdict v;
  v.below("max|k1-sin s|", sup_interior(c, [&](std::size_t i) { return std::fabs(c.kappa[i] - std::sin(c.s(i))); }),
          1e-5);
  v.below("max|t1-cos s|", sup_interior(c, [&](std::size_t i) { return std::fabs(c.tau[i] - std::cos(c.s(i))); }),
          1e-4);
  return v;
}

Verdict criterion2() {
  const FramedCurve& c = main_tower().levels.at(1).curve;
  const IndexRange in = interior(c.valid);
  double lo = INFINITY, hi = -INFINITY, sum = 0;
  for (std::size_t i = in.begin; i < in.end; ++i) {
    lo = std::min(lo, c.sigma[i]);
    hi = std::max(hi, c.sigma[i]);
    sum += c.sigma[i];
  }
  Verdict v;
  v.below("|mean(sigma1)+1|", std::fabs(sum / in.size() + 1.0), 1e-4);
  v.below("spread(sigma1)", hi - lo, 1e-4);
  return v;
}

Verdict criterion3() {
  const FramedCurve& c = main_tower().levels.at(2).curve;
  Verdict v;
  v.below("max|k2-1|", sup_interior(c, [&](std::size_t i) { return std::fabs(c.kappa[i] - 1.0); }), 1e-4);
  v.below("max|t2+1|", sup_interior(c, [&](std::size_t i) { return std::fabs(c.tau[i] + 1.0); }), 1e-4);
  return v;
}

Verdict criterion4() {
  Verdict v;
  const ClassificationReport r = detect_nk_slant(main_tower());
  v.require("k=1", r.nk_level == 1);
  if (!r.axis || !r.theta) {
    v.require("axis reported", false);
    return v;
  }
  const Vec3 u = *r.axis;
  const double theta = *r.theta;
  // Error of the better of the two representatives (u, theta) and (-u, theta + pi).
  const Vec3 ref{0, 0, -1};
  const double direct = std::max(std::acos(std::clamp(dot(u, ref), -1.0, 1.0)),
                                 std::fabs(std::remainder(theta + kPi / 4, 2 * kPi)));
  const double flipped = std::max(std::acos(std::clamp(dot(-u, ref), -1.0, 1.0)),
                                  std::fabs(std::remainder(theta + kPi + kPi / 4, 2 * kPi)));
  v.below("angular error", std::min(direct, flipped), 1e-3);
  v.require("same_slant_axis", same_slant_axis(u, theta, ref, -kPi / 4, 1e-3));
  const FramedCurve& c1 = main_tower().levels.at(1).curve;
  const IndexRange in = interior(c1.valid);
  double lo = INFINITY, hi = -INFINITY;
  for (std::size_t i = in.begin; i < in.end; ++i) {
    const double d = dot(c1.frames[i].N, u);
    lo = std::min(lo, d);
    hi = std::max(hi, d);
  }
  v.below("spread<N1,u>", hi - lo, 1e-4);
  return v;
}

Verdict criterion5() {
  Verdict v;
  const ClassificationReport r = detect_nk_constant_precession(main_tower());
  v.require("k=1", r.nk_level == 1);
  v.below("|omega-1|", std::fabs(r.omega.value_or(NAN) - 1.0), 1e-5);

  // Pointwise tau1'/kappa1, differentiated here rather than taken from the report.
  const TowerLevel& l1 = main_tower().levels.at(1);
  const FramedCurve& c = l1.curve;
  const auto dtau = fd::derivative(c.tau, c.grid.step, 1, c.valid);
  const IndexRange in = interior(c.valid);
  double mu_err = 0.0;
  Vec3 first{};
  double axis_spread = 0.0;
  for (std::size_t i = in.begin; i < in.end; ++i) {
    const double mu = dtau[i] / c.kappa[i];
    mu_err = std::max(mu_err, std::fabs(mu + 1.0));
    const Vec3 ubar = l1.darboux[i] + mu * c.frames[i].N;
    if (i == in.begin) first = ubar;
    axis_spread = std::max(axis_spread, norm(ubar - first));
  }
  v.below("max|mu+1|", mu_err, 1e-3);
  v.below("spread(W1+mu N1)", axis_spread, 1e-3);
  v.below("angle to (0,0,-1) line", angle_to_line(first, {0, 0, -1}), 1e-3);
  return v;
}

Verdict criterion6() {
  Verdict v;
  const ClassificationReport r = classify_basic(main_tower().levels.at(2).curve);
  v.require("HELIX", r.has(Label::Helix));
  v.below("angle to (0,0,1) line", r.axis ? angle_to_line(*r.axis, {0, 0, 1}) : INFINITY, 1e-3);
  return v;
}

Verdict criterion7() {
  Verdict v;
  const double two_pi = 2 * kPi;
  const FramedCurve circle = integrate_frenet(profile("1", "0", 0, two_pi), {}, FrenetFrame{}, 0, two_pi, 1e-3);
  v.below("circle gap", norm(circle.points.back() - circle.points.front()), 1e-8);

  // Endpoint error against an h = 1e-5 reference on the worked example.
  const CurvatureProfile p = profile(example1::kKappa, example1::kTau, kS0, kS1);
  const double a = kS0, b = 2.2;
  const Vec3 ref = integrate_frenet(p, {}, FrenetFrame{}, a, b, 1e-5).points.back();
  auto err = [&](double h) { return norm(integrate_frenet(p, {}, FrenetFrame{}, a, b, h).points.back() - ref); };
  v.within("error ratio h=0.1/0.05", err(0.1) / err(0.05), 14.0, 18.0);
  return v;
}

Verdict criterion8() {
  const double s0 = kPi / 2;
  const CurvatureProfile p = profile(example1::kKappa, example1::kTau, kS0, kS1);
  const FramedCurve c = integrate_frenet(p, {}, FrenetFrame{}, s0, s0 + 0.1, 1e-5);
  const CurvatureSample k = p.evaluate(s0);
  std::vector<double> x, y;
  for (double d = 1e-3; d <= 0.1 * (1 + 1e-12); d *= std::pow(10.0, 0.25)) {
    const std::size_t i = static_cast<std::size_t>(std::lround(d / c.grid.step));
    x.push_back(std::log(c.s(i) - s0));
    y.push_back(std::log(norm(taylor_local({}, FrenetFrame{}, k.kappa, k.dkappa, k.tau, c.s(i) - s0) - c.points[i])));
  }
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) mx += x[i] / x.size(), my += y[i] / y.size();
  double num = 0, den = 0;
  for (std::size_t i = 0; i < x.size(); ++i) num += (x[i] - mx) * (y[i] - my), den += (x[i] - mx) * (x[i] - mx);
  Verdict v;
  v.within("log-log slope", num / den, 3.7, INFINITY);
  return v;
}

Verdict criterion9() {
  Verdict v;
  double worst = 0.0;
  for (const TowerLevel& l : main_tower().levels) worst = std::max(worst, darboux_residual(l).max());
  v.below("max Darboux residual", worst, 1e-4);
  v.below("Gram drift", max_frame_drift(main_curve()), 1e-9);
  const FramedCurve longer =
      integrate_frenet(profile("1 + 0.5*sin(s)", "cos(2*s)", 0, 10), {}, FrenetFrame{}, 0, 10, 1e-3);
  v.below("Gram drift (s in [0,10])", max_frame_drift(longer), 1e-9);
  return v;
}

Verdict criterion10() {
  Verdict v;
  double worst = 0.0;
  for (auto [k, t] : {std::pair{example1::kKappa, example1::kTau}, std::pair{"1 + 0.3*sin(s)", "0.5*cos(s)"},
                      std::pair{"2", "-0.7 + 0.1*s"}}) {
    const FramedCurve c = integrate_frenet(profile(k, t, kS0, kS1), {}, FrenetFrame{}, kS0, kS1, 1e-3);
    const FramedCurve e = estimate_frame_curvatures(c.points);
    const IndexRange in = interior(c.valid);
    double kmax = 0, tmax = 0, kerr = 0, terr = 0;
    for (std::size_t i = in.begin; i < in.end; ++i) {
      kmax = std::max(kmax, std::fabs(c.kappa[i]));
      tmax = std::max(tmax, std::fabs(c.tau[i]));
      kerr = std::max(kerr, std::fabs(e.kappa[i] - c.kappa[i]));
      terr = std::max(terr, std::fabs(e.tau[i] - c.tau[i]));
    }
    worst = std::max({worst, kerr / kmax, terr / tmax});
  }
  v.below("estimate rel. error", worst, 1e-4);

  double gen = 0.0;
  for (auto [w, mu, phi] : {std::tuple{3.0, 2.0, 0.0}, std::tuple{2.0, 3.0, kPi / 4}, std::tuple{0.7, 1.3, 0.1}}) {
    const double a = (0.2 - phi) / mu, b = (kPi - 0.2 - phi) / mu;
    const CurvatureProfile p = generate_precession_profile(w, mu, phi, a, b);
    const DirectionTower t = build_tower(integrate_frenet(p, {}, FrenetFrame{}, a, b, 1e-3), 1);
    const ClassificationReport r = detect_nk_constant_precession(t);
    gen = std::max({gen, std::fabs(r.omega.value_or(NAN) - w), std::fabs(r.frequency.value_or(NAN) - mu)});
  }
  v.below("generator (omega, frequency) error", gen, 1e-4);
  return v;
}

json run_json(const RunConfig& cfg) {
  std::ostringstream out, err;
  run(cfg, out, err);
  return json::parse(out.str());
}

bool is_residual(const std::string& name) {
  for (const char* tag : {"_spread", "_cross_check", "_components", "_zero", "_residual"}) {
    const std::string t(tag);
    if (name.size() >= t.size() && name.compare(name.size() - t.size(), t.size(), t) == 0) return true;
  }
  return false;
}

// Largest difference between two reports, rotating the first one's axes.
double report_difference(const json& a, const json& b, const RigidMotion& m, bool& labels_equal,
                         std::string& where) {
  double worst = 0.0;
  auto track = [&](double d, const std::string& key) {
    if (d > worst) worst = d, where = key;
  };
  labels_equal = a.value("labels", json()) == b.value("labels", json()) && a.contains("error") == b.contains("error");
  if (a.contains("error") || b.contains("error")) return labels_equal ? 0.0 : INFINITY;
  labels_equal = labels_equal && a["nk_level"] == b["nk_level"];
  for (const char* key : {"theta", "omega", "mu", "frequency", "phase", "radius", "ratio"}) {
    if (a[key].is_null() != b[key].is_null()) return INFINITY;
    if (!a[key].is_null()) track(std::fabs(a[key].get<double>() - b[key].get<double>()), key);
  }
  for (const char* key : {"axis", "precession_axis"}) {
    if (a[key].is_null() != b[key].is_null()) return INFINITY;
    if (a[key].is_null()) continue;
    const Vec3 p = m.rotation({a[key][0], a[key][1], a[key][2]});
    track(max_abs(p - Vec3{b[key][0], b[key][1], b[key][2]}), key);
  }
  for (std::size_t i = 0; i < a["tests"].size(); ++i) {
    if (a["tests"][i]["verdict"] != b["tests"][i]["verdict"]) labels_equal = false;
    // Residual diagnostics (spreads, cross-checks, zero tests) measure rounding
    // noise; only their verdicts are compared.
    if (is_residual(a["tests"][i]["name"].get<std::string>())) continue;
    track(std::fabs(a["tests"][i]["mean"].get<double>() - b["tests"][i]["mean"].get<double>()),
          a["tests"][i]["name"].get<std::string>());
  }
  return worst;
}

Verdict criterion11() {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / ("frenet_acceptance_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  std::mt19937_64 g(20251);
  std::normal_distribution<double> n;
  std::uniform_real_distribution<double> angle(-kPi, kPi), shift(-10, 10);

  Verdict v;
  double worst = 0.0;
  std::string where;
  bool labels = true;
  struct Curve {
    const char* k;
    const char* t;
    double a, b;
  };
  const Curve curves[] = {{example1::kKappa, example1::kTau, kS0, kS1},
                          {"sin(s)", "cos(s)", kS0, kS1},
                          {"2", "1", 0, 4},
                          {"1.5", "0", 0, 4},
                          {"1 + 0.4*cos(s)", "2 + 0.8*cos(s)", 0, 4},
                          {"0", "0", 0, 2}};
  for (const Curve& cv : curves) {
    const FramedCurve c = integrate_frenet(profile(cv.k, cv.t, cv.a, cv.b), {}, FrenetFrame{}, cv.a, cv.b, 1e-2);
    for (int trial = 0; trial < 3; ++trial) {
      const RigidMotion m{Rotation::about({n(g), n(g), n(g)}, angle(g)), {shift(g), shift(g), shift(g)}};
      std::vector<Vec3> moved;
      for (const Vec3& p : c.points) moved.push_back(m(p));
      const std::string f0 = (dir / "a.csv").string(), f1 = (dir / "b.csv").string();
      {
        std::ofstream o0(f0), o1(f1);
        write_points_csv(o0, c.grid, c.points);
        write_points_csv(o1, c.grid, moved);
      }
      RunConfig cfg;
      cfg.command = Command::Classify;
      cfg.in = f0;
      const json a = run_json(cfg);
      cfg.in = f1;
      const json b = run_json(cfg);
      cfg.command = Command::Analyze;
      cfg.format = Format::Json;
      cfg.in = f0;
      const json aa = run_json(cfg);
      cfg.in = f1;
      const json ab = run_json(cfg);
      bool eq1 = true, eq2 = true;
      std::string w1, w2;
      const double d1 = report_difference(a, b, m, eq1, w1), d2 = report_difference(aa, ab, m, eq2, w2);
      if (std::max(d1, d2) > worst) worst = std::max(d1, d2), where = std::string(cv.k) + ": " + (d1 > d2 ? w1 : w2);
      labels = labels && eq1 && eq2;
    }
  }
  fs::remove_all(dir);
  v.require("labels unchanged", labels);
  v.below("max scalar change", worst, 1e-6);
  if (!where.empty()) v.detail += " (" + where + ")";
  return v;
}

Verdict criterion12() {
  Verdict v;
  const example1::Result r = example1::run();
  const FramedCurve& c1 = r.tower.levels.at(1).curve;
  const double n3 =
      sup_interior(c1, [&](std::size_t i) { return std::fabs(c1.frames[i].N.z + 1 / std::sqrt(2.0)); });
  v.below("max|N1_z + 1/sqrt2|", n3, 1e-8);
  bool warned = false;
  for (const auto& w : r.warnings) warned = warned || w.find("printed N_1") != std::string::npos;
  v.require("warning present", warned);
  // The axis test passes with this sign.
  v.require("axis (0,0,-1) with theta -pi/4",
            r.report.axis && r.report.theta &&
                same_slant_axis(*r.report.axis, *r.report.theta, {0, 0, -1}, -kPi / 4, 1e-3));
  return v;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Verdict()>>> criteria = {
      {"level-1 curvatures", criterion1},       {"level-1 geodesic curvature", criterion2},
      {"level-2 curvatures", criterion3},       {"N_1 slant axis", criterion4},
      {"N_1 constant precession", criterion5},  {"level-2 helix axis", criterion6},
      {"reconstruction fidelity", criterion7},  {"taylor consistency", criterion8},
      {"darboux identities", criterion9},       {"round trips", criterion10},
      {"rigid-motion invariance", criterion11}, {"printed N_1 sign", criterion12},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = criteria[i].second();
    } catch (const std::exception& e) {
      v.require(std::string("threw: ") + e.what(), false);
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    v.below("time[s]", secs, kTimeLimit);
    failed += v.pass ? 0 : 1;
    std::printf("%s criterion %2zu %-28s %s\n", v.pass ? "PASS" : "FAIL", i + 1, criteria[i].first,
                v.detail.c_str());
  }
  std::printf("%d of %zu criteria failed\n", failed, criteria.size());
  return failed;
}
