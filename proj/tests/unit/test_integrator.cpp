#include <doctest.h>

#include <cmath>
#include <numbers>

#include "frenet/error.hpp"
#include "frenet/integrator.hpp"
#include "support.hpp"

using namespace frenet;

namespace {

CurvatureProfile profile(const char* k, const char* t, double a, double b) {
  return CurvatureProfile::analytic(Expression::parse(k), Expression::parse(t), a, b);
}

const char* kMainKappa = "sin(s)*cos(sin(s))";
const char* kMainTau = "sin(s)*sin(sin(s))";

double endpoint_error(const CurvatureProfile& p, double s0, double s1, double h, const Vec3& ref) {
  const FramedCurve c = integrate_frenet(p, {}, FrenetFrame{}, s0, s1, h);
  return norm(c.points.back() - ref);
}

}  // namespace

TEST_CASE("unit circle closes after one period") {
  const double two_pi = 2 * std::numbers::pi;
  const FramedCurve c = integrate_frenet(profile("1", "0", 0, two_pi), {}, FrenetFrame{}, 0, two_pi, 1e-3);
  CHECK(c.grid.count == static_cast<std::size_t>(std::ceil(two_pi / 1e-3)) + 1);
  CHECK(c.grid.last() == doctest::Approx(two_pi).epsilon(1e-15));
  double worst = 0.0;
  for (const Vec3& p : c.points) worst = std::max(worst, std::fabs(norm(p - Vec3{0, 1, 0}) - 1.0));
  CHECK(worst < 1e-8);
  CHECK(norm(c.points.back() - c.points.front()) < 1e-8);
  CHECK(invariant_violations(c).empty());
  CHECK(max_frame_drift(c) < 1e-9);
}

TEST_CASE("constant-precession curve matches its closed form") {
  const double s0 = 0.2, s1 = std::numbers::pi - 0.2;
  const FramedCurve c = integrate_frenet(profile("sin(s)", "cos(s)", s0, s1), testing::gamma1(s0),
                                         testing::level1_frame(s0), s0, s1, 1e-3);
  double worst = 0.0;
  for (std::size_t i = 0; i < c.size(); ++i) worst = std::max(worst, max_abs(c.points[i] - testing::gamma1(c.s(i))));
  CHECK(worst < 1e-6);
}

TEST_CASE("zero curvature gives a straight line along T0") {
  auto g = testing::rng(31);
  const FrenetFrame f = testing::random_frame(g);
  const FramedCurve c = integrate_frenet(profile("0", "0", 0, 3), {1, 2, 3}, f, 0, 3, 1e-3);
  double worst = 0.0;
  for (std::size_t i = 0; i < c.size(); ++i) {
    worst = std::max(worst, max_abs(c.points[i] - (Vec3{1, 2, 3} + c.s(i) * f.T)));
    CHECK(c.degenerate[i] == 1);
    CHECK(c.sigma[i] == 0.0);
  }
  CHECK(worst < 1e-10);
}

TEST_CASE("fourth-order convergence") {
  const CurvatureProfile p = profile(kMainKappa, kMainTau, 0.2, std::numbers::pi - 0.2);
  const double s0 = 0.2, s1 = 2.2;
  const Vec3 ref = integrate_frenet(p, {}, FrenetFrame{}, s0, s1, 1e-5).points.back();
  for (double h : {0.1, 0.05, 0.04}) {
    const double ratio = endpoint_error(p, s0, s1, h, ref) / endpoint_error(p, s0, s1, h / 2, ref);
    CAPTURE(h);
    CHECK(ratio >= 14.0);
    CHECK(ratio <= 18.0);
  }
}

TEST_CASE("frame drift stays below 1e-9 over a length-10 domain") {
  const FramedCurve c =
      integrate_frenet(profile("1 + 0.5*sin(s)", "cos(2*s)", 0, 10), {}, FrenetFrame{}, 0, 10, 1e-3);
  CHECK(max_frame_drift(c) < 1e-9);
  CHECK(invariant_violations(c).empty());
}

TEST_CASE("integration errors") {
  const CurvatureProfile p = profile("sin(s)", "0", 0, 4);
  try {
    integrate_frenet(p, {}, FrenetFrame{}, 0, 4, 1e-3);
    FAIL("expected PROFILE_EVAL_ERROR");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ProfileEvalError);
    REQUIRE(e.s());
    CHECK(*e.s() > std::numbers::pi);
  }
  CHECK_THROWS_AS(integrate_frenet(p, {}, {{1, 0, 0}, {0, 1, 0}, {0, 0, -1}}, 0, 1, 1e-3), Error);
  CHECK_THROWS_AS(integrate_frenet(p, {}, FrenetFrame{}, 0, 5, 1e-3), Error);
  CHECK_THROWS_AS(integrate_frenet(p, {}, FrenetFrame{}, 1, 0.5, 1e-3), Error);
  CHECK_THROWS_AS(integrate_frenet(p, {}, FrenetFrame{}, 0, 1, 0.0), Error);
  CHECK_THROWS_AS(integrate_frenet(profile("log(s)", "0", 0, 1), {}, FrenetFrame{}, 0, 1, 1e-3), Error);
}

TEST_CASE("degenerate samples are masked, not extrapolated") {
  const FramedCurve c = integrate_frenet(profile("sin(s)", "1", 0, 1), {}, FrenetFrame{}, 0, 1, 1e-2);
  CHECK(c.degenerate.front() == 1);
  CHECK(c.sigma.front() == 0.0);
  CHECK(c.degenerate[1] == 0);
  CHECK(c.sigma[50] != 0.0);
}

TEST_CASE("grid step divides the interval") {
  const FramedCurve c = integrate_frenet(profile("1", "1", 0, 1), {}, FrenetFrame{}, 0, 1, 0.3);
  CHECK(c.grid.count == 5);
  CHECK(c.grid.step == doctest::Approx(0.25));
  const UniformGrid g = UniformGrid::spanning(0.2, 0.2 + 1000 * 1e-3, 1e-3);
  CHECK(g.count == 1001);
}

TEST_CASE("taylor local form") {
  auto g = testing::rng(32);
  const FrenetFrame f = testing::random_frame(g);
  CHECK(taylor_local({1, 2, 3}, f, 0.7, 0.3, -0.2, 0.0) == Vec3{1, 2, 3});
  const Vec3 v = taylor_local({}, FrenetFrame{}, 1.0, 0.0, 0.0, 0.1);
  CHECK(v.x == doctest::Approx(0.1 - 1e-3 / 6).epsilon(1e-15));
  CHECK(v.y == doctest::Approx(0.005).epsilon(1e-15));
  CHECK(v.z == 0.0);
}

TEST_CASE("taylor form agrees with the integrator to fourth order") {
  const double s0 = std::numbers::pi / 2;
  const CurvatureProfile p = profile(kMainKappa, kMainTau, 0.2, std::numbers::pi - 0.2);
  const FramedCurve c = integrate_frenet(p, {}, FrenetFrame{}, s0, s0 + 0.1, 1e-5);
  const CurvatureSample k = p.evaluate(s0);
  std::vector<double> x, y;
  for (std::size_t i : {100u, 200u, 500u, 1000u, 2000u, 5000u, 10000u}) {
    const double d = c.s(i) - s0;
    x.push_back(std::log(d));
    y.push_back(std::log(norm(taylor_local({}, FrenetFrame{}, k.kappa, k.dkappa, k.tau, d) - c.points[i])));
  }
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) mx += x[i] / x.size(), my += y[i] / x.size();
  double num = 0, den = 0;
  for (std::size_t i = 0; i < x.size(); ++i) num += (x[i] - mx) * (y[i] - my), den += (x[i] - mx) * (x[i] - mx);
  CHECK(num / den >= 3.7);
}

TEST_CASE("estimate: helix samples") {
  std::vector<Vec3> pts;
  const double t_max = 4 * std::numbers::pi;
  for (int i = 0; i < 2000; ++i) {
    const double t = t_max * i / 1999.0;
    pts.push_back({0.5 * std::cos(t), 0.5 * std::sin(t), -t / 2});
  }
  const FramedCurve c = estimate_frame_curvatures(pts);
  const IndexRange in = interior(c.valid);
  for (std::size_t i = in.begin; i < in.end; ++i) {
    CHECK(std::fabs(c.kappa[i] - 1.0) < 1e-4);
    CHECK(std::fabs(c.tau[i] + 1.0) < 1e-4);
    CHECK(std::fabs(norm(c.frames[i].T) - 1.0) < 1e-9);
  }
  CHECK(c.grid.count == 2000);
}

TEST_CASE("estimate: collinear samples are degenerate") {
  std::vector<Vec3> pts;
  for (int i = 0; i < 50; ++i) pts.push_back({0.1 * i * (1 + 0.01 * i), 0, 0});
  const FramedCurve c = estimate_frame_curvatures(pts);
  for (std::size_t i = 0; i < c.size(); ++i) {
    CHECK(c.degenerate[i] == 1);
    CHECK(c.kappa[i] < 1e-10);
  }
}

TEST_CASE("estimate inverts integrate") {
  for (auto [k, t] : {std::pair{"1 + 0.3*sin(s)", "0.5*cos(s)"}, std::pair{kMainKappa, kMainTau},
                      std::pair{"2", "-0.7 + 0.1*s"}}) {
    CAPTURE(k);
    const FramedCurve c = integrate_frenet(profile(k, t, 0.5, 2.5), {}, FrenetFrame{}, 0.5, 2.5, 1e-3);
    const FramedCurve e = estimate_frame_curvatures(c.points);
    REQUIRE(e.size() == c.size());
    double kmax = 0, tmax = 0, kerr = 0, terr = 0;
    const IndexRange in = interior({0, c.size()});
    for (std::size_t i = in.begin; i < in.end; ++i) {
      kmax = std::max(kmax, std::fabs(c.kappa[i]));
      tmax = std::max(tmax, std::fabs(c.tau[i]));
      kerr = std::max(kerr, std::fabs(e.kappa[i] - c.kappa[i]));
      terr = std::max(terr, std::fabs(e.tau[i] - c.tau[i]));
    }
    CHECK(kerr / kmax < 1e-5);
    CHECK(terr / tmax < 1e-5);
  }
}

TEST_CASE("estimate: closed curve") {
  std::vector<Vec3> pts;
  const int n = 600;
  for (int i = 0; i < n; ++i) {
    const double t = 2 * std::numbers::pi * i / n;
    pts.push_back({2 * std::cos(t), 2 * std::sin(t), 0});
  }
  const FramedCurve c = estimate_frame_curvatures(pts, true);
  for (std::size_t i = 0; i < c.size(); ++i) CHECK(c.kappa[i] == doctest::Approx(0.5).epsilon(1e-6));
}

TEST_CASE("estimate errors") {
  std::vector<Vec3> few(6, Vec3{});
  for (int i = 0; i < 6; ++i) few[i] = {double(i), 0, 0};
  try {
    estimate_frame_curvatures(few);
    FAIL("expected INSUFFICIENT_SAMPLES");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InsufficientSamples);
  }
  std::vector<Vec3> rep;
  for (int i = 0; i < 10; ++i) rep.push_back({double(i / 2), 0, 0});
  try {
    estimate_frame_curvatures(rep);
    FAIL("expected NOT_REGULAR");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotRegular);
  }
}

TEST_CASE("arclength reparametrization") {
  std::vector<Vec3> line;
  for (int i = 0; i <= 100; ++i) line.push_back({0.01 * i, 0.02 * i, 0});
  const double step = norm(line[1] - line[0]);
  const auto same = arclength_reparametrize(line, step);
  REQUIRE(same.size() == line.size());
  for (std::size_t i = 0; i < line.size(); ++i) CHECK(max_abs(same[i] - line[i]) < 1e-9);

  std::vector<Vec3> stretched;
  for (int i = 0; i <= 200; ++i) {
    const double u = i / 200.0;
    stretched.push_back({3 * u * u, -u * u, 2 * u * u});
  }
  const double len = std::sqrt(14.0);
  const auto uni = arclength_reparametrize(stretched, len / 150);
  REQUIRE(uni.size() == 151);
  for (std::size_t i = 1; i < uni.size(); ++i) CHECK(std::fabs(norm(uni[i] - uni[i - 1]) - len / 150) < 1e-8);

  std::vector<Vec3> circle;
  for (int i = 0; i < 500; ++i) {
    const double t = 1.5 * std::numbers::pi * std::pow(i / 499.0, 1.3);
    circle.push_back({std::cos(t), std::sin(t), 0});
  }
  const auto rc = arclength_reparametrize(circle, 1e-2);
  double total = 0;
  for (std::size_t i = 0; i < rc.size(); ++i) {
    CHECK(std::fabs(norm(rc[i]) - 1.0) < 1e-6);
    if (i) total += norm(rc[i] - rc[i - 1]);
  }
  // chords of a unit circle fall short of the arc by about h^2/24 per unit length
  CHECK(total == doctest::Approx(1.5 * std::numbers::pi).epsilon(1e-5));
  CHECK(max_abs(rc.back() - circle.back()) < 1e-6);

  CHECK_THROWS_AS(arclength_reparametrize(std::vector<Vec3>{{0, 0, 0}, {0, 0, 0}}, 0.1), Error);
  CHECK_THROWS_AS(arclength_reparametrize(std::vector<Vec3>{{0, 0, 0}}, 0.1), Error);
}
