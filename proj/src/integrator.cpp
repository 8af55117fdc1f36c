#include "frenet/integrator.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "cubic_spline.hpp"
#include "frenet/error.hpp"
#include "frenet/finite_difference.hpp"
#include "frenet/op_trace.hpp"

namespace frenet {
namespace {

struct State {
  Vec3 x, T, N, B;
};

State axpy(const State& y, double a, const State& k) {
  return {y.x + a * k.x, y.T + a * k.T, y.N + a * k.N, y.B + a * k.B};
}

State rhs(const State& y, double kappa, double tau) {
  return {y.T, kappa * y.N, -kappa * y.T + tau * y.B, -tau * y.N};
}

CurvatureSample checked_sample(const CurvatureProfile& profile, double s, double kappa_floor) {
  CurvatureSample c = profile.evaluate(s);
  if (c.kappa < -kappa_floor) {
    throw Error(ErrorCode::ProfileEvalError,
                "negative curvature " + std::to_string(c.kappa) + " at s=" + std::to_string(s), s);
  }
  c.kappa = std::max(c.kappa, 0.0);
  return c;
}

// Deterministic unit vector orthogonal to t.
Vec3 any_perpendicular(const Vec3& t) {
  const Vec3 axes[] = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
  const Vec3* best = &axes[0];
  for (const Vec3& e : axes) {
    if (std::fabs(dot(e, t)) < std::fabs(dot(*best, t))) best = &e;
  }
  return normalized(*best - dot(*best, t) * t);
}

void check_regular(std::span<const Vec3> points, bool closed) {
  double scale = 0.0;
  for (const Vec3& p : points) {
    if (!is_finite(p)) throw Error(ErrorCode::NonFinite, "non-finite input point");
    scale = std::max(scale, max_abs(p));
  }
  const double eps = 1e-14 * std::max(1.0, scale);
  const std::size_t n = points.size();
  for (std::size_t i = 1; i <= n; ++i) {
    if (i == n && !closed) break;
    if (norm(points[i % n] - points[i - 1]) <= eps) {
      throw Error(ErrorCode::NotRegular, "repeated consecutive points at index " + std::to_string(i));
    }
  }
}

std::vector<double> chord_parameters(std::span<const Vec3> points) {
  std::vector<double> t(points.size(), 0.0);
  for (std::size_t i = 1; i < points.size(); ++i) t[i] = t[i - 1] + norm(points[i] - points[i - 1]);
  return t;
}

std::vector<Vec3> resample_open(std::span<const Vec3> points, std::size_t count) {
  std::vector<double> t = chord_parameters(points);
  const double length = t.back();
  detail::CubicSpline spline(std::move(t), {points.begin(), points.end()});
  std::vector<Vec3> out(count);
  const double step = length / static_cast<double>(count - 1);
  for (std::size_t j = 0; j + 1 < count; ++j) out[j] = spline(static_cast<double>(j) * step);
  out.front() = points.front();
  out.back() = points.back();
  return out;
}

// Periodic resampling: the polyline is closed by the segment last -> first and
// padded with wrapped neighbours so the spline is interior-accurate everywhere.
std::vector<Vec3> resample_closed(std::span<const Vec3> points, double* step_out) {
  const std::size_t n = points.size();
  constexpr std::size_t pad = 3;
  std::vector<Vec3> ext;
  ext.reserve(n + 2 * pad + 1);
  for (std::size_t k = pad; k > 0; --k) ext.push_back(points[n - k]);
  ext.insert(ext.end(), points.begin(), points.end());
  for (std::size_t k = 0; k <= pad; ++k) ext.push_back(points[k]);
  std::vector<double> t = chord_parameters(ext);
  const double origin = t[pad];
  for (double& v : t) v -= origin;
  const double length = t[pad + n];
  detail::CubicSpline spline(std::move(t), std::move(ext));
  const double step = length / static_cast<double>(n);
  std::vector<Vec3> out(n);
  for (std::size_t j = 0; j < n; ++j) out[j] = spline(static_cast<double>(j) * step);
  *step_out = step;
  return out;
}

}  // namespace

FramedCurve integrate_frenet(const CurvatureProfile& profile, const Vec3& init_point,
                             const FrenetFrame& init_frame, double s0, double s1, double h,
                             double kappa_floor) {
  trace::note(trace::Op::IntegrateFrenet);
  if (!is_finite(init_point)) throw Error(ErrorCode::NonFinite, "non-finite initial point");
  if (!is_valid(init_frame)) {
    throw Error(ErrorCode::InvalidArgument, "initial frame is not orthonormal and right-handed");
  }
  const double slack = 1e-12 * std::fmax(1.0, profile.s_max() - profile.s_min());
  if (s0 < profile.s_min() - slack || s1 > profile.s_max() + slack) {
    throw Error(ErrorCode::InvalidArgument, "integration interval outside profile domain");
  }
  const UniformGrid grid = UniformGrid::spanning(s0, s1, h);
  const std::size_t n = grid.count;
  const double step = grid.step;

  FramedCurve c;
  c.grid = grid;
  c.points.resize(n);
  c.frames.resize(n);
  c.kappa.resize(n);
  c.tau.resize(n);
  c.dkappa.resize(n);
  c.dtau.resize(n);
  c.sigma.assign(n, 0.0);
  c.degenerate.assign(n, 0);
  c.valid = {0, n};

  State y{init_point, init_frame.T, init_frame.N, init_frame.B};
  CurvatureSample here = checked_sample(profile, grid.at(0), kappa_floor);
  for (std::size_t i = 0;; ++i) {
    c.points[i] = y.x;
    c.frames[i] = {y.T, y.N, y.B};
    c.kappa[i] = here.kappa;
    c.tau[i] = here.tau;
    c.dkappa[i] = here.dkappa;
    c.dtau[i] = here.dtau;
    if (i + 1 == n) break;

    const double s = grid.at(i);
    const CurvatureSample mid = checked_sample(profile, s + 0.5 * step, kappa_floor);
    const CurvatureSample next = checked_sample(profile, grid.at(i + 1), kappa_floor);
    const State k1 = rhs(y, here.kappa, here.tau);
    const State k2 = rhs(axpy(y, 0.5 * step, k1), mid.kappa, mid.tau);
    const State k3 = rhs(axpy(y, 0.5 * step, k2), mid.kappa, mid.tau);
    const State k4 = rhs(axpy(y, step, k3), next.kappa, next.tau);
    State stepped{
        y.x + (step / 6.0) * (k1.x + 2.0 * k2.x + 2.0 * k3.x + k4.x),
        y.T + (step / 6.0) * (k1.T + 2.0 * k2.T + 2.0 * k3.T + k4.T),
        y.N + (step / 6.0) * (k1.N + 2.0 * k2.N + 2.0 * k3.N + k4.N),
        y.B + (step / 6.0) * (k1.B + 2.0 * k2.B + 2.0 * k3.B + k4.B),
    };
    const FrenetFrame f = orthonormalize({stepped.T, stepped.N, stepped.B});
    y = {stepped.x, f.T, f.N, f.B};
    here = next;
  }

  for (std::size_t i = 0; i < n; ++i) {
    const CurvatureSample smp = c.sample(i);
    if (smp.degenerate(kappa_floor)) {
      c.degenerate[i] = 1;
    } else {
      c.sigma[i] = geodesic_curvature(smp, kappa_floor);
    }
  }
  return c;
}

Vec3 taylor_local(const Vec3& p, const FrenetFrame& f, double kappa0, double dkappa0, double tau0,
                  double s) {
  trace::note(trace::Op::TaylorLocal);
  if (!is_finite(p) || !std::isfinite(kappa0) || !std::isfinite(dkappa0) || !std::isfinite(tau0) ||
      !std::isfinite(s)) {
    throw Error(ErrorCode::NonFinite, "non-finite Taylor input");
  }
  const double s2 = s * s;
  const double s3 = s2 * s;
  return p + (s - s3 * kappa0 * kappa0 / 6.0) * f.T +
         (s2 * kappa0 / 2.0 + s3 * dkappa0 / 6.0) * f.N + (s3 * kappa0 * tau0 / 6.0) * f.B;
}

std::vector<Vec3> arclength_reparametrize(std::span<const Vec3> points, double target_h) {
  trace::note(trace::Op::ArclengthReparametrize);
  if (points.size() < 2) throw Error(ErrorCode::InsufficientSamples, "need at least 2 points");
  if (!(target_h > 0.0)) throw Error(ErrorCode::InvalidArgument, "target step must be positive");
  check_regular(points, false);
  double length = 0.0;
  for (std::size_t i = 1; i < points.size(); ++i) length += norm(points[i] - points[i - 1]);
  const auto steps = static_cast<std::size_t>(std::max(1.0, std::ceil(length / target_h - 1e-9)));
  return resample_open(points, steps + 1);
}

FramedCurve estimate_frame_curvatures(std::span<const Vec3> points, bool closed,
                                      double kappa_floor) {
  trace::note(trace::Op::EstimateFrameCurvatures);
  const std::size_t n = points.size();
  if (n < 7) throw Error(ErrorCode::InsufficientSamples, "need at least 7 points");
  check_regular(points, closed);

  std::vector<Vec3> p;
  double h = 0.0;
  if (closed) {
    p = resample_closed(points, &h);
  } else {
    double length = 0.0;
    for (std::size_t i = 1; i < n; ++i) length += norm(points[i] - points[i - 1]);
    p = arclength_reparametrize(points, length / static_cast<double>(n - 1));
    h = length / static_cast<double>(p.size() - 1);
  }
  const std::size_t m = p.size();
  const IndexRange all{0, m};
  auto diff = [&](std::span<const Vec3> f, int order) {
    return closed ? fd::derivative_periodic(f, h, order) : fd::derivative(f, h, order, all);
  };
  const auto d1 = diff(p, 1);
  const auto d2 = diff(p, 2);
  const auto d3 = diff(p, 3);

  FramedCurve c;
  c.grid = {0.0, h, m};
  c.points = p;
  c.frames.resize(m);
  c.kappa.resize(m);
  c.tau.resize(m);
  c.sigma.assign(m, 0.0);
  c.degenerate.assign(m, 0);
  c.valid = all;
  for (std::size_t i = 0; i < m; ++i) {
    const double speed = norm(d1[i]);
    const Vec3 t = d1[i] / speed;
    const Vec3 c12 = cross(d1[i], d2[i]);
    const double c_len = norm(c12);
    c.kappa[i] = c_len / (speed * speed * speed);
    if (c_len < kappa_floor) {
      c.degenerate[i] = 1;
      c.frames[i] = frame_from(t, any_perpendicular(t));
      c.tau[i] = 0.0;
      continue;
    }
    const Vec3 nrm = normalized(d2[i] - dot(d2[i], t) * t);
    c.frames[i] = frame_from(t, nrm);
    c.tau[i] = det(d1[i], d2[i], d3[i]) / (c_len * c_len);
  }

  auto diff_scalar = [&](const std::vector<double>& f) {
    if (!closed) return fd::derivative(f, h, 1, all);
    std::vector<Vec3> wrapped(m);
    for (std::size_t i = 0; i < m; ++i) wrapped[i] = {f[i], 0.0, 0.0};
    const auto d = fd::derivative_periodic(wrapped, h, 1);
    std::vector<double> out(m);
    for (std::size_t i = 0; i < m; ++i) out[i] = d[i].x;
    return out;
  };
  c.dkappa = diff_scalar(c.kappa);
  c.dtau = diff_scalar(c.tau);
  for (std::size_t i = 0; i < m; ++i) {
    if (!c.degenerate[i]) c.sigma[i] = geodesic_curvature(c.sample(i), kappa_floor);
  }
  return c;
}

}  // namespace frenet
