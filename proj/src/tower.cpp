#include "frenet/tower.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "frenet/error.hpp"
#include "frenet/finite_difference.hpp"
#include "frenet/integrator.hpp"
#include "frenet/op_trace.hpp"

namespace frenet {
namespace {

constexpr std::size_t kMinLevelSamples = 11;  // 10 grid steps

void fill_darboux(TowerLevel& level) {
  const FramedCurve& c = level.curve;
  level.omega.assign(c.size(), 0.0);
  level.darboux.assign(c.size(), Vec3{});
  for (std::size_t i = c.valid.begin; i < c.valid.end; ++i) {
    level.omega[i] = std::hypot(c.kappa[i], c.tau[i]);
    level.darboux[i] = darboux_vector(c.frames[i], c.kappa[i], c.tau[i]);
  }
}

std::string describe(int k, const char* what) {
  std::ostringstream os;
  os << "level " << k + 1 << " unavailable: " << what;
  return os.str();
}

}  // namespace

TowerLevel base_level(const FramedCurve& main, const TowerOptions& options) {
  TowerLevel level;
  level.k = 0;
  level.curve = main;
  level.curve.valid = longest_regular_run(main.degenerate, main.valid);
  for (std::size_t i = level.curve.valid.begin; i < level.curve.valid.end; ++i) {
    if (main.kappa[i] < options.kappa_floor) level.curve.degenerate[i] = 1;
  }
  level.curve.valid = longest_regular_run(level.curve.degenerate, level.curve.valid);
  fill_darboux(level);
  return level;
}

TowerLevel principal_direction_step(const TowerLevel& level, const TowerOptions& options) {
  trace::note(trace::Op::PrincipalDirectionStep);
  const FramedCurve& prev = level.curve;
  const IndexRange r = prev.valid;
  if (r.size() < kMinLevelSamples) {
    throw Error(ErrorCode::LevelUnavailable, describe(level.k, "regular interval shorter than 10 steps"));
  }
  double max_tau = 0.0;
  for (std::size_t i = r.begin; i < r.end; ++i) max_tau = std::max(max_tau, std::fabs(prev.tau[i]));
  if (max_tau <= options.planar_tol) {
    throw Error(ErrorCode::LevelUnavailable,
                describe(level.k, "the previous level is planar; the recursion is not continued"));
  }

  const std::size_t n = prev.size();
  const double h = prev.grid.step;
  TowerLevel next;
  next.k = level.k + 1;
  FramedCurve& c = next.curve;
  c.grid = prev.grid;
  c.frames.assign(n, FrenetFrame{});
  c.kappa.assign(n, 0.0);
  c.tau.assign(n, 0.0);
  c.dkappa.assign(n, 0.0);
  c.dtau.assign(n, 0.0);
  c.sigma.assign(n, 0.0);
  c.degenerate.assign(n, 1);

  for (std::size_t i = r.begin; i < r.end; ++i) {
    const FrenetFrame& f = prev.frames[i];
    const double omega = std::hypot(prev.kappa[i], prev.tau[i]);
    if (omega < options.kappa_floor) continue;
    const Vec3 t = f.N;
    const Vec3 nrm = (-prev.kappa[i] * f.T + prev.tau[i] * f.B) / omega;
    c.frames[i] = frame_from(t, nrm);
    c.kappa[i] = omega;
    c.tau[i] = prev.sigma[i] * omega;
    c.degenerate[i] = 0;
  }
  c.valid = longest_regular_run(c.degenerate, r);
  if (c.valid.size() < kMinLevelSamples) {
    throw Error(ErrorCode::LevelUnavailable,
                describe(level.k, "Darboux vector vanishes on most of the interval"));
  }
  const IndexRange v = c.valid;
  for (std::size_t i = 0; i < n; ++i) {
    if (v.contains(i)) continue;
    c.degenerate[i] = 1;
    c.kappa[i] = c.tau[i] = 0.0;
    c.frames[i] = c.frames[i < v.begin ? v.begin : v.end - 1];
  }

  std::vector<Vec3> tangent(n);
  for (std::size_t i = 0; i < n; ++i) tangent[i] = c.frames[i].T;
  c.points = fd::cumulative_integral(tangent, h, v);

  c.dkappa = fd::derivative(c.kappa, h, 1, v);
  c.dtau = fd::derivative(c.tau, h, 1, v);
  for (std::size_t i = v.begin; i < v.end; ++i) {
    c.sigma[i] = geodesic_curvature(c.sample(i), options.kappa_floor);
  }
  fill_darboux(next);

  // Independent route: re-estimate frames from the integrated points.
  const std::span<const Vec3> pts(c.points.data() + v.begin, v.size());
  const FramedCurve est = estimate_frame_curvatures(pts, false, options.kappa_floor);
  const IndexRange inner = interior({0, v.size()});
  double worst = 0.0;
  for (std::size_t j = inner.begin; j < inner.end; ++j) {
    const FrenetFrame& a = c.frames[v.begin + j];
    const FrenetFrame& b = est.frames[j];
    worst = std::max({worst, max_abs(a.T - b.T), max_abs(a.N - b.N), max_abs(a.B - b.B)});
  }
  next.cross_check_error = worst;
  return next;
}

DirectionTower build_tower(const FramedCurve& main, int depth, const TowerOptions& options) {
  trace::note(trace::Op::BuildTower);
  if (depth < 0) throw Error(ErrorCode::InvalidArgument, "tower depth must be non-negative");
  DirectionTower tower;
  tower.requested_depth = depth;
  tower.levels.push_back(base_level(main, options));
  for (int k = 1; k <= depth; ++k) {
    try {
      tower.levels.push_back(principal_direction_step(tower.levels.back(), options));
    } catch (const Error& e) {
      if (e.code() != ErrorCode::LevelUnavailable) throw;
      tower.stop_reason = std::string(to_string(e.code())) + ": " + e.what();
      break;
    }
    const TowerLevel& added = tower.levels.back();
    if (added.cross_check_error && *added.cross_check_error > options.cross_check_tol) {
      std::ostringstream os;
      os << "level " << added.k << ": recursive and re-estimated frames differ by "
         << *added.cross_check_error << " (tolerance " << options.cross_check_tol << ")";
      tower.warnings.push_back(os.str());
    }
  }
  return tower;
}

DarbouxResidual darboux_residual(const TowerLevel& level) {
  const FramedCurve& c = level.curve;
  const IndexRange v = c.valid;
  DarbouxResidual out;
  if (v.size() < 5) return out;
  const std::size_t n = c.size();
  std::vector<Vec3> t(n), nn(n), b(n);
  for (std::size_t i = 0; i < n; ++i) {
    t[i] = c.frames[i].T;
    nn[i] = c.frames[i].N;
    b[i] = c.frames[i].B;
  }
  const double h = c.grid.step;
  const auto dt = fd::derivative(t, h, 1, v);
  const auto dn = fd::derivative(nn, h, 1, v);
  const auto db = fd::derivative(b, h, 1, v);
  const IndexRange inner = interior(v);
  for (std::size_t i = inner.begin; i < inner.end; ++i) {
    const Vec3 w = level.darboux[i];
    out.t = std::max(out.t, max_abs(cross(w, t[i]) - dt[i]));
    out.n = std::max(out.n, max_abs(cross(w, nn[i]) - dn[i]));
    out.b = std::max(out.b, max_abs(cross(w, b[i]) - db[i]));
  }
  return out;
}

MaskedSeries tangent_indicatrix_ratio(const TowerLevel& level, double kappa_floor) {
  trace::note(trace::Op::TangentIndicatrixRatio);
  const FramedCurve& c = level.curve;
  const IndexRange v = c.valid;
  const std::size_t n = c.size();
  MaskedSeries out{std::vector<double>(n, 0.0), std::vector<std::uint8_t>(n, 0)};
  if (v.size() < 5) return out;
  std::vector<Vec3> tangent(n);
  for (std::size_t i = 0; i < n; ++i) tangent[i] = c.frames[i].T;
  const double h = c.grid.step;
  const auto d1 = fd::derivative(tangent, h, 1, v);
  const auto d2 = fd::derivative(tangent, h, 2, v);
  const auto d3 = fd::derivative(tangent, h, 3, v);
  for (std::size_t i = v.begin; i < v.end; ++i) {
    if (c.degenerate[i] || c.kappa[i] < kappa_floor) continue;
    const Vec3 c12 = cross(d1[i], d2[i]);
    const double c_len = norm(c12);
    if (c_len < kappa_floor) continue;
    const double speed = norm(d1[i]);
    const double curvature = c_len / (speed * speed * speed);
    const double torsion = det(d1[i], d2[i], d3[i]) / (c_len * c_len);
    out.values[i] = torsion / curvature;
    out.valid[i] = 1;
  }
  return out;
}

}  // namespace frenet
