#include "frenet/frame.hpp"

#include <algorithm>
#include <cmath>

#include "frenet/error.hpp"
#include "frenet/op_trace.hpp"

namespace frenet {
namespace {

constexpr double kCollapseThreshold = 1e-8;

void require_finite(double v, const char* what) {
  if (!std::isfinite(v)) {
    throw Error(ErrorCode::NonFinite, std::string("non-finite ") + what);
  }
}

void require_finite(const FrenetFrame& f) {
  if (!is_finite(f.T) || !is_finite(f.N) || !is_finite(f.B)) {
    throw Error(ErrorCode::NonFinite, "non-finite frame vector");
  }
}

}  // namespace

double gram_deviation(const FrenetFrame& f) {
  const double entries[] = {
      std::fabs(dot(f.T, f.T) - 1.0), std::fabs(dot(f.N, f.N) - 1.0),
      std::fabs(dot(f.B, f.B) - 1.0), std::fabs(dot(f.T, f.N)),
      std::fabs(dot(f.T, f.B)),       std::fabs(dot(f.N, f.B)),
  };
  return *std::max_element(std::begin(entries), std::end(entries));
}

bool is_valid(const FrenetFrame& f, double tol) {
  if (!is_finite(f.T) || !is_finite(f.N) || !is_finite(f.B)) return false;
  return gram_deviation(f) <= tol && max_abs(f.B - cross(f.T, f.N)) <= tol;
}

FrenetFrame frame_from(const Vec3& T, const Vec3& N) { return {T, N, cross(T, N)}; }

Vec3 darboux_vector(const FrenetFrame& frame, double kappa, double tau) {
  trace::note(trace::Op::DarbouxVector);
  require_finite(frame);
  require_finite(kappa, "curvature");
  require_finite(tau, "torsion");
  if (kappa < 0.0) throw Error(ErrorCode::InvalidArgument, "negative curvature");
  return tau * frame.T + kappa * frame.B;
}

double geodesic_curvature(const CurvatureSample& sample, double kappa_floor) {
  trace::note(trace::Op::GeodesicCurvature);
  require_finite(sample.kappa, "curvature");
  require_finite(sample.tau, "torsion");
  require_finite(sample.dkappa, "curvature derivative");
  require_finite(sample.dtau, "torsion derivative");
  if (sample.degenerate(kappa_floor)) {
    throw Error(ErrorCode::SigmaUndefined, "geodesic curvature undefined: curvature below floor",
                sample.s);
  }
  const double w2 = sample.kappa * sample.kappa + sample.tau * sample.tau;
  return (sample.dtau * sample.kappa - sample.dkappa * sample.tau) / (w2 * std::sqrt(w2));
}

Vec3 helix_axis_tangent(const FrenetFrame& frame, double theta) {
  trace::note(trace::Op::HelixAxisTangent);
  require_finite(frame);
  require_finite(theta, "angle");
  return std::cos(theta) * frame.T + std::sin(theta) * frame.B;
}

Vec3 slant_axis(const FrenetFrame& frame, double kappa, double tau, double theta) {
  trace::note(trace::Op::SlantAxis);
  require_finite(frame);
  require_finite(theta, "angle");
  const Vec3 w = darboux_vector(frame, kappa, tau);
  const double len = norm(w);
  if (!(len > 0.0)) throw Error(ErrorCode::AxisUndefined, "zero Darboux vector");
  return std::sin(theta) * (w / len) + std::cos(theta) * frame.N;
}

FrenetFrame orthonormalize(const FrenetFrame& frame) {
  trace::note(trace::Op::Orthonormalize);
  require_finite(frame);
  const double t_len = norm(frame.T);
  if (t_len < kCollapseThreshold) throw Error(ErrorCode::FrameCollapse, "tangent collapsed");
  const Vec3 t = frame.T / t_len;
  const Vec3 n_res = frame.N - dot(frame.N, t) * t;
  const double n_len = norm(n_res);
  if (n_len < kCollapseThreshold * std::max(1.0, norm(frame.N))) {
    throw Error(ErrorCode::FrameCollapse, "normal collapsed onto tangent");
  }
  const Vec3 n = n_res / n_len;
  return {t, n, cross(t, n)};
}

}  // namespace frenet
