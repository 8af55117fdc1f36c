#include "frenet/rigid.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "frenet/error.hpp"

namespace frenet {

Rotation Rotation::about(const Vec3& axis, double angle) {
  const Vec3 k = normalized(axis);
  const double c = std::cos(angle), s = std::sin(angle), t = 1.0 - c;
  Rotation r;
  r.rows[0] = {c + t * k.x * k.x, t * k.x * k.y - s * k.z, t * k.x * k.z + s * k.y};
  r.rows[1] = {t * k.y * k.x + s * k.z, c + t * k.y * k.y, t * k.y * k.z - s * k.x};
  r.rows[2] = {t * k.z * k.x - s * k.y, t * k.z * k.y + s * k.x, c + t * k.z * k.z};
  return r;
}

Alignment align_rigid(std::span<const Vec3> source, std::span<const Vec3> target) {
  if (source.size() != target.size() || source.size() < 3) {
    throw Error(ErrorCode::InvalidArgument, "alignment needs two equally sized sets of 3+ points");
  }
  const auto n = static_cast<double>(source.size());
  Vec3 cs{}, ct{};
  for (std::size_t i = 0; i < source.size(); ++i) {
    cs += source[i];
    ct += target[i];
  }
  cs = cs / n;
  ct = ct / n;
  Eigen::Matrix3d cov = Eigen::Matrix3d::Zero();
  for (std::size_t i = 0; i < source.size(); ++i) {
    const Vec3 a = source[i] - cs;
    const Vec3 b = target[i] - ct;
    cov += Eigen::Vector3d(b.x, b.y, b.z) * Eigen::Vector3d(a.x, a.y, a.z).transpose();
  }
  Eigen::JacobiSVD<Eigen::Matrix3d> svd(cov, Eigen::ComputeFullU | Eigen::ComputeFullV);
  Eigen::Matrix3d d = Eigen::Matrix3d::Identity();
  if ((svd.matrixU() * svd.matrixV().transpose()).determinant() < 0.0) d(2, 2) = -1.0;
  const Eigen::Matrix3d r = svd.matrixU() * d * svd.matrixV().transpose();

  Alignment out;
  for (int i = 0; i < 3; ++i) out.motion.rotation.rows[i] = {r(i, 0), r(i, 1), r(i, 2)};
  out.motion.translation = ct - out.motion.rotation(cs);
  double sq = 0.0;
  for (std::size_t i = 0; i < source.size(); ++i) {
    const double e = norm(out.motion(source[i]) - target[i]);
    sq += e * e;
    out.max_deviation = std::max(out.max_deviation, e);
  }
  out.rms = std::sqrt(sq / n);
  return out;
}

}  // namespace frenet
