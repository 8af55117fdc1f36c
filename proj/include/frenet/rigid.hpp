#pragma once

#include <array>
#include <span>

#include "frenet/vec3.hpp"

namespace frenet {

/// Proper rotation stored row-wise.
struct Rotation {
  std::array<Vec3, 3> rows{Vec3{1, 0, 0}, Vec3{0, 1, 0}, Vec3{0, 0, 1}};

  Vec3 operator()(const Vec3& v) const { return {dot(rows[0], v), dot(rows[1], v), dot(rows[2], v)}; }

  /// Rodrigues rotation about a (not necessarily unit) axis.
  static Rotation about(const Vec3& axis, double angle);
};

struct RigidMotion {
  Rotation rotation;
  Vec3 translation;

  Vec3 operator()(const Vec3& v) const { return rotation(v) + translation; }
};

struct Alignment {
  RigidMotion motion;  // maps source onto target
  double rms = 0.0;
  double max_deviation = 0.0;
};

/// Least-squares proper rigid motion taking `source` onto `target` (Kabsch).
Alignment align_rigid(std::span<const Vec3> source, std::span<const Vec3> target);

}  // namespace frenet
