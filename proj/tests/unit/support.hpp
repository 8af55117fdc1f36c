#pragma once

#include <cmath>
#include <random>

#include "frenet/frame.hpp"
#include "frenet/rigid.hpp"

namespace testing {

inline std::mt19937_64 rng(std::uint64_t seed) { return std::mt19937_64(seed); }

inline double uniform(std::mt19937_64& g, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(g);
}

inline frenet::Vec3 unit_vector(std::mt19937_64& g) {
  std::normal_distribution<double> n;
  while (true) {
    const frenet::Vec3 v{n(g), n(g), n(g)};
    if (frenet::norm(v) > 1e-3) return frenet::normalized(v);
  }
}

/// Orthonormal right-handed frame built by hand (not via orthonormalize).
inline frenet::FrenetFrame random_frame(std::mt19937_64& g) {
  const frenet::Vec3 t = unit_vector(g);
  frenet::Vec3 a = unit_vector(g);
  while (std::fabs(frenet::dot(a, t)) > 0.9) a = unit_vector(g);
  const frenet::Vec3 n = frenet::normalized(a - frenet::dot(a, t) * t);
  return {t, n, frenet::cross(t, n)};
}

inline frenet::RigidMotion random_motion(std::mt19937_64& g) {
  return {frenet::Rotation::about(unit_vector(g), uniform(g, -3.0, 3.0)),
          {uniform(g, -5, 5), uniform(g, -5, 5), uniform(g, -5, 5)}};
}

// Closed forms of the worked example's first principal direction curve,
// written out independently of the library. N is T' / |T'|, whose third
// component is -1/sqrt(2).
inline frenet::Vec3 gamma1(double s) {
  const double r2 = std::sqrt(2.0), p = r2 + 1, m = r2 - 1;
  return {p * p / (2 * r2) * std::sin(m * s) - m * m / (2 * r2) * std::sin(p * s),
          -p * p / (2 * r2) * std::cos(m * s) + m * m / (2 * r2) * std::cos(p * s), std::sin(s) / r2};
}

inline frenet::FrenetFrame level1_frame(double s) {
  const double r2 = std::sqrt(2.0);
  const double a = (r2 + 1) / (2 * r2), b = (r2 - 1) / (2 * r2);
  const frenet::Vec3 t{a * std::cos((r2 - 1) * s) - b * std::cos((r2 + 1) * s),
                       a * std::sin((r2 - 1) * s) - b * std::sin((r2 + 1) * s), std::cos(s) / r2};
  const frenet::Vec3 n{std::cos(r2 * s) / r2, std::sin(r2 * s) / r2, -1 / r2};
  return {t, n, frenet::cross(t, n)};
}

}  // namespace testing
