#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "frenet/frame.hpp"
#include "frenet/vec3.hpp"

namespace frenet {

/// s_i = start + i * step for i in [0, count).
struct UniformGrid {
  double start = 0.0;
  double step = 0.0;
  std::size_t count = 0;

  double at(std::size_t i) const { return start + static_cast<double>(i) * step; }
  double last() const { return at(count - 1); }

  /// Smallest grid covering [s0, s1] exactly whose step does not exceed h.
  static UniformGrid spanning(double s0, double s1, double h);

  friend bool operator==(const UniformGrid&, const UniformGrid&) = default;
};

/// Half-open index range [begin, end).
struct IndexRange {
  std::size_t begin = 0;
  std::size_t end = 0;

  std::size_t size() const { return end > begin ? end - begin : 0; }
  bool contains(std::size_t i) const { return i >= begin && i < end; }

  friend bool operator==(const IndexRange&, const IndexRange&) = default;
};

/// Middle `fraction` of a range (drops (1 - fraction)/2 of the samples at each end).
IndexRange interior(IndexRange r, double fraction = 0.9);

/// A curve sampled on a uniform arclength grid together with its Frenet
/// frame and curvature data. `valid` is the contiguous index range on which
/// the curve is regular; samples outside it are flagged degenerate and carry
/// clamped frames.
struct FramedCurve {
  UniformGrid grid;
  std::vector<Vec3> points;
  std::vector<FrenetFrame> frames;
  std::vector<double> kappa;
  std::vector<double> tau;
  std::vector<double> dkappa;
  std::vector<double> dtau;
  std::vector<double> sigma;
  std::vector<std::uint8_t> degenerate;
  IndexRange valid;

  std::size_t size() const { return points.size(); }
  double s(std::size_t i) const { return grid.at(i); }
  CurvatureSample sample(std::size_t i) const {
    return {grid.at(i), kappa[i], tau[i], dkappa[i], dtau[i]};
  }
};

/// Human-readable list of violated FramedCurve invariants (empty when valid).
std::vector<std::string> invariant_violations(const FramedCurve& curve,
                                              double frame_tol = kFrameTolerance);

/// Longest run of samples inside `within` whose degenerate flag is clear.
IndexRange longest_regular_run(const std::vector<std::uint8_t>& degenerate, IndexRange within);

/// Largest Gram-matrix deviation over the non-degenerate frames.
double max_frame_drift(const FramedCurve& curve);

}  // namespace frenet
