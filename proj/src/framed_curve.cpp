#include "frenet/framed_curve.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "frenet/error.hpp"

namespace frenet {

UniformGrid UniformGrid::spanning(double s0, double s1, double h) {
  if (!std::isfinite(s0) || !std::isfinite(s1) || !std::isfinite(h)) {
    throw Error(ErrorCode::NonFinite, "non-finite grid bounds");
  }
  if (!(s1 > s0)) throw Error(ErrorCode::InvalidArgument, "grid requires s1 > s0");
  if (!(h > 0.0)) throw Error(ErrorCode::InvalidArgument, "grid step must be positive");
  // Tolerate (s1 - s0)/h landing a hair above an integer.
  const double ratio = (s1 - s0) / h;
  const auto steps = static_cast<std::size_t>(std::max(1.0, std::ceil(ratio - 1e-9)));
  return {s0, (s1 - s0) / static_cast<double>(steps), steps + 1};
}

IndexRange interior(IndexRange r, double fraction) {
  const std::size_t n = r.size();
  const auto drop = static_cast<std::size_t>(std::floor(0.5 * (1.0 - fraction) * static_cast<double>(n)));
  return {r.begin + drop, r.end - drop};
}

std::vector<std::string> invariant_violations(const FramedCurve& c, double frame_tol) {
  std::vector<std::string> out;
  const std::size_t n = c.size();
  auto report = [&](const std::string& what, std::size_t i) {
    std::ostringstream os;
    os << what << " at sample " << i << " (s=" << c.s(i) << ")";
    out.push_back(os.str());
  };
  if (c.grid.count != n || c.frames.size() != n || c.kappa.size() != n || c.tau.size() != n ||
      c.dkappa.size() != n || c.dtau.size() != n || c.sigma.size() != n ||
      c.degenerate.size() != n) {
    out.emplace_back("column lengths disagree with the grid");
    return out;
  }
  if (c.valid.end > n) out.emplace_back("valid range exceeds sample count");
  const double h = c.grid.step;
  for (std::size_t i = 0; i < n; ++i) {
    if (!is_finite(c.points[i])) report("non-finite point", i);
    if (!c.degenerate[i] && !is_valid(c.frames[i], frame_tol)) report("frame not orthonormal", i);
    if (i > 0) {
      const double chord = norm(c.points[i] - c.points[i - 1]);
      if (std::fabs(chord - h) > 1e-3 * h) report("chord length departs from grid step", i);
    }
  }
  return out;
}

IndexRange longest_regular_run(const std::vector<std::uint8_t>& degenerate, IndexRange within) {
  IndexRange best{within.begin, within.begin};
  std::size_t start = within.begin;
  for (std::size_t i = within.begin; i <= within.end; ++i) {
    if (i == within.end || degenerate[i]) {
      if (i - start > best.size()) best = {start, i};
      start = i + 1;
    }
  }
  return best;
}

double max_frame_drift(const FramedCurve& c) {
  double worst = 0.0;
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (!c.degenerate[i]) worst = std::max(worst, gram_deviation(c.frames[i]));
  }
  return worst;
}

}  // namespace frenet
