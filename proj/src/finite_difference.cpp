#include "frenet/finite_difference.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "frenet/error.hpp"

namespace frenet::fd {
namespace {

constexpr int kStencil = 5;

// weights[shift][order-1][j] for offsets (j - 2 - shift'), where the window
// starts `first` samples before the evaluation point (first in 0..4).
struct StencilTable {
  std::array<std::array<std::array<double, kStencil>, 3>, kStencil> w{};

  StencilTable() {
    for (int first = 0; first < kStencil; ++first) {
      std::array<double, kStencil> nodes{};
      for (int j = 0; j < kStencil; ++j) nodes[j] = static_cast<double>(j - first);
      for (int order = 1; order <= 3; ++order) {
        const auto weights = fornberg_weights(0.0, nodes, order);
        std::copy(weights.begin(), weights.end(), w[first][order - 1].begin());
      }
    }
  }
};

const StencilTable& table() {
  static const StencilTable t;
  return t;
}

template <class T>
std::vector<T> derivative_impl(std::span<const T> f, double h, int order, IndexRange range) {
  if (order < 1 || order > 3) throw Error(ErrorCode::InvalidArgument, "derivative order must be 1..3");
  if (range.end > f.size() || range.size() < kStencil) {
    throw Error(ErrorCode::InsufficientSamples, "finite differences need at least 5 samples");
  }
  const double scale = 1.0 / std::pow(h, order);
  std::vector<T> out(f.size(), T{});
  for (std::size_t i = range.begin; i < range.end; ++i) {
    // Window [lo, lo + 5) centred on i, shifted to stay inside the range.
    const std::size_t lo =
        std::clamp(i < range.begin + 2 ? range.begin : i - 2, range.begin, range.end - kStencil);
    const auto& w = table().w[i - lo][order - 1];
    T acc{};
    for (int j = 0; j < kStencil; ++j) acc += w[j] * f[lo + j];
    out[i] = acc * scale;
  }
  return out;
}

}  // namespace

std::vector<double> fornberg_weights(double x0, std::span<const double> nodes, int order) {
  const std::size_t n = nodes.size();
  if (order < 0 || n <= static_cast<std::size_t>(order)) {
    throw Error(ErrorCode::InvalidArgument, "not enough nodes for the derivative order");
  }
  const auto m = static_cast<std::size_t>(order);
  std::vector<std::vector<double>> c(n, std::vector<double>(m + 1, 0.0));
  double c1 = 1.0;
  double c4 = nodes[0] - x0;
  c[0][0] = 1.0;
  for (std::size_t i = 1; i < n; ++i) {
    const std::size_t mn = std::min(i, m);
    double c2 = 1.0;
    const double c5 = c4;
    c4 = nodes[i] - x0;
    for (std::size_t j = 0; j < i; ++j) {
      const double c3 = nodes[i] - nodes[j];
      c2 *= c3;
      if (j == i - 1) {
        for (std::size_t k = mn; k >= 1; --k) {
          c[i][k] = c1 * (static_cast<double>(k) * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
        }
        c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
      }
      for (std::size_t k = mn; k >= 1; --k) {
        c[j][k] = (c4 * c[j][k] - static_cast<double>(k) * c[j][k - 1]) / c3;
      }
      c[j][0] = c4 * c[j][0] / c3;
    }
    c1 = c2;
  }
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = c[i][m];
  return out;
}

std::vector<double> derivative(std::span<const double> f, double h, int order, IndexRange range) {
  return derivative_impl<double>(f, h, order, range);
}

std::vector<Vec3> derivative(std::span<const Vec3> f, double h, int order, IndexRange range) {
  return derivative_impl<Vec3>(f, h, order, range);
}

std::vector<Vec3> derivative_periodic(std::span<const Vec3> f, double h, int order) {
  if (order < 1 || order > 3) throw Error(ErrorCode::InvalidArgument, "derivative order must be 1..3");
  const std::size_t n = f.size();
  if (n < kStencil) throw Error(ErrorCode::InsufficientSamples, "finite differences need at least 5 samples");
  const auto& w = table().w[2][order - 1];
  const double scale = 1.0 / std::pow(h, order);
  std::vector<Vec3> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    Vec3 acc{};
    for (int j = 0; j < kStencil; ++j) acc += w[j] * f[(i + n + j - 2) % n];
    out[i] = acc * scale;
  }
  return out;
}

std::vector<Vec3> cumulative_integral(std::span<const Vec3> f, double h, IndexRange range) {
  if (range.end > f.size() || range.size() < 4) {
    throw Error(ErrorCode::InsufficientSamples, "cumulative integration needs at least 4 samples");
  }
  std::vector<Vec3> out(f.size());
  const std::size_t b = range.begin;
  auto F = [&](std::size_t j) -> const Vec3& { return f[b + j]; };
  auto I = [&](std::size_t j) -> Vec3& { return out[b + j]; };
  I(0) = Vec3{};
  // First interval from the cubic through the first four samples.
  I(1) = (h / 24.0) * (9.0 * F(0) + 19.0 * F(1) - 5.0 * F(2) + F(3));
  for (std::size_t j = 2; j < range.size(); ++j) {
    if (j % 2 == 0) {
      I(j) = I(j - 2) + (h / 3.0) * (F(j - 2) + 4.0 * F(j - 1) + F(j));
    } else {
      I(j) = I(j - 3) + (3.0 * h / 8.0) * (F(j - 3) + 3.0 * F(j - 2) + 3.0 * F(j - 1) + F(j));
    }
  }
  for (std::size_t i = b; i-- > 0;) out[i] = out[i + 1] - h * f[b];
  for (std::size_t i = range.end; i < f.size(); ++i) out[i] = out[i - 1] + h * f[range.end - 1];
  return out;
}

}  // namespace frenet::fd
