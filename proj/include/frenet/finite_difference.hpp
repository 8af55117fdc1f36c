#pragma once

// Finite-difference differentiation and cumulative quadrature on uniform grids.

#include <span>
#include <vector>

#include "frenet/framed_curve.hpp"
#include "frenet/vec3.hpp"

namespace frenet::fd {

/// Fornberg weights for the `order`-th derivative at x0 using arbitrary nodes.
std::vector<double> fornberg_weights(double x0, std::span<const double> nodes, int order);

/// order-th derivative (1..3) by 5-point stencils restricted to `range`:
/// central where possible, shifted one-sided windows near the range ends.
/// Entries outside `range` are zero. Requires range.size() >= 5.
std::vector<double> derivative(std::span<const double> f, double h, int order, IndexRange range);
std::vector<Vec3> derivative(std::span<const Vec3> f, double h, int order, IndexRange range);

/// Central 5-point derivative with wrap-around indexing.
std::vector<Vec3> derivative_periodic(std::span<const Vec3> f, double h, int order);

/// Cumulative integral of f over `range` with value zero at range.begin;
/// composite Simpson at even offsets, Simpson 3/8 closing the odd ones.
/// Outside the range the integral is continued with the clamped integrand.
std::vector<Vec3> cumulative_integral(std::span<const Vec3> f, double h, IndexRange range);

}  // namespace frenet::fd
