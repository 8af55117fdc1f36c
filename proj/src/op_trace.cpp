#include "frenet/op_trace.hpp"

#include <atomic>

namespace frenet::trace {
namespace {

std::array<std::atomic<std::uint64_t>, kOpCount> g_counts{};

constexpr std::array<std::string_view, kOpCount> kNames = {
    "darboux_vector",
    "geodesic_curvature",
    "helix_axis_tangent",
    "slant_axis",
    "orthonormalize",
    "integrate_frenet",
    "taylor_local",
    "estimate_frame_curvatures",
    "arclength_reparametrize",
    "principal_direction_step",
    "build_tower",
    "tangent_indicatrix_ratio",
    "constancy",
    "classify_basic",
    "detect_nk_slant",
    "detect_nk_constant_precession",
    "generate_precession_profile",
    "parse_profile",
    "run",
};

}  // namespace

std::string_view name(Op op) { return kNames[static_cast<std::size_t>(op)]; }

void note(Op op) noexcept {
  g_counts[static_cast<std::size_t>(op)].fetch_add(1, std::memory_order_relaxed);
}

std::uint64_t count(Op op) noexcept {
  return g_counts[static_cast<std::size_t>(op)].load(std::memory_order_relaxed);
}

void reset() noexcept {
  for (auto& c : g_counts) c.store(0, std::memory_order_relaxed);
}

}  // namespace frenet::trace
