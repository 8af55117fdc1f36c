#pragma once

// Per-operation call counters. The counters never influence results; they let
// the test suite confirm that the golden pipeline reaches every public
// operation.

#include <array>
#include <cstdint>
#include <string_view>

namespace frenet::trace {

enum class Op : std::size_t {
  DarbouxVector,
  GeodesicCurvature,
  HelixAxisTangent,
  SlantAxis,
  Orthonormalize,
  IntegrateFrenet,
  TaylorLocal,
  EstimateFrameCurvatures,
  ArclengthReparametrize,
  PrincipalDirectionStep,
  BuildTower,
  TangentIndicatrixRatio,
  Constancy,
  ClassifyBasic,
  DetectNkSlant,
  DetectNkConstantPrecession,
  GeneratePrecessionProfile,
  ParseProfile,
  Run,
  Count_,
};

inline constexpr std::size_t kOpCount = static_cast<std::size_t>(Op::Count_);

std::string_view name(Op op);
void note(Op op) noexcept;
std::uint64_t count(Op op) noexcept;
void reset() noexcept;

}  // namespace frenet::trace
