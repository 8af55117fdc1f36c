#pragma once

// JSON documents emitted by the command-line tool.

#include <json.hpp>

#include "frenet/classifier.hpp"
#include "frenet/error.hpp"
#include "frenet/tower.hpp"

namespace frenet {

using Json = nlohmann::ordered_json;

Json to_json(const Vec3& v);
Json to_json(const ConstancyTest& test);

/// Top-level keys: labels, nk_level, theta, axis, omega, mu, tests,
/// valid_interval, warnings, then the extra fields and a `metadata` block
/// that carries no data and is ignored when comparing reports.
Json to_json(const ClassificationReport& report);

/// Per-level summary of a tower: valid interval, curvature ranges, sigma and
/// omega constancy, Darboux identity residuals and the cross-check error.
Json to_json(const DirectionTower& tower);

/// {"error": {"code": ..., "message": ..., "s"?: ..., "column"?: ...}}
Json error_json(const Error& error);
Json error_json(std::string_view code, std::string_view message);

}  // namespace frenet
