#include "frenet/report.hpp"

#include <cmath>

namespace frenet {
namespace {

Json optional_number(const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); }
Json optional_vec(const std::optional<Vec3>& v) { return v ? to_json(*v) : Json(nullptr); }

Json range_json(std::span<const double> values, IndexRange r) {
  if (r.size() == 0) return nullptr;
  double lo = values[r.begin], hi = lo;
  for (std::size_t i = r.begin; i < r.end; ++i) {
    lo = std::min(lo, values[i]);
    hi = std::max(hi, values[i]);
  }
  return {{"min", lo}, {"max", hi}};
}

}  // namespace

Json to_json(const Vec3& v) { return Json::array({v.x, v.y, v.z}); }

Json to_json(const ConstancyTest& t) {
  return {{"name", t.name},
          {"mean", t.mean},
          {"spread", t.spread},
          {"tol", t.tolerance()},
          {"verdict", t.verdict}};
}

Json to_json(const ClassificationReport& r) {
  Json j;
  Json labels = Json::array();
  for (Label l : r.labels) labels.push_back(std::string(to_string(l)));
  j["labels"] = labels;
  j["nk_level"] = r.nk_level ? Json(*r.nk_level) : Json(nullptr);
  j["theta"] = optional_number(r.theta);
  j["axis"] = optional_vec(r.axis);
  j["omega"] = optional_number(r.omega);
  j["mu"] = optional_number(r.mu);
  Json tests = Json::array();
  for (const auto& t : r.tests) tests.push_back(to_json(t));
  j["tests"] = tests;
  j["valid_interval"] =
      r.valid_interval ? Json::array({r.valid_interval->first, r.valid_interval->second}) : Json(nullptr);
  j["warnings"] = r.warnings;

  j["frequency"] = optional_number(r.frequency);
  j["phase"] = optional_number(r.phase);
  j["radius"] = optional_number(r.radius);
  j["ratio"] = optional_number(r.ratio);
  j["precession_axis"] = optional_vec(r.precession_axis);
  Json levels = Json::array();
  for (const LevelSlant& ls : r.levels) {
    Json checks = Json::array();
    for (const auto& t : ls.checks) checks.push_back(to_json(t));
    levels.push_back({{"k", ls.k},
                      {"qualifies", ls.qualifies},
                      {"sigma", to_json(ls.sigma_test)},
                      {"implied_by_helix", ls.implied_by_helix},
                      {"theta", optional_number(ls.theta)},
                      {"axis", optional_vec(ls.axis)},
                      {"component_residual", optional_number(ls.component_residual)},
                      {"printed_component_residual", optional_number(ls.printed_component_residual)},
                      {"checks", checks}});
  }
  j["levels"] = levels;
  j["metadata"] = {{"tool", "frenet-tower"}, {"format", 1}};
  return j;
}

Json to_json(const DirectionTower& tower) {
  Json j;
  j["requested_depth"] = tower.requested_depth;
  j["built_depth"] = static_cast<int>(tower.levels.size()) - 1;
  j["stop_reason"] = tower.stop_reason ? Json(*tower.stop_reason) : Json(nullptr);
  j["warnings"] = tower.warnings;
  const UniformGrid& g = tower.grid();
  j["grid"] = {{"start", g.start}, {"step", g.step}, {"count", g.count}};
  Json levels = Json::array();
  for (const TowerLevel& level : tower.levels) {
    const FramedCurve& c = level.curve;
    const IndexRange v = c.valid;
    Json l;
    l["k"] = level.k;
    l["valid_interval"] = v.size() ? Json::array({c.s(v.begin), c.s(v.end - 1)}) : Json(nullptr);
    const IndexRange inner = interior(v);
    l["kappa"] = range_json(c.kappa, inner);
    l["tau"] = range_json(c.tau, inner);
    l["sigma"] = range_json(c.sigma, inner);
    l["omega"] = range_json(level.omega, inner);
    const DarbouxResidual res = darboux_residual(level);
    l["darboux_residual"] = {{"T", res.t}, {"N", res.n}, {"B", res.b}};
    l["frame_drift"] = max_frame_drift(c);
    l["cross_check_error"] = optional_number(level.cross_check_error);
    levels.push_back(l);
  }
  j["levels"] = levels;
  j["metadata"] = {{"tool", "frenet-tower"}, {"format", 1}};
  return j;
}

Json error_json(const Error& e) {
  Json j = error_json(to_string(e.code()), e.what());
  if (e.s()) j["error"]["s"] = *e.s();
  if (e.column()) j["error"]["column"] = *e.column();
  return j;
}

Json error_json(std::string_view code, std::string_view message) {
  return {{"error", {{"code", code}, {"message", message}}}};
}

}  // namespace frenet
