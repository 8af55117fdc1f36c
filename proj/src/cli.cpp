#include "frenet/cli.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>

#include "frenet/curve_io.hpp"
#include "frenet/error.hpp"
#include "frenet/example1.hpp"
#include "frenet/integrator.hpp"
#include "frenet/op_trace.hpp"
#include "frenet/report.hpp"

namespace frenet {
namespace {

constexpr double kDefaultS0 = 0.2;
const double kDefaultS1 = std::numbers::pi - 0.2;

// Files are written only after the whole computation succeeded; if any write
// fails the ones already written are removed again.
class Outputs {
 public:
  void add(std::string path, std::string content) { files_.emplace_back(std::move(path), std::move(content)); }

  void commit() {
    std::vector<std::string> written;
    try {
      for (const auto& [path, content] : files_) {
        written.push_back(path);
        std::ofstream f(path, std::ios::binary | std::ios::trunc);
        if (!f) throw Error(ErrorCode::IoError, "cannot open '" + path + "' for writing");
        f << content;
        f.flush();
        if (!f) throw Error(ErrorCode::IoError, "failed writing '" + path + "'");
      }
    } catch (...) {
      for (const auto& p : written) {
        std::error_code ec;
        std::filesystem::remove(p, ec);
      }
      throw;
    }
  }

 private:
  std::vector<std::pair<std::string, std::string>> files_;
};

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

std::ifstream open_input(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorCode::IoError, "cannot open '" + path + "'");
  return f;
}

CurvatureProfile load_profile(const RunConfig& cfg) {
  if (!cfg.profile_table.empty()) {
    auto f = open_input(cfg.profile_table);
    return read_profile_table(f);
  }
  if (cfg.kappa.empty() || cfg.tau.empty()) {
    throw Error(ErrorCode::InvalidArgument, "a profile needs --kappa and --tau, or --profile-table");
  }
  return parse_profile(cfg.kappa, cfg.tau, cfg.s0.value_or(kDefaultS0), cfg.s1.value_or(kDefaultS1));
}

FramedCurve reconstruct(const RunConfig& cfg, const CurvatureProfile& profile) {
  const double s0 = cfg.s0.value_or(profile.s_min());
  const double s1 = cfg.s1.value_or(profile.s_max());
  return integrate_frenet(profile, {}, FrenetFrame{}, s0, s1, cfg.step, cfg.tols.kappa_floor);
}

/// The main curve of a tower/classify run: a curve CSV (framed, or points to
/// be estimated) or a profile to integrate.
FramedCurve load_main_curve(const RunConfig& cfg) {
  if (!cfg.in.empty()) {
    auto f = open_input(cfg.in);
    CsvCurve csv = read_curve_csv(f, cfg.tols.kappa_floor);
    if (csv.framed) return std::move(csv.curve);
    return estimate_frame_curvatures(csv.points, cfg.closed, cfg.tols.kappa_floor);
  }
  return reconstruct(cfg, load_profile(cfg));
}

TowerOptions tower_options(const RunConfig& cfg) {
  TowerOptions t;
  t.kappa_floor = cfg.tols.kappa_floor;
  return t;
}

std::string curve_text(const FramedCurve& c, Format format) {
  if (format == Format::Csv) {
    std::ostringstream os;
    write_curve_csv(os, c);
    return os.str();
  }
  Json j;
  j["grid"] = {{"start", c.grid.start}, {"step", c.grid.step}, {"count", c.grid.count}};
  Json pts = Json::array();
  for (const Vec3& p : c.points) pts.push_back(to_json(p));
  j["points"] = pts;
  j["kappa"] = c.kappa;
  j["tau"] = c.tau;
  j["sigma"] = c.sigma;
  j["frame_drift"] = max_frame_drift(c);
  j["invariant_violations"] = invariant_violations(c);
  return dump(j);
}

void emit(Outputs& files, std::ostream& out, const std::string& path, std::string text) {
  if (path.empty()) {
    out << text;
  } else {
    files.add(path, std::move(text));
  }
}

ClassificationReport classify(const RunConfig& cfg, const FramedCurve& main) {
  ClassificationReport basic = classify_basic(main, cfg.tols);
  if (basic.has(Label::Line) || basic.has(Label::Planar)) return basic;

  const DirectionTower tower = build_tower(main, cfg.depth, tower_options(cfg));
  ClassificationReport rep;
  try {
    rep = detect_nk_constant_precession(tower, cfg.tols);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::NkSlantOnly) throw;
    rep = detect_nk_slant(tower, cfg.tols);
    rep.warnings.push_back(std::string("NK_SLANT_ONLY: ") + e.what());
  }
  if (rep.nk_level == 0) {
    // Level 0 is the main curve itself; keep its classical labels too.
    rep.labels.insert(basic.labels.begin(), basic.labels.end());
    if (basic.ratio) rep.ratio = basic.ratio;
  }
  return rep;
}

std::string example1_text(const example1::Result& r, Format format, bool color) {
  if (format == Format::Json) {
    Json rows = Json::array();
    for (const auto& row : r.rows) {
      rows.push_back({{"name", row.name},
                      {"expected", row.expected},
                      {"observed", row.observed},
                      {"error", row.error},
                      {"tolerance", row.tolerance},
                      {"pass", row.pass}});
    }
    Json j;
    j["passed"] = r.passed();
    j["rows"] = rows;
    j["warnings"] = r.warnings;
    j["report"] = to_json(r.report);
    return dump(j);
  }
  std::ostringstream os;
  const char* green = color ? "\x1b[32m" : "";
  const char* red = color ? "\x1b[31m" : "";
  const char* reset = color ? "\x1b[0m" : "";
  os << "status  row                          observed      error         tolerance     expected\n";
  for (const auto& row : r.rows) {
    char observed[32] = "-";
    if (!std::isnan(row.observed)) std::snprintf(observed, sizeof observed, "%.8g", row.observed);
    char line[256];
    std::snprintf(line, sizeof line, "%-28s %-13s %-13.6g %-13.6g %s", row.name.c_str(), observed,
                  row.error, row.tolerance, row.expected.c_str());
    os << (row.pass ? green : red) << (row.pass ? "PASS" : "FAIL") << reset << "    " << line << "\n";
  }
  for (const auto& w : r.warnings) os << "warning: " << w << "\n";
  os << (r.passed() ? "example1: all rows pass\n" : "example1: FAILED\n");
  return os.str();
}

int dispatch(const RunConfig& cfg, std::ostream& out, Outputs& files) {
  switch (cfg.command) {
    case Command::Reconstruct: {
      const FramedCurve c = reconstruct(cfg, load_profile(cfg));
      emit(files, out, cfg.out, curve_text(c, cfg.format));
      return 0;
    }
    case Command::Generate: {
      // Default domain keeps mu s + phase inside (0.2, pi - 0.2), where kappa > 0.
      const double a = (0.2 - cfg.phase) / cfg.mu;
      const double b = (std::numbers::pi - 0.2 - cfg.phase) / cfg.mu;
      const double s0 = cfg.s0.value_or(std::min(a, b));
      const double s1 = cfg.s1.value_or(std::max(a, b));
      const CurvatureProfile p = generate_precession_profile(cfg.omega, cfg.mu, cfg.phase, s0, s1);
      const FramedCurve c = integrate_frenet(p, {}, FrenetFrame{}, s0, s1, cfg.step, cfg.tols.kappa_floor);
      emit(files, out, cfg.out, curve_text(c, cfg.format));
      return 0;
    }
    case Command::Analyze: {
      if (cfg.in.empty()) throw Error(ErrorCode::InvalidArgument, "analyze needs --in");
      auto f = open_input(cfg.in);
      const CsvCurve csv = read_curve_csv(f, cfg.tols.kappa_floor);
      const FramedCurve c = estimate_frame_curvatures(csv.points, cfg.closed, cfg.tols.kappa_floor);
      const std::string report = dump(to_json(classify_basic(c, cfg.tols)));
      if (cfg.format == Format::Json) {
        emit(files, out, cfg.out, report);
      } else {
        emit(files, out, cfg.out, curve_text(c, Format::Csv));
      }
      if (!cfg.report.empty()) files.add(cfg.report, report);
      return 0;
    }
    case Command::Tower: {
      const DirectionTower tower = build_tower(load_main_curve(cfg), cfg.depth, tower_options(cfg));
      const std::string report = dump(to_json(tower));
      if (cfg.format_given && cfg.format == Format::Csv) {
        if (cfg.out.empty()) throw Error(ErrorCode::InvalidArgument, "tower --format csv needs --out PREFIX");
        for (const TowerLevel& level : tower.levels) {
          files.add(cfg.out + "_level" + std::to_string(level.k) + ".csv", curve_text(level.curve, Format::Csv));
        }
        emit(files, out, cfg.report, report);
      } else {
        emit(files, out, cfg.out, report);
      }
      return 0;
    }
    case Command::Classify: {
      const ClassificationReport rep = classify(cfg, load_main_curve(cfg));
      if (cfg.format_given && cfg.format == Format::Csv) {
        std::ostringstream os;
        os << "k,qualifies,sigma_mean,sigma_spread,theta,ux,uy,uz\n";
        for (const LevelSlant& ls : rep.levels) {
          os << ls.k << ',' << (ls.qualifies ? 1 : 0) << ',' << format_number(ls.sigma_test.mean) << ','
             << format_number(ls.sigma_test.spread) << ',';
          if (ls.theta && ls.axis) {
            os << format_number(*ls.theta) << ',' << format_number(ls.axis->x) << ','
               << format_number(ls.axis->y) << ',' << format_number(ls.axis->z) << '\n';
          } else {
            os << ",,,\n";
          }
        }
        emit(files, out, cfg.out, os.str());
      } else {
        emit(files, out, cfg.out, dump(to_json(rep)));
      }
      return 0;
    }
    case Command::Example1: {
      example1::Options opt;
      opt.h = cfg.step;
      opt.depth = std::max(cfg.depth, 2);
      opt.tols = cfg.tols;
      const example1::Result r = example1::run(opt);
      const Format fmt = cfg.format_given ? cfg.format : Format::Csv;
      emit(files, out, cfg.out, example1_text(r, fmt, cfg.color && cfg.out.empty()));
      return r.passed() ? 0 : 1;
    }
  }
  return 2;
}

}  // namespace

CurvatureProfile parse_profile(std::string_view kappa_src, std::string_view tau_src, double s_min,
                               double s_max) {
  trace::note(trace::Op::ParseProfile);
  if (kappa_src.empty() || tau_src.empty()) {
    throw Error(ErrorCode::InvalidArgument, "empty curvature expression");
  }
  return CurvatureProfile::analytic(Expression::parse(kappa_src), Expression::parse(tau_src), s_min, s_max);
}

void validate(const RunConfig& cfg) {
  const double s0 = cfg.s0.value_or(kDefaultS0);
  const double s1 = cfg.s1.value_or(kDefaultS1);
  if ((cfg.s0 || cfg.s1) && !(s1 > s0)) throw Error(ErrorCode::InvalidArgument, "need s1 > s0");
  if (!(cfg.step > 0.0) || !std::isfinite(cfg.step)) throw Error(ErrorCode::InvalidArgument, "need step > 0");
  if (cfg.depth < 0) throw Error(ErrorCode::InvalidArgument, "need depth >= 0");
  if (!(cfg.tols.rel_tol >= 0.0) || !(cfg.tols.abs_floor >= 0.0) || !(cfg.tols.kappa_floor >= 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "tolerances must be non-negative");
  }
}

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  trace::note(trace::Op::Run);
  std::ostringstream buffered;
  try {
    validate(cfg);
    Outputs files;
    const int status = dispatch(cfg, buffered, files);
    files.commit();
    out << buffered.str();
    return status;
  } catch (const Error& e) {
    out << dump(error_json(e));
    err << "error: " << to_string(e.code()) << ": " << e.what() << "\n";
  } catch (const std::exception& e) {
    out << dump(error_json("INTERNAL", e.what()));
    err << "error: " << e.what() << "\n";
  }
  return 1;
}

}  // namespace frenet
