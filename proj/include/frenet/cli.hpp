#pragma once

// Orchestration behind the frenet-tower command-line tool.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>

#include "frenet/classifier.hpp"
#include "frenet/profile.hpp"

namespace frenet {

/// Parses both expressions into an ANALYTIC profile on [s_min, s_max].
CurvatureProfile parse_profile(std::string_view kappa_src, std::string_view tau_src, double s_min,
                               double s_max);

enum class Command { Reconstruct, Analyze, Tower, Classify, Generate, Example1 };
enum class Format { Csv, Json };

struct RunConfig {
  Command command = Command::Example1;

  // Inputs: a curve CSV, a profile table, or a pair of expressions.
  std::string in;
  std::string profile_table;
  std::string kappa;
  std::string tau;
  bool closed = false;

  // Outputs: stdout when empty. For `tower --format csv`, `out` is a prefix.
  std::string out;
  std::string report;
  Format format = Format::Csv;
  bool format_given = false;

  std::optional<double> s0;
  std::optional<double> s1;
  double step = 1e-3;
  int depth = 2;
  Tolerances tols;

  double omega = 1.0;
  double mu = 1.0;
  double phase = 0.0;

  std::uint64_t seed = 0;
  bool color = false;
};

/// Throws INVALID_ARGUMENT when the configuration breaks s1 > s0, step > 0
/// or depth >= 0.
void validate(const RunConfig& config);

/// Runs one subcommand. Results go to `out` or to files; failures are
/// reported as error JSON on `out`, partially written files are removed and
/// the return value is nonzero.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace frenet
