#include <unistd.h>

#include <CLI11.hpp>
#include <cstdlib>
#include <iostream>
#include <map>

#include "frenet/cli.hpp"

namespace {

void add_grid(CLI::App* app, frenet::RunConfig& cfg) {
  app->add_option("--s0", cfg.s0, "start of the arclength interval");
  app->add_option("--s1", cfg.s1, "end of the arclength interval");
  app->add_option("--step", cfg.step, "arclength step h")->capture_default_str();
}

void add_profile(CLI::App* app, frenet::RunConfig& cfg) {
  app->add_option("--kappa", cfg.kappa, "curvature expression in s");
  app->add_option("--tau", cfg.tau, "torsion expression in s");
  app->add_option("--profile-table", cfg.profile_table, "CSV with header s,kappa,tau");
}

void add_tolerances(CLI::App* app, frenet::RunConfig& cfg) {
  app->add_option("--rel-tol", cfg.tols.rel_tol, "relative constancy tolerance")->capture_default_str();
  app->add_option("--abs-floor", cfg.tols.abs_floor, "absolute constancy floor")->capture_default_str();
  app->add_option("--kappa-floor", cfg.tols.kappa_floor, "curvature below this is degenerate")
      ->capture_default_str();
}

void add_output(CLI::App* app, frenet::RunConfig& cfg) {
  static const std::map<std::string, frenet::Format> formats{{"csv", frenet::Format::Csv},
                                                            {"json", frenet::Format::Json}};
  app->add_option("--format", cfg.format, "csv or json")
      ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case))
      ->each([&cfg](const std::string&) { cfg.format_given = true; });
  app->add_option("--out", cfg.out, "output path (stdout when omitted)");
}

}  // namespace

int main(int argc, char** argv) {
  frenet::RunConfig cfg;
  CLI::App app{"Frenet frames, principal direction towers and helix classification"};
  app.require_subcommand(1);

  auto* reconstruct = app.add_subcommand("reconstruct", "integrate a curvature profile into a curve CSV");
  add_profile(reconstruct, cfg);
  add_grid(reconstruct, cfg);
  add_tolerances(reconstruct, cfg);
  add_output(reconstruct, cfg);

  auto* analyze = app.add_subcommand("analyze", "estimate frames and curvatures from sampled points");
  analyze->add_option("--in", cfg.in, "points CSV (s,x,y,z)")->required();
  analyze->add_flag("--closed", cfg.closed, "treat the samples as a closed curve");
  analyze->add_option("--report", cfg.report, "also write the classification report JSON here");
  add_tolerances(analyze, cfg);
  add_output(analyze, cfg);

  auto* tower = app.add_subcommand("tower", "build principal direction curves up to --depth");
  tower->add_option("--in", cfg.in, "curve CSV (framed or points only)");
  tower->add_flag("--closed", cfg.closed, "points input is a closed curve");
  tower->add_option("--depth", cfg.depth, "number of levels above the main curve")->capture_default_str();
  tower->add_option("--report", cfg.report, "tower report path when writing per-level CSVs");
  add_profile(tower, cfg);
  add_grid(tower, cfg);
  add_tolerances(tower, cfg);
  add_output(tower, cfg);

  auto* classify = app.add_subcommand("classify", "detect N_k-slant helices and constant precession");
  classify->add_option("--in", cfg.in, "curve CSV (framed or points only)");
  classify->add_flag("--closed", cfg.closed, "points input is a closed curve");
  classify->add_option("--depth", cfg.depth, "tower depth to search")->capture_default_str();
  add_profile(classify, cfg);
  add_grid(classify, cfg);
  add_tolerances(classify, cfg);
  add_output(classify, cfg);

  auto* generate = app.add_subcommand("generate", "curve with kappa = w sin(mu s + phi), tau = w cos(mu s + phi)");
  generate->add_option("--omega", cfg.omega, "Darboux speed w > 0")->capture_default_str();
  generate->add_option("--mu", cfg.mu, "precession rate, nonzero")->capture_default_str();
  generate->add_option("--phase", cfg.phase, "phase phi")->capture_default_str();
  add_grid(generate, cfg);
  add_tolerances(generate, cfg);
  add_output(generate, cfg);

  auto* example1 = app.add_subcommand("example1", "run the worked example and print a pass/fail table");
  example1->add_option("--step", cfg.step, "arclength step h")->capture_default_str();
  example1->add_option("--depth", cfg.depth, "tower depth (at least 2)")->capture_default_str();
  add_tolerances(example1, cfg);
  add_output(example1, cfg);

  CLI11_PARSE(app, argc, argv);

  const std::pair<CLI::App*, frenet::Command> commands[] = {
      {reconstruct, frenet::Command::Reconstruct}, {analyze, frenet::Command::Analyze},
      {tower, frenet::Command::Tower},             {classify, frenet::Command::Classify},
      {generate, frenet::Command::Generate},       {example1, frenet::Command::Example1}};
  for (const auto& [sub, command] : commands) {
    if (sub->parsed()) cfg.command = command;
  }
  if (cfg.command == frenet::Command::Tower || cfg.command == frenet::Command::Classify) {
    if (cfg.format_given == false) cfg.format = frenet::Format::Json;
  }
  cfg.color = isatty(STDOUT_FILENO) && std::getenv("FRENET_TOWER_NO_COLOR") == nullptr;
  return frenet::run(cfg, std::cout, std::cerr);
}
