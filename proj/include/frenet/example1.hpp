#pragma once

// Golden pipeline for the curve with kappa = sin s cos(sin s),
// tau = sin s sin(sin s) on [0.2, pi - 0.2], whose first principal direction
// curve is a curve of constant precession and whose second is a circular
// helix. Closed forms for gamma_1 and its frame are printed with one sign
// misprint (the third component of N_1); the pipeline reports it.

#include <string>
#include <vector>

#include "frenet/classifier.hpp"
#include "frenet/tower.hpp"

namespace frenet::example1 {

inline constexpr const char* kKappa = "sin(s)*cos(sin(s))";
inline constexpr const char* kTau = "sin(s)*sin(sin(s))";
inline constexpr double kStart = 0.2;
double end();  // pi - 0.2

// Printed closed forms (level 1 and level 2).
Vec3 gamma1(double s);
Vec3 tangent1(double s);
Vec3 normal1_printed(double s);  // third component +1/sqrt(2) as printed
Vec3 binormal1(double s);
Vec3 darboux1(double s);
Vec3 gamma2_printed(double s);

/// N_1 = T_1' / kappa_1 differentiated from tangent1: third component -1/sqrt(2).
Vec3 normal1(double s);

/// Main-curve frame at s whose level-1 frame equals (tangent1, normal1, T_1 x N_1).
FrenetFrame main_frame(double s);

struct Row {
  std::string name;
  std::string expected;
  double observed = 0.0;
  double error = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

struct Options {
  double h = 1e-3;
  int depth = 2;
  Tolerances tols;
};

struct Result {
  std::vector<Row> rows;
  std::vector<std::string> warnings;
  DirectionTower tower;
  ClassificationReport report;

  bool passed() const;
};

Result run(const Options& options = {});

}  // namespace frenet::example1
