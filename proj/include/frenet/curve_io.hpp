#pragma once

// Curve CSV files.
//
//   s,x,y,z                                      points only
//   s,x,y,z,tx,ty,tz,nx,ny,nz,bx,by,bz,kappa,tau,sigma   framed curve
//
// Numbers use '.' as decimal separator and 17 significant digits; rows end
// with '\n'. Writing, reading back and writing again is byte-identical.

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "frenet/framed_curve.hpp"
#include "frenet/profile.hpp"

namespace frenet {

/// 17 significant digits, general notation, never "-0".
std::string format_number(double v);

void write_points_csv(std::ostream& out, const UniformGrid& grid, const std::vector<Vec3>& points);
void write_curve_csv(std::ostream& out, const FramedCurve& curve);

struct CsvCurve {
  bool framed = false;
  std::vector<double> s;
  std::vector<Vec3> points;
  FramedCurve curve;  // filled when framed
};

/// Reads either layout. For framed files kappa' and tau' are re-derived by
/// finite differences and the degenerate mask is rebuilt from kappa_floor.
/// Throws IO_ERROR on malformed input.
CsvCurve read_curve_csv(std::istream& in, double kappa_floor = kDefaultKappaFloor);

/// Header `s,kappa,tau`; rows become a TABLE profile.
CurvatureProfile read_profile_table(std::istream& in);

}  // namespace frenet
