#include "frenet/curve_io.hpp"

#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

#include "frenet/error.hpp"
#include "frenet/finite_difference.hpp"

namespace frenet {
namespace {

constexpr std::string_view kPointsHeader = "s,x,y,z";
constexpr std::string_view kFramedHeader =
    "s,x,y,z,tx,ty,tz,nx,ny,nz,bx,by,bz,kappa,tau,sigma";

[[noreturn]] void fail(const std::string& what, std::size_t line) {
  throw Error(ErrorCode::IoError, "line " + std::to_string(line) + ": " + what);
}

std::vector<double> parse_row(std::string_view row, std::size_t line) {
  std::vector<double> out;
  const char* p = row.data();
  const char* end = p + row.size();
  while (true) {
    double v = 0.0;
    auto [next, ec] = std::from_chars(p, end, v);
    if (ec != std::errc{}) fail("malformed number", line);
    out.push_back(v);
    p = next;
    if (p == end) break;
    if (*p != ',') fail("expected ','", line);
    ++p;
  }
  return out;
}

std::vector<std::vector<double>> read_rows(std::istream& in, std::string_view& header_out,
                                           std::string& header_buf) {
  if (!std::getline(in, header_buf)) throw Error(ErrorCode::IoError, "empty CSV input");
  if (!header_buf.empty() && header_buf.back() == '\r') header_buf.pop_back();
  if (header_buf.starts_with("\xEF\xBB\xBF")) header_buf.erase(0, 3);
  header_out = header_buf;
  std::vector<std::vector<double>> rows;
  std::string line;
  std::size_t no = 1;
  while (std::getline(in, line)) {
    ++no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    rows.push_back(parse_row(line, no));
  }
  return rows;
}

// The grid step is recovered from the first and last s; nudge it by a few
// ulps so that start + i*step reproduces the file's s column exactly.
UniformGrid recover_grid(const std::vector<double>& s) {
  const std::size_t n = s.size();
  UniformGrid g{s.front(), (s.back() - s.front()) / static_cast<double>(n - 1), n};
  const double tol = 1e-6 * g.step;
  for (std::size_t i = 1; i < n; ++i) {
    if (!(s[i] > s[i - 1]) || std::fabs(s[i] - g.at(i)) > tol) {
      throw Error(ErrorCode::IoError, "s column is not a uniform increasing grid");
    }
  }
  auto exact = [&](const UniformGrid& cand) {
    for (std::size_t i = 0; i < n; ++i) {
      if (cand.at(i) != s[i]) return false;
    }
    return true;
  };
  if (exact(g)) return g;
  UniformGrid up = g, down = g;
  for (int k = 0; k < 8; ++k) {
    up.step = std::nextafter(up.step, INFINITY);
    down.step = std::nextafter(down.step, -INFINITY);
    if (exact(up)) return up;
    if (exact(down)) return down;
  }
  return g;
}

}  // namespace

std::string format_number(double v) {
  if (v == 0.0) v = 0.0;  // no "-0"
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  (void)ec;
  return {buf, end};
}

void write_points_csv(std::ostream& out, const UniformGrid& grid, const std::vector<Vec3>& points) {
  std::string buf;
  buf.append(kPointsHeader).push_back('\n');
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (double v : {grid.at(i), points[i].x, points[i].y, points[i].z}) {
      buf += format_number(v);
      buf.push_back(',');
    }
    buf.back() = '\n';
  }
  out << buf;
}

void write_curve_csv(std::ostream& out, const FramedCurve& c) {
  std::string buf;
  buf.append(kFramedHeader).push_back('\n');
  for (std::size_t i = 0; i < c.size(); ++i) {
    const FrenetFrame& f = c.frames[i];
    const double row[] = {c.s(i),    c.points[i].x, c.points[i].y, c.points[i].z,
                          f.T.x,     f.T.y,         f.T.z,         f.N.x,
                          f.N.y,     f.N.z,         f.B.x,         f.B.y,
                          f.B.z,     c.kappa[i],    c.tau[i],      c.sigma[i]};
    for (double v : row) {
      buf += format_number(v);
      buf.push_back(',');
    }
    buf.back() = '\n';
  }
  out << buf;
}

CsvCurve read_curve_csv(std::istream& in, double kappa_floor) {
  std::string header_buf;
  std::string_view header;
  const auto rows = read_rows(in, header, header_buf);
  CsvCurve out;
  std::size_t width = 0;
  if (header == kPointsHeader) {
    width = 4;
  } else if (header == kFramedHeader) {
    width = 16;
    out.framed = true;
  } else {
    throw Error(ErrorCode::IoError, "unrecognised CSV header '" + header_buf + "'");
  }
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != width) fail("expected " + std::to_string(width) + " columns", i + 2);
    for (double v : rows[i]) {
      if (!std::isfinite(v)) fail("non-finite value", i + 2);
    }
    out.s.push_back(rows[i][0]);
    out.points.push_back({rows[i][1], rows[i][2], rows[i][3]});
  }
  if (!out.framed) return out;
  if (rows.size() < 2) throw Error(ErrorCode::InsufficientSamples, "framed CSV needs at least 2 rows");

  FramedCurve& c = out.curve;
  const std::size_t n = rows.size();
  c.grid = recover_grid(out.s);
  c.points = out.points;
  c.frames.resize(n);
  c.kappa.resize(n);
  c.tau.resize(n);
  c.sigma.resize(n);
  c.degenerate.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& r = rows[i];
    c.frames[i] = {{r[4], r[5], r[6]}, {r[7], r[8], r[9]}, {r[10], r[11], r[12]}};
    c.kappa[i] = r[13];
    c.tau[i] = r[14];
    c.sigma[i] = r[15];
    c.degenerate[i] = r[13] < kappa_floor ? 1 : 0;
  }
  c.valid = {0, n};
  if (n >= 5) {
    c.dkappa = fd::derivative(c.kappa, c.grid.step, 1, c.valid);
    c.dtau = fd::derivative(c.tau, c.grid.step, 1, c.valid);
  } else {
    c.dkappa.assign(n, 0.0);
    c.dtau.assign(n, 0.0);
  }
  return out;
}

CurvatureProfile read_profile_table(std::istream& in) {
  std::string header_buf;
  std::string_view header;
  const auto rows = read_rows(in, header, header_buf);
  if (header != "s,kappa,tau") {
    throw Error(ErrorCode::IoError, "profile table header must be 's,kappa,tau'");
  }
  std::vector<double> s, kappa, tau;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != 3) fail("expected 3 columns", i + 2);
    s.push_back(rows[i][0]);
    kappa.push_back(rows[i][1]);
    tau.push_back(rows[i][2]);
  }
  return CurvatureProfile::table(std::move(s), std::move(kappa), std::move(tau));
}

}  // namespace frenet
