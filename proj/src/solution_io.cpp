#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "pess/solution_io.hpp"

namespace pess {

namespace {

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

std::string format_solution(const Solution& s) {
  std::string out;
  out += std::to_string(s.layout.sphere_count());
  out += ' ';
  out += fmt17(s.radius);
  out += '\n';
  for (std::size_t i = 0; i < s.layout.sphere_count(); ++i) {
    const Point3 c = s.layout.center(i);
    out += fmt17(c[0]);
    out += ' ';
    out += fmt17(c[1]);
    out += ' ';
    out += fmt17(c[2]);
    out += '\n';
  }
  return out;
}

void write_solution(const std::string& path, const Solution& s) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open for writing: " + path);
  f << format_solution(s);
}

Solution read_solution(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open: " + path);

  std::string line;
  int lineno = 0;

  if (!std::getline(f, line)) throw ParseError("empty file", 1);
  ++lineno;
  long n = 0;
  double radius = 0.0;
  {
    std::istringstream ss(line);
    if (!(ss >> n >> radius)) throw ParseError("expected \"n R\"", lineno);
    if (n < 1) throw ParseError("sphere count must be positive", lineno);
    if (!(radius > 0.0) || !std::isfinite(radius))
      throw ParseError("radius must be a positive finite real", lineno);
  }

  Solution s;
  s.radius = radius;
  s.layout = Layout(static_cast<std::size_t>(n));
  for (long i = 0; i < n; ++i) {
    if (!std::getline(f, line))
      throw ParseError("unexpected end of file", lineno + 1);
    ++lineno;
    std::istringstream ss(line);
    double x, y, z;
    if (!(ss >> x >> y >> z)) throw ParseError("expected \"x y z\"", lineno);
    if (!std::isfinite(x) || !std::isfinite(y) || !std::isfinite(z))
      throw ParseError("non-finite coordinate", lineno);
    s.layout.set_center(static_cast<std::size_t>(i), {x, y, z});
  }
  return s;
}

std::map<std::size_t, double> read_records(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open: " + path);

  std::map<std::size_t, double> records;
  std::string line;
  int lineno = 0;
  while (std::getline(f, line)) {
    ++lineno;
    if (line.empty()) continue;
    if (lineno == 1 && line.rfind("n,", 0) == 0) continue;  // header
    std::istringstream ss(line);
    long n;
    char comma;
    double radius;
    if (!(ss >> n >> comma >> radius) || comma != ',')
      throw ParseError("expected \"n,radius\"", lineno);
    if (n < 1 || !(radius > 0.0))
      throw ParseError("invalid record", lineno);
    records[static_cast<std::size_t>(n)] = radius;
  }
  return records;
}

}  // namespace pess
