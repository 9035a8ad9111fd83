#include "torharm/io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "torharm/errors.hpp"

namespace torharm {

namespace {

constexpr const char* kMagic = "# torharm-grid v1";

[[noreturn]] void bad(const std::string& what, long line) {
  throw Error(ErrorKind::InvalidArgument, "grid file line " + std::to_string(line) + ": " + what);
}

double parse_double(const std::string& s, long line) {
  // strtod, unlike stod, accepts subnormals and the nan/inf spellings
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size()) bad("not a number: '" + s + "'", line);
  return v;
}

}  // namespace

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  std::string s(buf);
  if (s.find_first_of(".eEna") == std::string::npos) s += ".0";
  return s;
}

CellFlag parse_flag(std::string_view s) {
  for (CellFlag f : {CellFlag::Ok, CellFlag::Slow, CellFlag::Diverged, CellFlag::Inside, CellFlag::Singular}) {
    if (s == to_string(f)) return f;
  }
  throw Error(ErrorKind::InvalidArgument, "unknown cell flag '" + std::string(s) + "'");
}

void write_grid(std::ostream& os, const FieldGrid& grid) {
  const GridSpec& g = grid.spec;
  os << kMagic << '\n';
  os << "# " << format_number(g.rho_min) << ' ' << format_number(g.rho_max) << ' ' << g.n_rho << ' '
     << format_number(g.z_min) << ' ' << format_number(g.z_max) << ' ' << g.n_z << ' ' << format_number(grid.a)
     << '\n';
  for (int j = 0; j < g.n_z; ++j) {
    const std::string z = format_number(g.z(j));
    for (int i = 0; i < g.n_rho; ++i) {
      const std::size_t c = grid.index(i, j);
      os << format_number(g.rho(i)) << ',' << z << ',' << format_number(grid.values[c]) << ','
         << to_string(grid.flags[c]) << '\n';
    }
  }
  if (!os) throw Error(ErrorKind::InvalidArgument, "failed writing grid");
}

void write_grid(const std::string& path, const FieldGrid& grid) {
  std::ofstream f(path);
  if (!f) throw Error(ErrorKind::InvalidArgument, "cannot open " + path + " for writing");
  write_grid(f, grid);
}

FieldGrid read_grid(std::istream& is) {
  std::string line;
  long no = 0;
  auto next = [&]() -> bool {
    if (!std::getline(is, line)) return false;
    ++no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return true;
  };

  if (!next() || line != kMagic) bad("missing header '" + std::string(kMagic) + "'", no);
  if (!next() || line.rfind("# ", 0) != 0) bad("missing grid parameters", no);

  FieldGrid grid;
  {
    std::istringstream ps(line.substr(2));
    std::string tok[7];
    for (auto& t : tok) {
      if (!(ps >> t)) bad("expected 7 grid parameters", no);
    }
    std::string extra;
    if (ps >> extra) bad("expected 7 grid parameters", no);
    GridSpec& g = grid.spec;
    g.rho_min = parse_double(tok[0], no);
    g.rho_max = parse_double(tok[1], no);
    g.n_rho = static_cast<int>(parse_double(tok[2], no));
    g.z_min = parse_double(tok[3], no);
    g.z_max = parse_double(tok[4], no);
    g.n_z = static_cast<int>(parse_double(tok[5], no));
    grid.a = parse_double(tok[6], no);
    if (g.n_rho < 1 || g.n_z < 1) bad("grid dimensions must be positive", no);
  }

  const std::size_t cells = static_cast<std::size_t>(grid.spec.n_rho) * grid.spec.n_z;
  grid.values.reserve(cells);
  grid.flags.reserve(cells);
  while (next()) {
    if (line.empty()) continue;
    std::string f[4];
    std::istringstream rs(line);
    for (int k = 0; k < 4; ++k) {
      if (!std::getline(rs, f[k], k < 3 ? ',' : '\n')) bad("expected rho,z,value,flag", no);
    }
    if (f[3].find(',') != std::string::npos) bad("expected rho,z,value,flag", no);
    const std::size_t c = grid.values.size();
    if (c >= cells) bad("more rows than the header declares", no);
    const int i = static_cast<int>(c % grid.spec.n_rho), j = static_cast<int>(c / grid.spec.n_rho);
    const double rho = parse_double(f[0], no), z = parse_double(f[1], no);
    const double tol = 1e-12 * (1.0 + std::fabs(rho) + std::fabs(z));
    if (std::fabs(rho - grid.spec.rho(i)) > tol || std::fabs(z - grid.spec.z(j)) > tol) {
      bad("row coordinates do not match the declared grid", no);
    }
    grid.values.push_back(parse_double(f[2], no));
    try {
      grid.flags.push_back(parse_flag(f[3]));
    } catch (const Error&) {
      bad("unknown flag '" + f[3] + "'", no);
    }
  }
  if (grid.values.size() != cells) bad("fewer rows than the header declares", no);
  return grid;
}

FieldGrid read_grid(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw Error(ErrorKind::InvalidArgument, "cannot open " + path);
  return read_grid(f);
}

}  // namespace torharm
