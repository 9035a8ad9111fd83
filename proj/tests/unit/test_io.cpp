#include <doctest.h>

#include <bit>
#include <cmath>
#include <cstdlib>
#include <sstream>

#include "torharm/errors.hpp"
#include "torharm/io.hpp"

using namespace torharm;

namespace {

FieldGrid sample_grid() {
  FieldGrid g;
  g.spec.rho_min = 0.0;
  g.spec.rho_max = 1.5;
  g.spec.n_rho = 3;
  g.spec.z_min = -1.0;
  g.spec.z_max = 1.0;
  g.spec.n_z = 2;
  g.a = std::sqrt(0.75);
  g.values = {0.1, 1.0 / 3.0, std::nan(""), 2.0, -1e-300, 6.02e23};
  g.flags = {CellFlag::Ok, CellFlag::Slow, CellFlag::Diverged, CellFlag::Inside, CellFlag::Singular, CellFlag::Ok};
  return g;
}

std::size_t count_lines(const std::string& s) {
  std::size_t n = 0;
  for (char c : s) n += c == '\n';
  return n;
}

long error_line(const std::string& text) {
  std::istringstream is(text);
  try {
    read_grid(is);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::InvalidArgument);
    const std::string w = e.what();
    const auto at = w.find("line ");
    REQUIRE(at != std::string::npos);
    return std::stol(w.substr(at + 5));
  }
  FAIL("expected a parse error");
  return -1;
}

}  // namespace

TEST_CASE("number formatting keeps doubles recognisable and exact") {
  CHECK(format_number(0.0) == "0.0");
  CHECK(format_number(2.0) == "2.0");
  CHECK(format_number(-3.0) == "-3.0");
  CHECK(format_number(0.1) == "0.10000000000000001");
  CHECK(format_number(1e300) == "1.0000000000000001e+300");
  CHECK(format_number(std::nan("")) == "nan");
  CHECK(format_number(INFINITY) == "inf");
  for (double v : {1.0 / 3.0, std::sqrt(2.0), 6.02e23, -1e-300, 5e-324}) {
    CHECK(std::strtod(format_number(v).c_str(), nullptr) == v);
  }
}

TEST_CASE("grid files round-trip bit for bit") {
  const FieldGrid g = sample_grid();
  std::ostringstream os;
  write_grid(os, g);
  const std::string text = os.str();
  CHECK(text.rfind("# torharm-grid v1\n# 0.0 1.5 3 -1.0 1.0 2 0.8660254037844386", 0) == 0);
  CHECK(count_lines(text) == 2 + 6);

  std::istringstream is(text);
  const FieldGrid back = read_grid(is);
  CHECK(back.spec.n_rho == 3);
  CHECK(back.spec.n_z == 2);
  CHECK(back.a == g.a);
  REQUIRE(back.values.size() == g.values.size());
  for (std::size_t c = 0; c < g.values.size(); ++c) {
    if (std::isnan(g.values[c])) {
      CHECK(std::isnan(back.values[c]));
    } else {
      CHECK(std::bit_cast<std::uint64_t>(back.values[c]) == std::bit_cast<std::uint64_t>(g.values[c]));
    }
    CHECK(back.flags[c] == g.flags[c]);
  }
  std::ostringstream again;
  write_grid(again, back);
  CHECK(again.str() == text);
}

TEST_CASE("rows run over rho fastest") {
  std::ostringstream os;
  write_grid(os, sample_grid());
  std::istringstream is(os.str());
  std::string line;
  for (int k = 0; k < 2; ++k) std::getline(is, line);
  std::getline(is, line);
  CHECK(line == "0.0,-1.0,0.10000000000000001,OK");
  std::getline(is, line);
  CHECK(line == "0.75,-1.0,0.33333333333333331,SLOW");
  std::getline(is, line);
  CHECK(line == "1.5,-1.0,nan,DIV");
  std::getline(is, line);
  CHECK(line == "0.0,1.0,2.0,INSIDE");
}

TEST_CASE("a 2 by 2 grid has four rows") {
  FieldGrid g;
  g.spec.n_rho = 2;
  g.spec.n_z = 2;
  g.a = 1.0;
  g.values.assign(4, 1.0);
  g.flags.assign(4, CellFlag::Ok);
  std::ostringstream os;
  write_grid(os, g);
  CHECK(count_lines(os.str()) == 6);
}

TEST_CASE("malformed grid files report the offending line") {
  std::ostringstream os;
  write_grid(os, sample_grid());
  const std::string good = os.str();
  CHECK(error_line("# something else\n") == 1);
  CHECK(error_line("# torharm-grid v1\n# 0 1 2\n") == 2);
  auto replace_row = [&](int row, const std::string& with) {
    std::istringstream is(good);
    std::string out, line;
    for (int k = 1; std::getline(is, line); ++k) out += (k == row ? with : line) + "\n";
    return out;
  };
  CHECK(error_line(replace_row(4, "0.75,-1.0,0.3,MAYBE")) == 4);
  CHECK(error_line(replace_row(5, "1.5,-1.0,abc,OK")) == 5);
  CHECK(error_line(replace_row(3, "0.1,-1.0,0.3,OK")) == 3);
  CHECK(error_line(replace_row(6, "0.0,1.0,2.0")) == 6);
  CHECK(error_line(good.substr(0, good.rfind('\n', good.size() - 2) + 1)) == 7);
  CHECK(error_line(good + "0.0,2.0,1.0,OK\n") == 9);
}

TEST_CASE("flag names parse back") {
  for (CellFlag f : {CellFlag::Ok, CellFlag::Slow, CellFlag::Diverged, CellFlag::Inside, CellFlag::Singular}) {
    CHECK(parse_flag(to_string(f)) == f);
  }
  CHECK_THROWS_AS(parse_flag("ok"), Error);
}
