#include "cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include "torharm/coeffs.hpp"
#include "torharm/errors.hpp"
#include "torharm/expansions.hpp"
#include "torharm/greens.hpp"
#include "torharm/io.hpp"
#include "torharm/special.hpp"
#include "torharm/torus.hpp"

namespace torharm::cli {

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<double> parse_list(const std::string& text, std::size_t count, const char* what) {
  std::vector<double> v;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    char* end = nullptr;
    const double x = std::strtod(item.c_str(), &end);
    if (item.empty() || end != item.c_str() + item.size() || !std::isfinite(x)) {
      throw UsageError(std::string(what) + ": '" + item + "' is not a finite number");
    }
    v.push_back(x);
  }
  if (v.size() != count) {
    throw UsageError(std::string(what) + " needs " + std::to_string(count) + " comma-separated values");
  }
  return v;
}

CartesianPoint parse_point(const std::string& text, const char* what) {
  const auto v = parse_list(text, 3, what);
  return {v[0], v[1], v[2]};
}

int term_cap() {
  const char* env = std::getenv("TORHARM_MAX_TERMS");
  if (!env || !*env) return kDefaultTermCap;
  char* end = nullptr;
  const long v = std::strtol(env, &end, 10);
  if (*end != '\0' || v < 1 || v > 1'000'000) {
    throw UsageError("TORHARM_MAX_TERMS must be an integer in [1, 1000000]");
  }
  return static_cast<int>(v);
}

const char* flag_of(const EvalResult& r) { return to_string(r.status); }

// ---------------------------------------------------------------------------

struct EvalArgs {
  std::string family = "standard", kind = "ring", parity = "cos", point;
  int n = 0, m = 0, k_max = 0;
  double a = 1.0, tol = 0.0;  // 0: per-mode default
  bool via_spherical = false;
};

void add_eval(CLI::App& app, EvalArgs& e) {
  auto* c = app.add_subcommand("eval", "Evaluate one toroidal harmonic");
  c->add_option("--family", e.family, "standard | alt")->check(CLI::IsMember({"standard", "alt"}));
  c->add_option("--kind", e.kind, "ring | axial")->check(CLI::IsMember({"ring", "axial"}));
  c->add_option("--parity", e.parity, "cos | sin")->check(CLI::IsMember({"cos", "sin"}));
  c->add_option("-n", e.n, "toroidal order")->check(CLI::NonNegativeNumber);
  c->add_option("-m", e.m, "azimuthal order")->check(CLI::NonNegativeNumber);
  c->add_option("--point", e.point, "x,y,z")->required();
  c->add_option("--a", e.a, "focal ring radius")->check(CLI::PositiveNumber);
  c->add_option("--tol", e.tol, "relative tolerance (default 1e-15, 1e-12 with --via-spherical)")
      ->check(CLI::PositiveNumber);
  c->add_flag("--via-spherical", e.via_spherical, "sum the spherical-harmonic expansion instead");
  c->add_option("--kmax", e.k_max, "spherical truncation (default: automatic)")->check(CLI::NonNegativeNumber);
}

int run_eval(const EvalArgs& e, std::ostream& out) {
  HarmonicSpec spec;
  spec.family = e.family == "alt" ? Family::Alternate : Family::Standard;
  spec.kind = e.kind == "axial" ? Kind::Axial : Kind::Ring;
  spec.parity = e.parity == "sin" ? Parity::Sin : Parity::Cos;
  spec.n = e.n;
  spec.m = e.m;
  const CartesianPoint p = parse_point(e.point, "--point");
  // the spherical sum carries k_max roundings, so 1e-15 is out of its reach
  const double tol = e.tol > 0.0 ? e.tol : (e.via_spherical ? 1e-12 : 1e-15);

  EvalResult r;
  if (e.via_spherical) {
    int k_max = e.k_max;
    if (k_max == 0 && spec.kind == Kind::Ring) {
      const double rr = std::sqrt(p.x * p.x + p.y * p.y + p.z * p.z);
      const double q = rr < e.a ? rr / e.a : e.a / rr;
      k_max = spherical_truncation_estimate(q, e.n, e.m, 0.1 * tol, term_cap()).k_max;
    }
    r = harmonic_via_spherical(spec, p, e.a, k_max, tol);
  } else {
    r = harmonic_eval(spec, to_toroidal(p, e.a), e.a, tol);
  }
  out << format_number(r.value) << ' ' << format_number(r.est_error) << ' ' << r.terms_used << ' ' << flag_of(r)
      << '\n';
  return r.converged ? kOk : kNotConverged;
}

// ---------------------------------------------------------------------------

struct CoeffArgs {
  int m = 0, n_max = 0, k_max = 0;
  bool normalized = false;
  std::string out_path;
};

void add_coeffs(CLI::App& app, CoeffArgs& c) {
  auto* s = app.add_subcommand("coeffs", "Export the expansion coefficient table as JSON");
  s->add_option("-m", c.m, "azimuthal order")->required()->check(CLI::NonNegativeNumber);
  s->add_option("--n-max", c.n_max, "largest toroidal order")->required()->check(CLI::NonNegativeNumber);
  s->add_option("--k-max", c.k_max, "largest spherical degree")->required()->check(CLI::NonNegativeNumber);
  s->add_flag("--normalized", c.normalized, "include the normalized c and s tables");
  s->add_option("--out", c.out_path, "output path (default: standard output)");
}

int write_text(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return kOk;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f || !(f << text)) throw UsageError("cannot write " + path);
  return kOk;
}

int run_coeffs(const CoeffArgs& c, std::ostream& out) {
  const CoeffTable t = build_table(c.m, c.n_max, c.k_max);
  return write_text(c.out_path, coeffs_to_json(t, c.normalized, 2) + "\n", out);
}

// ---------------------------------------------------------------------------

struct GreenArgs {
  std::string p1, p2;
  double a = 1.0, tol = 1e-15;
  int n_max = 400, m_max = 400;
};

void add_green(CLI::App& app, GreenArgs& g) {
  auto* s = app.add_subcommand("green", "Compare the series forms of 1/|p1 - p2|");
  s->add_option("--p1", g.p1, "x,y,z")->required();
  s->add_option("--p2", g.p2, "x,y,z")->required();
  s->add_option("--a", g.a, "focal ring radius of the toroidal series")->check(CLI::PositiveNumber);
  s->add_option("--nmax", g.n_max, "cap on spherical degree and toroidal order")->check(CLI::NonNegativeNumber);
  s->add_option("--mmax", g.m_max, "cap on azimuthal order")->check(CLI::NonNegativeNumber);
  s->add_option("--tol", g.tol, "stopping tolerance")->check(CLI::PositiveNumber);
}

int run_green(const GreenArgs& g, std::ostream& out) {
  PointPair pp{parse_point(g.p1, "--p1"), parse_point(g.p2, "--p2"), g.a};
  const double direct = green_direct(pp);
  out << "direct " << format_number(direct) << '\n';

  double max_dev = 0.0;
  bool all_converged = true;
  auto report = [&](const char* name, auto&& eval) {
    std::optional<EvalResult> r;
    try {
      r = eval();
    } catch (const Error& e) {
      out << name << " n/a " << to_string(e.kind()) << '\n';
      return;
    }
    out << name << ' ' << format_number(r->value) << ' ' << flag_of(*r) << '\n';
    max_dev = std::max(max_dev, std::fabs(r->value - direct) / std::fabs(direct));
    all_converged = all_converged && r->converged;
  };
  report("spherical", [&] { return green_spherical(pp, g.n_max, g.tol); });
  report("toroidal", [&] { return green_toroidal(pp, g.n_max, g.m_max, g.tol); });
  report("cylindrical", [&] { return green_cylindrical(pp, g.m_max, g.tol); });
  out << "max_dev " << format_number(max_dev) << '\n';
  return max_dev > 1e-6 || !all_converged ? kNotConverged : kOk;
}

// ---------------------------------------------------------------------------

struct MapArgs {
  double R0 = 1.0, r0 = 0.5, V0 = 1.0;
  std::string grid = "200,200", extent = "2,2", what = "error", out_path;
  int n_max = 120, k_max = 170;
  unsigned threads = 0;
};

void add_map(CLI::App& app, MapArgs& m) {
  auto* s = app.add_subcommand("torus-map", "Potential or series error of a conducting torus on a grid");
  s->add_option("--R0", m.R0, "major radius");
  s->add_option("--r0", m.r0, "minor radius");
  s->add_option("--V0", m.V0, "surface potential");
  s->add_option("--grid", m.grid, "n_rho,n_z");
  s->add_option("--extent", m.extent, "rho_max,z_max (z spans -z_max..z_max)");
  s->add_option("--nmax", m.n_max, "toroidal truncation")->check(CLI::PositiveNumber);
  s->add_option("--kmax", m.k_max, "spherical truncation")->check(CLI::PositiveNumber);
  s->add_option("--what", m.what, "error | potential-toroidal | potential-spherical")
      ->check(CLI::IsMember({"error", "potential-toroidal", "potential-spherical"}));
  s->add_option("--out", m.out_path, "output path (default: standard output)");
  s->add_option("--threads", m.threads, "worker threads (0: all cores)");
}

int run_map(const MapArgs& m, std::ostream& out) {
  const auto dims = parse_list(m.grid, 2, "--grid");
  const auto ext = parse_list(m.extent, 2, "--extent");
  for (double d : dims) {
    if (d < 1 || d > 100000 || d != std::floor(d)) throw UsageError("--grid needs positive integer sizes");
  }
  if (!(ext[0] > 0.0) || !(ext[1] > 0.0)) throw UsageError("--extent needs positive values");

  GridSpec g;
  g.rho_min = 0.0;
  g.rho_max = ext[0];
  g.n_rho = static_cast<int>(dims[0]);
  g.z_min = -ext[1];
  g.z_max = ext[1];
  g.n_z = static_cast<int>(dims[1]);

  const MapQuantity what = m.what == "error"                ? MapQuantity::Error
                           : m.what == "potential-toroidal" ? MapQuantity::PotentialToroidal
                                                            : MapQuantity::PotentialSpherical;
  const TorusSolver solver(torus_params(m.R0, m.r0), m.V0, m.n_max, m.k_max);
  const FieldGrid grid = error_map(solver, g, what, m.threads);
  std::ostringstream text;
  write_grid(text, grid);
  return write_text(m.out_path, text.str(), out);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Toroidal and spherical harmonic tools", "torharm"};
  app.require_subcommand(1);
  EvalArgs eval;
  CoeffArgs coeffs;
  GreenArgs green;
  MapArgs map;
  add_eval(app, eval);
  add_coeffs(app, coeffs);
  add_green(app, green);
  add_map(app, map);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kUsage;
  }

  try {
    const std::string name = app.get_subcommands().front()->get_name();
    if (name == "eval") return run_eval(eval, out);
    if (name == "coeffs") return run_coeffs(coeffs, out);
    if (name == "green") return run_green(green, out);
    return run_map(map, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
}

}  // namespace torharm::cli
