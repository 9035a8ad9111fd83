#include "torharm/coeffs.hpp"

#include <cmath>
#include <json.hpp>
#include <numbers>

#include "torharm/errors.hpp"
#include "torharm/special.hpp"

namespace torharm {

namespace {

void check_dims(int m, int n_max, int k_max) {
  if (m < 0) throw Error(ErrorKind::InvalidArgument, "table order m must be >= 0");
  if (n_max < 1 || k_max < 1) throw Error(ErrorKind::InvalidArgument, "n_max and k_max must be >= 1");
}

void check_index(const CoeffTable& t, int n, int k) {
  if (!t.in_range(n, k)) throw Error(ErrorKind::InvalidArgument, "coefficient index out of range");
}

// sqrt(pi) / Gamma(j + 1/2)
ScaledReal norm_factor(int j) { return ScaledReal(std::sqrt(std::numbers::pi)) / gamma_half_scaled(j); }

}  // namespace

CoeffTable::CoeffTable(int m, int n_max, int k_max) : m_(m), n_max_(n_max), k_max_(k_max) {
  check_dims(m, n_max, k_max);
  const std::size_t size = static_cast<std::size_t>(n_max + 1) * (k_max + 1);
  C_.resize(size);
  S_.resize(size);
  c_.resize(size);
  s_.resize(size);
}

std::size_t CoeffTable::index(int n, int k) const {
  return static_cast<std::size_t>(n) * (k_max_ + 1) + static_cast<std::size_t>(k);
}

void normalize_table(CoeffTable& t) {
  for (int n = 0; n <= t.n_max(); ++n) {
    const ScaledReal f = norm_factor(n - t.m());
    for (int k = 0; k <= t.k_max(); ++k) {
      t.c(n, k) = f * t.C(n, k);
      t.s(n, k) = f * t.S(n, k);
    }
  }
}

CoeffTable build_table(int m, int n_max, int k_max) {
  CoeffTable t(m, n_max, k_max);
  for (int k = 0; k <= k_max; ++k) {
    t.C(0, k) = 1.0;
    t.S(0, k) = 0.0;
    t.C(1, k) = k + 0.5;
    t.S(1, k) = k + m + 1.0;
    const ScaledReal odd(2.0 * k + 1.0);
    for (int n = 1; n < n_max; ++n) {
      const ScaledReal w((n - 0.5) * (n - 0.5) - static_cast<double>(m) * m);
      t.C(n + 1, k) = odd * t.C(n, k) + w * t.C(n - 1, k);
      t.S(n + 1, k) = odd * t.S(n, k) + w * t.S(n - 1, k);
    }
  }
  normalize_table(t);
  return t;
}

double coeff_c(const CoeffTable& table, int n, int k) {
  check_index(table, n, k);
  return table.c(n, k).to_double();
}

double coeff_s(const CoeffTable& table, int n, int k) {
  check_index(table, n, k);
  return table.s(n, k).to_double();
}

ScaledReal coeff_neg_m_c_scaled(const CoeffTable& table, int n, int k) {
  check_index(table, n, k);
  const int m = table.m();
  return gamma_half_scaled(n - m) / gamma_half_scaled(n + m) * table.c(n, k);
}

ScaledReal coeff_neg_m_s_scaled(const CoeffTable& table, int n, int k) {
  check_index(table, n, k);
  const int m = table.m();
  const ScaledReal degree_factor((k - m + 1.0) / (k + m + 1.0));
  return gamma_half_scaled(n - m) / gamma_half_scaled(n + m) * degree_factor * table.s(n, k);
}

NegOrderCoeffs coeff_neg_m(const CoeffTable& table, int n, int k) {
  return {coeff_neg_m_c_scaled(table, n, k).to_double(), coeff_neg_m_s_scaled(table, n, k).to_double()};
}

double erofeenko_residual(const CoeffTable& t, int n, int k) {
  if (n < 1 || n >= t.n_max() || k < 1 || k > t.k_max()) {
    throw Error(ErrorKind::InvalidArgument, "residual needs 1 <= n < n_max and 1 <= k <= k_max");
  }
  const int m = t.m();
  struct Complex {
    ScaledReal re, im;
  };
  auto h = [&](int nn, int kk) {
    const double sign = (kk & 1) ? -1.0 : 1.0;
    return Complex{t.c(nn, kk) * ScaledReal(sign * legendre_zero(kk, m)),
                   t.s(nn, kk) * ScaledReal(sign * legendre_zero(kk + 1, m))};
  };

  const Complex lower_k = h(n, k - 1);
  const ScaledReal f1(2.0 * (k - m));
  const Complex terms[4] = {
      {-(f1 * lower_k.im), f1 * lower_k.re},  // 2i(k-m) h_{n,k-1}
      {ScaledReal(-(n - m + 0.5)) * h(n + 1, k).re, ScaledReal(-(n - m + 0.5)) * h(n + 1, k).im},
      {ScaledReal(2.0 * n) * h(n, k).re, ScaledReal(2.0 * n) * h(n, k).im},
      {ScaledReal(-(n + m - 0.5)) * h(n - 1, k).re, ScaledReal(-(n + m - 0.5)) * h(n - 1, k).im},
  };

  ScaledReal re, im, scale;
  for (const auto& term : terms) {
    re += term.re;
    im += term.im;
    if (abs_less(scale, term.re)) scale = term.re.abs();
    if (abs_less(scale, term.im)) scale = term.im.abs();
  }
  if (scale.is_zero()) return 0.0;
  return std::hypot((re / scale).to_double(), (im / scale).to_double());
}

// ---------------------------------------------------------------------------

namespace {

nlohmann::json rows(const CoeffTable& t, const ScaledReal& (CoeffTable::*get)(int, int) const) {
  auto out = nlohmann::json::array();
  for (int n = 0; n <= t.n_max(); ++n) {
    auto row = nlohmann::json::array();
    for (int k = 0; k <= t.k_max(); ++k) {
      const ScaledReal& v = (t.*get)(n, k);
      if (!v.fits_double()) {
        throw Error(ErrorKind::Overflow, "coefficient exceeds the double range; reduce n_max or k_max");
      }
      row.push_back(v.to_double());
    }
    out.push_back(std::move(row));
  }
  return out;
}

void read_rows(const nlohmann::json& j, CoeffTable& t, ScaledReal& (CoeffTable::*get)(int, int)) {
  if (!j.is_array() || static_cast<int>(j.size()) != t.n_max() + 1) {
    throw Error(ErrorKind::InvalidArgument, "coefficient array has the wrong number of rows");
  }
  for (int n = 0; n <= t.n_max(); ++n) {
    const auto& row = j[n];
    if (!row.is_array() || static_cast<int>(row.size()) != t.k_max() + 1) {
      throw Error(ErrorKind::InvalidArgument, "coefficient row has the wrong length");
    }
    for (int k = 0; k <= t.k_max(); ++k) (t.*get)(n, k) = row[k].get<double>();
  }
}

}  // namespace

std::string coeffs_to_json(const CoeffTable& t, bool normalized, int indent) {
  nlohmann::ordered_json j;
  j["m"] = t.m();
  j["n_max"] = t.n_max();
  j["k_max"] = t.k_max();
  j["C"] = rows(t, &CoeffTable::C);
  j["S"] = rows(t, &CoeffTable::S);
  if (normalized) {
    j["c"] = rows(t, &CoeffTable::c);
    j["s"] = rows(t, &CoeffTable::s);
  }
  return j.dump(indent);
}

CoeffTable coeffs_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
    CoeffTable t(j.at("m").get<int>(), j.at("n_max").get<int>(), j.at("k_max").get<int>());
    read_rows(j.at("C"), t, &CoeffTable::C);
    read_rows(j.at("S"), t, &CoeffTable::S);
    if (j.contains("c") && j.contains("s")) {
      read_rows(j.at("c"), t, &CoeffTable::c);
      read_rows(j.at("s"), t, &CoeffTable::s);
    } else {
      normalize_table(t);
    }
    return t;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::InvalidArgument, std::string("malformed coefficient file: ") + e.what());
  }
}

}  // namespace torharm
