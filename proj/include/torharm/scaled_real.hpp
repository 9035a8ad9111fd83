#pragma once

#include <cmath>
#include <cstdint>
#include <limits>

namespace torharm {

/// Real number stored as mantissa * 2^exponent with |mantissa| in [0.5, 1).
///
/// Used wherever intermediate magnitudes (double factorials, coefficient
/// tables, Legendre functions of high order) leave the range of double. Every
/// operation costs one rounding of the mantissa, the exponent is exact.
class ScaledReal {
 public:
  constexpr ScaledReal() = default;

  ScaledReal(double v) {  // NOLINT: implicit by intent
    int e = 0;
    mant_ = std::frexp(v, &e);
    exp_ = mant_ == 0.0 ? 0 : e;
  }

  static ScaledReal from_parts(double mant, std::int64_t exp2) {
    ScaledReal r(mant);
    if (r.mant_ != 0.0) r.exp_ += exp2;
    return r;
  }

  double mantissa() const { return mant_; }
  std::int64_t exponent() const { return exp_; }

  bool is_zero() const { return mant_ == 0.0; }
  int sign() const { return (mant_ > 0.0) - (mant_ < 0.0); }

  /// Value as double; saturates to +-inf or flushes to zero outside range.
  double to_double() const {
    if (mant_ == 0.0) return 0.0;
    if (exp_ > std::numeric_limits<double>::max_exponent) {
      return mant_ > 0 ? std::numeric_limits<double>::infinity()
                       : -std::numeric_limits<double>::infinity();
    }
    if (exp_ < std::numeric_limits<double>::min_exponent - 60) return 0.0 * mant_;
    return std::ldexp(mant_, static_cast<int>(exp_));
  }

  bool fits_double() const {
    return mant_ == 0.0 || (exp_ <= std::numeric_limits<double>::max_exponent &&
                            exp_ >= std::numeric_limits<double>::min_exponent);
  }

  /// Natural log of |value|; -inf for zero.
  double log_abs() const {
    if (mant_ == 0.0) return -std::numeric_limits<double>::infinity();
    return std::log(std::fabs(mant_)) + static_cast<double>(exp_) * std::log(2.0);
  }

  ScaledReal abs() const { return from_parts(std::fabs(mant_), exp_); }

  ScaledReal operator-() const { return from_parts(-mant_, exp_); }

  friend ScaledReal operator*(const ScaledReal& a, const ScaledReal& b) {
    if (a.is_zero() || b.is_zero()) return {};
    return from_parts(a.mant_ * b.mant_, a.exp_ + b.exp_);
  }

  friend ScaledReal operator/(const ScaledReal& a, const ScaledReal& b) {
    if (a.is_zero()) return {};
    return from_parts(a.mant_ / b.mant_, a.exp_ - b.exp_);
  }

  friend ScaledReal operator+(const ScaledReal& a, const ScaledReal& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    const ScaledReal& big = a.exp_ >= b.exp_ ? a : b;
    const ScaledReal& small = a.exp_ >= b.exp_ ? b : a;
    const std::int64_t shift = big.exp_ - small.exp_;
    if (shift > 60) return big;
    const double m = big.mant_ + std::ldexp(small.mant_, -static_cast<int>(shift));
    return from_parts(m, big.exp_);
  }

  friend ScaledReal operator-(const ScaledReal& a, const ScaledReal& b) { return a + (-b); }

  ScaledReal& operator*=(const ScaledReal& o) { return *this = *this * o; }
  ScaledReal& operator/=(const ScaledReal& o) { return *this = *this / o; }
  ScaledReal& operator+=(const ScaledReal& o) { return *this = *this + o; }
  ScaledReal& operator-=(const ScaledReal& o) { return *this = *this - o; }

  friend bool operator==(const ScaledReal& a, const ScaledReal& b) {
    return a.mant_ == b.mant_ && a.exp_ == b.exp_;
  }

 private:
  double mant_ = 0.0;
  std::int64_t exp_ = 0;
};

/// |a| < |b|
inline bool abs_less(const ScaledReal& a, const ScaledReal& b) {
  if (a.is_zero()) return !b.is_zero();
  if (b.is_zero()) return false;
  if (a.exponent() != b.exponent()) return a.exponent() < b.exponent();
  return std::fabs(a.mantissa()) < std::fabs(b.mantissa());
}

/// base^count by repeated multiplication (count >= 0).
inline ScaledReal pow_int(ScaledReal base, int count) {
  ScaledReal result(1.0);
  while (count > 0) {
    if (count & 1) result *= base;
    base *= base;
    count >>= 1;
  }
  return result;
}

}  // namespace torharm
