#pragma once

#include <cstdint>
#include <string>

#include "polystab/types.hpp"

namespace polystab {

/// Exact rational arithmetic. Theorem margins like 1/2 + 3/5 - 1 must come out
/// as 1/10 exactly, not 0.10000000000000009, so the verdict layer works on
/// rationals and converts to double only for reporting.
///
/// int64 numerator/denominator, gcd-normalized, denominator > 0. Arithmetic
/// goes through __int128 and throws NumericError on overflow of the reduced
/// result.
class Rational {
 public:
  Rational() = default;
  Rational(std::int64_t n) : num_(n), den_(1) {}  // NOLINT: implicit by design
  Rational(std::int64_t n, std::int64_t d);

  /// Best rational approximation of x by continued fractions, denominator at
  /// most max_den, accepted once the relative error drops below 1e-12.
  /// Exact for integers and for decimals like 0.4 that admit a small fraction.
  static Rational from_double(double x, std::int64_t max_den = 1000000);

  /// Parses "p/q", "p", or a plain decimal string.
  static Rational parse(const std::string& text);

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }
  double value() const { return static_cast<double>(num_) / static_cast<double>(den_); }
  std::string str() const;

  Rational operator-() const { return Rational(-num_, den_); }
  Rational operator+(const Rational& o) const;
  Rational operator-(const Rational& o) const;
  Rational operator*(const Rational& o) const;
  Rational operator/(const Rational& o) const;

  bool operator==(const Rational& o) const { return num_ == o.num_ && den_ == o.den_; }
  bool operator!=(const Rational& o) const { return !(*this == o); }
  bool operator<(const Rational& o) const;
  bool operator>(const Rational& o) const { return o < *this; }
  bool operator<=(const Rational& o) const { return !(o < *this); }
  bool operator>=(const Rational& o) const { return !(*this < o); }

 private:
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

Rational max(const Rational& a, const Rational& b);
Rational min(const Rational& a, const Rational& b);

}  // namespace polystab
