#include "polystab/rational.hpp"

#include <cmath>
#include <cstdlib>
#include <limits>
#include <numeric>

namespace polystab {

namespace {

using i128 = __int128;

std::int64_t checked_narrow(i128 v) {
  if (v > std::numeric_limits<std::int64_t>::max() ||
      v < std::numeric_limits<std::int64_t>::min()) {
    throw NumericError("rational arithmetic overflow");
  }
  return static_cast<std::int64_t>(v);
}

i128 gcd128(i128 a, i128 b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    i128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

Rational make_reduced(i128 n, i128 d) {
  if (d == 0) throw InvariantError("rational with zero denominator");
  if (d < 0) {
    n = -n;
    d = -d;
  }
  i128 g = gcd128(n, d);
  if (g > 1) {
    n /= g;
    d /= g;
  }
  return Rational(checked_narrow(n), checked_narrow(d));
}

}  // namespace

Rational::Rational(std::int64_t n, std::int64_t d) {
  Rational r = make_reduced(n, d);
  num_ = r.num_;
  den_ = r.den_;
}

Rational Rational::operator+(const Rational& o) const {
  return make_reduced(i128(num_) * o.den_ + i128(o.num_) * den_, i128(den_) * o.den_);
}

Rational Rational::operator-(const Rational& o) const {
  return make_reduced(i128(num_) * o.den_ - i128(o.num_) * den_, i128(den_) * o.den_);
}

Rational Rational::operator*(const Rational& o) const {
  return make_reduced(i128(num_) * o.num_, i128(den_) * o.den_);
}

Rational Rational::operator/(const Rational& o) const {
  if (o.num_ == 0) throw InvariantError("rational division by zero");
  return make_reduced(i128(num_) * o.den_, i128(den_) * o.num_);
}

bool Rational::operator<(const Rational& o) const {
  return i128(num_) * o.den_ < i128(o.num_) * den_;
}

std::string Rational::str() const {
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

Rational Rational::from_double(double x, std::int64_t max_den) {
  if (!std::isfinite(x)) throw InvariantError("rational from non-finite value");
  if (x == std::floor(x) && std::abs(x) < 9e15) {
    return Rational(static_cast<std::int64_t>(x));
  }
  // Continued-fraction convergents p_k/q_k of x.
  double a = x;
  std::int64_t p0 = 1, q0 = 0, p1 = static_cast<std::int64_t>(std::floor(a)), q1 = 1;
  double frac = a - std::floor(a);
  for (int it = 0; it < 64; ++it) {
    double approx = static_cast<double>(p1) / static_cast<double>(q1);
    if (std::abs(approx - x) <= 1e-12 * std::max(1.0, std::abs(x))) break;
    if (frac == 0.0) break;
    a = 1.0 / frac;
    std::int64_t ai = static_cast<std::int64_t>(std::floor(a));
    frac = a - std::floor(a);
    std::int64_t p2 = checked_narrow(i128(ai) * p1 + p0);
    std::int64_t q2 = checked_narrow(i128(ai) * q1 + q0);
    if (q2 > max_den) break;
    p0 = p1;
    q0 = q1;
    p1 = p2;
    q1 = q2;
  }
  return Rational(p1, q1);
}

Rational Rational::parse(const std::string& text) {
  auto slash = text.find('/');
  if (slash != std::string::npos) {
    std::int64_t n = std::stoll(text.substr(0, slash));
    std::int64_t d = std::stoll(text.substr(slash + 1));
    return Rational(n, d);
  }
  if (text.find('.') != std::string::npos || text.find('e') != std::string::npos ||
      text.find('E') != std::string::npos) {
    return from_double(std::stod(text));
  }
  return Rational(std::stoll(text));
}

Rational max(const Rational& a, const Rational& b) { return a < b ? b : a; }
Rational min(const Rational& a, const Rational& b) { return a < b ? a : b; }

}  // namespace polystab
