#ifndef OPAL_RATIONAL_HPP
#define OPAL_RATIONAL_HPP

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <iosfwd>

namespace opal {

/// Exact rational number over 64-bit integers.
///
/// Always reduced to lowest terms with a positive denominator. All
/// intermediate products run through 128-bit integers and throw
/// std::overflow_error instead of wrapping, so every arithmetic result
/// is exact or the computation aborts loudly. The coefficient growth in
/// this workbench (relation spans, pairings, coderivation signs) stays
/// in the single digits, so 64 bits leave a wide margin.
class Rational {
public:
  Rational() : num_(0), den_(1) {}
  Rational(std::int64_t n) : num_(n), den_(1) {}
  Rational(std::int64_t n, std::int64_t d) : num_(n), den_(d) { reduce(); }

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }

  bool is_zero() const { return num_ == 0; }
  bool is_one() const { return num_ == 1 && den_ == 1; }

  Rational operator-() const {
    Rational r;
    r.num_ = -num_;
    r.den_ = den_;
    return r;
  }

  Rational &operator+=(const Rational &o) {
    __int128 n = (__int128)num_ * o.den_ + (__int128)o.num_ * den_;
    __int128 d = (__int128)den_ * o.den_;
    assign(n, d);
    return *this;
  }
  Rational &operator-=(const Rational &o) { return *this += (-o); }
  Rational &operator*=(const Rational &o) {
    assign((__int128)num_ * o.num_, (__int128)den_ * o.den_);
    return *this;
  }
  Rational &operator/=(const Rational &o) {
    if (o.num_ == 0) throw std::domain_error("Rational: division by zero");
    assign((__int128)num_ * o.den_, (__int128)den_ * o.num_);
    return *this;
  }

  friend Rational operator+(Rational a, const Rational &b) { return a += b; }
  friend Rational operator-(Rational a, const Rational &b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational &b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational &b) { return a /= b; }

  friend bool operator==(const Rational &a, const Rational &b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const Rational &a, const Rational &b) { return !(a == b); }
  friend bool operator<(const Rational &a, const Rational &b) {
    return (__int128)a.num_ * b.den_ < (__int128)b.num_ * a.den_;
  }

  Rational inverse() const {
    Rational r(1);
    r /= *this;
    return r;
  }

  /// Renders "p" or "p/q".
  std::string str() const {
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
  }

  /// Parses "p" or "p/q" (whitespace not allowed).
  static Rational parse(const std::string &s);

private:
  void reduce() {
    if (den_ == 0) throw std::domain_error("Rational: zero denominator");
    if (den_ < 0) { num_ = -num_; den_ = -den_; }
    std::int64_t g = std::gcd(num_ < 0 ? -num_ : num_, den_);
    if (g > 1) { num_ /= g; den_ /= g; }
  }

  void assign(__int128 n, __int128 d) {
    if (d == 0) throw std::domain_error("Rational: zero denominator");
    if (d < 0) { n = -n; d = -d; }
    __int128 a = n < 0 ? -n : n;
    __int128 b = d;
    while (b != 0) { __int128 t = a % b; a = b; b = t; }
    if (a > 1) { n /= a; d /= a; }
    constexpr __int128 lo = INT64_MIN, hi = INT64_MAX;
    if (n < lo || n > hi || d > hi)
      throw std::overflow_error("Rational: 64-bit overflow");
    num_ = (std::int64_t)n;
    den_ = (std::int64_t)d;
  }

  std::int64_t num_;
  std::int64_t den_;
};

/// Convenience literal: sign as +1/-1 stored exactly.
inline Rational sign_rational(int s) { return Rational(s); }

std::ostream &operator<<(std::ostream &os, const Rational &r);

} // namespace opal

#endif
