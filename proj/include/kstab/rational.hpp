#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <iosfwd>
#include <string>
#include <string_view>

namespace kstab {

using BigInt = boost::multiprecision::cpp_int;

/// Exact fraction num/den with den > 0 and gcd(|num|, den) = 1.
///
/// Every constructor and arithmetic operator leaves the value in canonical
/// form, so equality is structural. Zero is always 0/1.
class Rational {
 public:
  Rational() : num_(0), den_(1) {}
  Rational(int value) : num_(value), den_(1) {}            // NOLINT(implicit)
  Rational(long value) : num_(value), den_(1) {}           // NOLINT(implicit)
  Rational(long long value) : num_(value), den_(1) {}      // NOLINT(implicit)
  Rational(const BigInt& value) : num_(value), den_(1) {}  // NOLINT(implicit)
  Rational(BigInt num, BigInt den);
  Rational(long long num, long long den) : Rational(BigInt(num), BigInt(den)) {}

  /// Parses "p", "-p" or "p/q" (whitespace around tokens allowed).
  static Rational parse(std::string_view text);

  const BigInt& num() const { return num_; }
  const BigInt& den() const { return den_; }

  int sign() const { return num_.sign(); }
  bool is_zero() const { return num_.is_zero(); }
  bool is_integer() const { return den_ == 1; }
  double to_double() const;

  /// "p/q", or "p" when q == 1.
  std::string str() const;

  Rational operator-() const;
  Rational& operator+=(const Rational& rhs);
  Rational& operator-=(const Rational& rhs);
  Rational& operator*=(const Rational& rhs);
  Rational& operator/=(const Rational& rhs);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

 private:
  void canonicalize();

  BigInt num_;
  BigInt den_;
};

Rational abs(const Rational& x);
Rational min(const Rational& a, const Rational& b);
Rational max(const Rational& a, const Rational& b);

std::ostream& operator<<(std::ostream& os, const Rational& x);

}  // namespace kstab
