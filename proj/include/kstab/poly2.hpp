#pragma once

#include "kstab/rational.hpp"

#include <iosfwd>
#include <map>
#include <string>
#include <string_view>
#include <utility>

namespace kstab {

/// Exponent pair (i, j) of the monomial u^i v^j.
using Exponent = std::pair<int, int>;

/// Sparse polynomial in the two chamber parameters u and v with exact
/// rational coefficients. Zero coefficients are never stored; terms iterate
/// in lexicographic (i, j) order.
class Poly2 {
 public:
  using Terms = std::map<Exponent, Rational>;

  Poly2() = default;
  Poly2(const Rational& c);  // NOLINT(implicit)
  Poly2(int c) : Poly2(Rational(c)) {}  // NOLINT(implicit)

  static Poly2 u();
  static Poly2 v();
  static Poly2 monomial(int i, int j, const Rational& c = Rational(1));
  /// a + b*u + c*v
  static Poly2 affine(const Rational& a, const Rational& b, const Rational& c);

  /// Parses the text form produced by str(), e.g. "16 - 16*v + 4*v^2",
  /// "1/2*u*v^2 - 3". Accepts an optional leading sign and arbitrary spacing.
  static Poly2 parse(std::string_view text);

  const Terms& terms() const { return terms_; }
  Rational coeff(int i, int j) const;

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  /// Constant term; throws if the polynomial is not constant.
  Rational constant_value() const;

  int degree_u() const;
  int degree_v() const;
  int total_degree() const;
  bool depends_on_v() const { return degree_v() > 0; }
  /// total degree <= 1
  bool is_affine() const { return total_degree() <= 1; }

  Rational eval(const Rational& u, const Rational& v) const;
  double eval(double u, double v) const;

  /// Partial antiderivative with zero constant of integration.
  Poly2 antiderivative_u() const;
  Poly2 antiderivative_v() const;
  /// p(u, q(u, v))
  Poly2 substitute_v(const Poly2& q) const;
  /// p(q(u, v), v)
  Poly2 substitute_u(const Poly2& q) const;

  std::string str() const;

  Poly2 operator-() const;
  Poly2& operator+=(const Poly2& rhs);
  Poly2& operator-=(const Poly2& rhs);
  Poly2& operator*=(const Poly2& rhs);

  friend Poly2 operator+(Poly2 a, const Poly2& b) { return a += b; }
  friend Poly2 operator-(Poly2 a, const Poly2& b) { return a -= b; }
  friend Poly2 operator*(const Poly2& a, const Poly2& b);
  friend bool operator==(const Poly2& a, const Poly2& b) = default;

 private:
  void add_term(const Exponent& e, const Rational& c);

  Terms terms_;
};

Poly2 pow(const Poly2& p, int n);

/// Definite integral over u in [a, b] of a polynomial in u alone.
Rational integrate_u(const Poly2& p, const Rational& a, const Rational& b);

std::ostream& operator<<(std::ostream& os, const Poly2& p);

}  // namespace kstab
