#include "kstab/poly2.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <ostream>
#include <stdexcept>

namespace kstab {

Poly2::Poly2(const Rational& c) {
  if (!c.is_zero()) terms_.emplace(Exponent{0, 0}, c);
}

Poly2 Poly2::u() { return monomial(1, 0); }
Poly2 Poly2::v() { return monomial(0, 1); }

Poly2 Poly2::monomial(int i, int j, const Rational& c) {
  if (i < 0 || j < 0) throw std::invalid_argument("Poly2: negative exponent");
  Poly2 p;
  p.add_term({i, j}, c);
  return p;
}

Poly2 Poly2::affine(const Rational& a, const Rational& b, const Rational& c) {
  Poly2 p(a);
  p.add_term({1, 0}, b);
  p.add_term({0, 1}, c);
  return p;
}

void Poly2::add_term(const Exponent& e, const Rational& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (inserted) return;
  it->second += c;
  if (it->second.is_zero()) terms_.erase(it);
}

Rational Poly2::coeff(int i, int j) const {
  auto it = terms_.find({i, j});
  return it == terms_.end() ? Rational(0) : it->second;
}

bool Poly2::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == Exponent{0, 0});
}

Rational Poly2::constant_value() const {
  if (!is_constant()) throw std::logic_error("Poly2: not constant: " + str());
  return coeff(0, 0);
}

int Poly2::degree_u() const {
  int d = 0;
  for (const auto& [e, c] : terms_) d = std::max(d, e.first);
  return d;
}

int Poly2::degree_v() const {
  int d = 0;
  for (const auto& [e, c] : terms_) d = std::max(d, e.second);
  return d;
}

int Poly2::total_degree() const {
  int d = 0;
  for (const auto& [e, c] : terms_) d = std::max(d, e.first + e.second);
  return d;
}

namespace {

template <class T>
T ipow(const T& base, int n) {
  T result(1);
  for (int k = 0; k < n; ++k) result *= base;
  return result;
}

}  // namespace

Rational Poly2::eval(const Rational& u, const Rational& v) const {
  Rational sum;
  for (const auto& [e, c] : terms_) sum += c * ipow(u, e.first) * ipow(v, e.second);
  return sum;
}

double Poly2::eval(double u, double v) const {
  double sum = 0.0;
  for (const auto& [e, c] : terms_) sum += c.to_double() * std::pow(u, e.first) * std::pow(v, e.second);
  return sum;
}

Poly2 Poly2::antiderivative_u() const {
  Poly2 r;
  for (const auto& [e, c] : terms_) r.add_term({e.first + 1, e.second}, c / Rational(e.first + 1));
  return r;
}

Poly2 Poly2::antiderivative_v() const {
  Poly2 r;
  for (const auto& [e, c] : terms_) r.add_term({e.first, e.second + 1}, c / Rational(e.second + 1));
  return r;
}

Poly2 Poly2::substitute_v(const Poly2& q) const {
  Poly2 r;
  for (const auto& [e, c] : terms_) r += monomial(e.first, 0, c) * pow(q, e.second);
  return r;
}

Poly2 Poly2::substitute_u(const Poly2& q) const {
  Poly2 r;
  for (const auto& [e, c] : terms_) r += monomial(0, e.second, c) * pow(q, e.first);
  return r;
}

Poly2 Poly2::operator-() const {
  Poly2 r = *this;
  for (auto& [e, c] : r.terms_) c = -c;
  return r;
}

Poly2& Poly2::operator+=(const Poly2& rhs) {
  for (const auto& [e, c] : rhs.terms_) add_term(e, c);
  return *this;
}

Poly2& Poly2::operator-=(const Poly2& rhs) {
  for (const auto& [e, c] : rhs.terms_) add_term(e, -c);
  return *this;
}

Poly2 operator*(const Poly2& a, const Poly2& b) {
  Poly2 r;
  for (const auto& [ea, ca] : a.terms_)
    for (const auto& [eb, cb] : b.terms_) r.add_term({ea.first + eb.first, ea.second + eb.second}, ca * cb);
  return r;
}

Poly2& Poly2::operator*=(const Poly2& rhs) { return *this = *this * rhs; }

Poly2 pow(const Poly2& p, int n) {
  if (n < 0) throw std::invalid_argument("Poly2: negative power");
  return ipow(p, n);
}

Rational integrate_u(const Poly2& p, const Rational& a, const Rational& b) {
  if (p.depends_on_v()) throw std::invalid_argument("integrate_u: integrand depends on v: " + p.str());
  Poly2 anti = p.antiderivative_u();
  return anti.eval(b, Rational(0)) - anti.eval(a, Rational(0));
}

namespace {

std::string monomial_str(const Exponent& e) {
  std::string s;
  auto factor = [&s](const char* var, int k) {
    if (k == 0) return;
    if (!s.empty()) s += "*";
    s += var;
    if (k > 1) s += "^" + std::to_string(k);
  };
  factor("u", e.first);
  factor("v", e.second);
  return s;
}

}  // namespace

std::string Poly2::str() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    Rational mag = abs(c);
    if (first) {
      if (c.sign() < 0) out += "-";
    } else {
      out += c.sign() < 0 ? " - " : " + ";
    }
    first = false;
    std::string mono = monomial_str(e);
    if (mono.empty()) {
      out += mag.str();
    } else if (mag == Rational(1)) {
      out += mono;
    } else {
      out += mag.str() + "*" + mono;
    }
  }
  return out;
}

namespace {

// Recursive-descent reader for sums of signed monomials: [coef][*]u^i*v^j.
class PolyReader {
 public:
  explicit PolyReader(std::string_view text) : text_(text) {}

  Poly2 read() {
    Poly2 result;
    skip();
    bool first = true;
    while (pos_ < text_.size()) {
      int sign = 1;
      if (peek() == '+' || peek() == '-') {
        sign = peek() == '-' ? -1 : 1;
        ++pos_;
        skip();
      } else if (!first) {
        fail("expected '+' or '-'");
      }
      result += read_term() * Poly2(Rational(sign));
      first = false;
      skip();
    }
    if (first) fail("empty polynomial");
    return result;
  }

 private:
  Poly2 read_term() {
    Poly2 term(1);
    bool any = false;
    while (true) {
      skip();
      char c = peek();
      if (std::isdigit(static_cast<unsigned char>(c))) {
        term *= Poly2(read_number());
      } else if (c == 'u' || c == 'v') {
        ++pos_;
        int power = 1;
        skip();
        if (peek() == '^') {
          ++pos_;
          skip();
          power = static_cast<int>(read_digits());
        }
        term *= c == 'u' ? Poly2::monomial(power, 0) : Poly2::monomial(0, power);
      } else {
        fail("expected number or variable");
      }
      any = true;
      skip();
      if (peek() == '*') {
        ++pos_;
        continue;
      }
      break;
    }
    if (!any) fail("empty term");
    return term;
  }

  Rational read_number() {
    BigInt num{read_digit_string()};
    skip();
    if (peek() == '/') {
      ++pos_;
      skip();
      return Rational(num, BigInt(read_digit_string()));
    }
    return Rational(num);
  }

  long read_digits() { return std::stol(read_digit_string()); }

  std::string read_digit_string() {
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected digits");
    return std::string(text_.substr(start, pos_ - start));
  }

  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }
  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  [[noreturn]] void fail(const char* what) const {
    throw std::invalid_argument("Poly2::parse: " + std::string(what) + " at offset " + std::to_string(pos_) +
                                " in '" + std::string(text_) + "'");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

Poly2 Poly2::parse(std::string_view text) { return PolyReader(text).read(); }

std::ostream& operator<<(std::ostream& os, const Poly2& p) { return os << p.str(); }

}  // namespace kstab
