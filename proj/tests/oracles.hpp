#pragma once

// Independent floating-point / brute-force oracles used only by the tests.
// None of these route through the exact integration or cone code they check.

#include "kstab/poly2.hpp"
#include "kstab/region.hpp"

#include <Eigen/Dense>

#include <array>
#include <cmath>
#include <functional>
#include <random>
#include <vector>

namespace kstab::testing {

/// Midpoint rule on an n x n grid in (u, t) with v = v_lo(u) + t (v_hi(u) - v_lo(u)).
inline double midpoint_integral(const std::function<double(double, double)>& f, double u_lo, double u_hi,
                                const std::function<double(double)>& v_lo, const std::function<double(double)>& v_hi,
                                int n) {
  double hu = (u_hi - u_lo) / n;
  double sum = 0.0;
  for (int i = 0; i < n; ++i) {
    double u = u_lo + (i + 0.5) * hu;
    double a = v_lo(u);
    double b = v_hi(u);
    double hv = (b - a) / n;
    double inner = 0.0;
    for (int j = 0; j < n; ++j) inner += f(u, a + (j + 0.5) * hv);
    sum += inner * hv;
  }
  return sum * hu;
}

inline double midpoint_integral(const Poly2& p, const Region& r, int n) {
  return midpoint_integral([&p](double u, double v) { return p.eval(u, v); }, r.u_lo().to_double(),
                           r.u_hi().to_double(), [&r](double u) { return r.v_lo().eval(u, 0.0); },
                           [&r](double u) { return r.v_hi().eval(u, 0.0); }, n);
}

inline bool close_relative(double exact, double approx, double tol) {
  double scale = std::max(1.0, std::abs(exact));
  return std::abs(exact - approx) <= tol * scale;
}

/// Small random polynomial with integer-over-small-denominator coefficients.
inline Poly2 random_poly(std::mt19937& rng, int max_deg = 3) {
  std::uniform_int_distribution<int> deg(0, max_deg);
  std::uniform_int_distribution<int> num(-9, 9);
  std::uniform_int_distribution<int> den(1, 4);
  Poly2 p;
  int terms = deg(rng) + 1;
  for (int k = 0; k < terms; ++k) p += Poly2::monomial(deg(rng), deg(rng), Rational(num(rng), den(rng)));
  return p;
}

inline Rational random_rational(std::mt19937& rng, int lo, int hi, int max_den = 6) {
  std::uniform_int_distribution<int> den(1, max_den);
  int d = den(rng);
  std::uniform_int_distribution<int> num(lo * d, hi * d);
  return Rational(num(rng), d);
}

/// Membership in the cone spanned by `gens` (columns) by brute force over
/// every 4-element subset of generators: solve the square system in double
/// precision and accept a nonnegative solution. Lower-dimensional supports
/// are covered because the generators span R^4, so any independent subset
/// extends to a basis with zero coefficients on the added vectors.
inline bool in_cone_brute_force(const std::vector<std::array<double, 4>>& gens, const std::array<double, 4>& x) {
  const int n = static_cast<int>(gens.size());
  Eigen::Vector4d rhs(x[0], x[1], x[2], x[3]);
  if (rhs.norm() == 0.0) return true;
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      for (int c = b + 1; c < n; ++c)
        for (int d = c + 1; d < n; ++d) {
          Eigen::Matrix4d m;
          int idx[4] = {a, b, c, d};
          for (int k = 0; k < 4; ++k)
            for (int r = 0; r < 4; ++r) m(r, k) = gens[idx[k]][r];
          Eigen::FullPivLU<Eigen::Matrix4d> lu(m);
          if (!lu.isInvertible()) continue;
          Eigen::Vector4d sol = lu.solve(rhs);
          if ((m * sol - rhs).norm() > 1e-9) continue;
          if ((sol.array() >= -1e-9).all()) return true;
        }
  return false;
}

}  // namespace kstab::testing
