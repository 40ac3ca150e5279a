#pragma once

// Eigen scalar traits for the exact types, so Rational and Poly2 can sit in
// Eigen dense containers. Only container and coefficient-wise arithmetic is
// relied on; decompositions over these scalars live in linalg.hpp.

#include "kstab/poly2.hpp"
#include "kstab/rational.hpp"

#include <Eigen/Core>

namespace Eigen {

template <>
struct NumTraits<kstab::Rational> : GenericNumTraits<kstab::Rational> {
  using Real = kstab::Rational;
  using NonInteger = kstab::Rational;
  using Nested = kstab::Rational;
  using Literal = kstab::Rational;

  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 1,
    AddCost = 8,
    MulCost = 16,
  };

  static inline Real epsilon() { return Real(0); }
  static inline Real dummy_precision() { return Real(0); }
  static inline int digits10() { return 0; }
};

template <>
struct NumTraits<kstab::Poly2> : GenericNumTraits<kstab::Poly2> {
  using Real = kstab::Poly2;
  using NonInteger = kstab::Poly2;
  using Nested = kstab::Poly2;
  using Literal = kstab::Poly2;

  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 1,
    AddCost = 32,
    MulCost = 64,
  };

  static inline Real epsilon() { return Real(0); }
  static inline Real dummy_precision() { return Real(0); }
  static inline int digits10() { return 0; }
};

}  // namespace Eigen

namespace kstab {

template <class Scalar>
using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
template <class Scalar>
using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

using RVector = Vec<Rational>;
using RMatrix = Mat<Rational>;
using PVector = Vec<Poly2>;

/// Lifts a rational vector to constant polynomials.
inline PVector to_poly(const RVector& x) {
  PVector out(x.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) out(i) = Poly2(x(i));
  return out;
}

/// Evaluates every coordinate at (u, v).
inline RVector eval_at(const PVector& x, const Rational& u, const Rational& v) {
  RVector out(x.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) out(i) = x(i).eval(u, v);
  return out;
}

/// x^T G y for coordinates over any scalar the exact gram can be lifted into.
template <class Scalar>
Scalar bilinear(const Vec<Scalar>& x, const RMatrix& gram, const Vec<Scalar>& y) {
  Scalar sum(0);
  for (Eigen::Index i = 0; i < gram.rows(); ++i) {
    if (x(i) == Scalar(0)) continue;
    Scalar row(0);
    for (Eigen::Index j = 0; j < gram.cols(); ++j) {
      if (gram(i, j).is_zero()) continue;
      row += Scalar(gram(i, j)) * y(j);
    }
    sum += x(i) * row;
  }
  return sum;
}

}  // namespace kstab
