#include "kstab/linalg.hpp"

#include <stdexcept>
#include <utility>

namespace kstab {

Rational determinant(RMatrix m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("determinant: non-square matrix");
  const Eigen::Index n = m.rows();
  Rational det(1);
  for (Eigen::Index col = 0; col < n; ++col) {
    Eigen::Index pivot = col;
    while (pivot < n && m(pivot, col).is_zero()) ++pivot;
    if (pivot == n) return Rational(0);
    if (pivot != col) {
      m.row(pivot).swap(m.row(col));
      det = -det;
    }
    det *= m(col, col);
    for (Eigen::Index r = col + 1; r < n; ++r) {
      if (m(r, col).is_zero()) continue;
      Rational factor = m(r, col) / m(col, col);
      for (Eigen::Index c = col; c < n; ++c) m(r, c) -= factor * m(col, c);
    }
  }
  return det;
}

RMatrix inverse(const RMatrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("inverse: non-square matrix");
  const Eigen::Index n = m.rows();
  RMatrix a = m;
  RMatrix inv = RMatrix::Identity(n, n);
  for (Eigen::Index col = 0; col < n; ++col) {
    Eigen::Index pivot = col;
    while (pivot < n && a(pivot, col).is_zero()) ++pivot;
    if (pivot == n) throw std::domain_error("inverse: singular matrix");
    if (pivot != col) {
      a.row(pivot).swap(a.row(col));
      inv.row(pivot).swap(inv.row(col));
    }
    Rational scale = Rational(1) / a(col, col);
    for (Eigen::Index c = 0; c < n; ++c) {
      a(col, c) *= scale;
      inv(col, c) *= scale;
    }
    for (Eigen::Index r = 0; r < n; ++r) {
      if (r == col || a(r, col).is_zero()) continue;
      Rational factor = a(r, col);
      for (Eigen::Index c = 0; c < n; ++c) {
        a(r, c) -= factor * a(col, c);
        inv(r, c) -= factor * inv(col, c);
      }
    }
  }
  return inv;
}

std::vector<Rational> leading_minors(const RMatrix& m) {
  std::vector<Rational> minors;
  for (Eigen::Index k = 1; k <= m.rows(); ++k) minors.push_back(determinant(m.topLeftCorner(k, k)));
  return minors;
}

bool negative_definite(const RMatrix& m) {
  int sign = -1;
  for (const Rational& d : leading_minors(m)) {
    if (d.sign() != sign) return false;
    sign = -sign;
  }
  return true;
}

}  // namespace kstab
