#pragma once

#include "kstab/eigen_scalar.hpp"

#include <vector>

namespace kstab {

/// Exact determinant by fraction-valued Gaussian elimination.
Rational determinant(RMatrix m);

/// Exact inverse; throws std::domain_error on a singular matrix.
RMatrix inverse(const RMatrix& m);

/// Leading principal minors d_1..d_n.
std::vector<Rational> leading_minors(const RMatrix& m);

/// Sylvester's criterion for a symmetric matrix: (-1)^k d_k > 0 for all k.
/// The empty matrix counts as negative definite.
bool negative_definite(const RMatrix& m);

}  // namespace kstab
