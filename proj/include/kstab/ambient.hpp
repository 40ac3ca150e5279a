#pragma once

// Divisor classes on the (1,1,1,1) threefold X in (P^1)^4: the quadrilinear
// intersection form, nef and pseudo-effective cones, the two-chamber Zariski
// decomposition of -K_X - uY, and the expected vanishing order S_X.

#include "kstab/eigen_scalar.hpp"
#include "kstab/poly2.hpp"
#include "kstab/rational.hpp"

#include <Eigen/Core>

#include <algorithm>
#include <array>
#include <string>
#include <utility>
#include <vector>

namespace kstab::ambient {

/// Divisor type (a1, a2, a3, a4) in the basis pulled back from the four P^1
/// factors. Scalar is Rational for fixed classes and Poly2 (in u) for
/// families such as -K_X - uY.
template <class Scalar>
using MultiDegree = Eigen::Matrix<Scalar, 4, 1>;

using Degree = MultiDegree<Rational>;
using DegreeU = MultiDegree<Poly2>;

template <class Scalar>
MultiDegree<Scalar> multidegree(const Scalar& a1, const Scalar& a2, const Scalar& a3, const Scalar& a4) {
  MultiDegree<Scalar> d;
  d << a1, a2, a3, a4;
  return d;
}

/// -K_X, type (1,1,1,1).
template <class Scalar = Rational>
MultiDegree<Scalar> anticanonical() {
  return multidegree<Scalar>(Scalar(1), Scalar(1), Scalar(1), Scalar(1));
}

/// Intersection number of four divisors on (P^1)^4: the permanent of the 4x4
/// matrix whose columns are the types. Symmetric in its arguments.
template <class Scalar>
Scalar quad_product(const MultiDegree<Scalar>& d1, const MultiDegree<Scalar>& d2, const MultiDegree<Scalar>& d3,
                    const MultiDegree<Scalar>& d4) {
  std::array<int, 4> slot{0, 1, 2, 3};
  Scalar sum(0);
  do {
    sum += d1(slot[0]) * d2(slot[1]) * d3(slot[2]) * d4(slot[3]);
  } while (std::next_permutation(slot.begin(), slot.end()));
  return sum;
}

/// Triple intersection on X = quad_product with the class of X itself.
template <class Scalar>
Scalar triple_on_X(const MultiDegree<Scalar>& d1, const MultiDegree<Scalar>& d2, const MultiDegree<Scalar>& d3) {
  return quad_product(d1, d2, d3, anticanonical<Scalar>());
}

/// D^3 on X; equals vol(D) when D is nef.
template <class Scalar>
Scalar self_cube(const MultiDegree<Scalar>& d) {
  return triple_on_X(d, d, d);
}

/// Lifts a fixed class to constant polynomial coordinates.
DegreeU to_poly(const Degree& d);
/// Coordinates evaluated at a parameter value u.
Degree eval_at(const DegreeU& d, const Rational& u);

enum class GeneratorKind { fiber, exceptional, ruling };

/// One of the named classes: a fiber Y_i, an exceptional divisor S_ijk of
/// X -> (P^1)^3 (forgetting the complementary factor) or its ruling l_ijk.
///
/// For divisors `type` is the divisor type. For rulings it is the
/// intersection profile (Y_1.l, ..., Y_4.l), which pairs with any divisor
/// type by the dot product.
struct NamedGenerator {
  GeneratorKind kind;
  std::vector<int> slots;  // 1-based factor indices: {i} or {i, j, k}
  Degree type;

  std::string name() const;
  bool is_divisor() const { return kind != GeneratorKind::ruling; }
  friend bool operator==(const NamedGenerator&, const NamedGenerator&) = default;
};

NamedGenerator fiber(int i);
NamedGenerator exceptional(int i, int j, int k);
NamedGenerator ruling(int i, int j, int k);
/// The exceptional divisor whose ruling meets the fiber Y_i: S over the complement of i.
NamedGenerator complementary_exceptional(int i);
/// The ruling curve of an exceptional divisor.
NamedGenerator ruling_of(const NamedGenerator& exceptional_divisor);

/// Y1..Y4 then S123, S124, S134, S234.
std::vector<NamedGenerator> divisor_generators();
/// l123, l124, l134, l234.
std::vector<NamedGenerator> ruling_curves();
/// Lookup by serialized name ("Y2", "S134", "l234"); throws on unknown names.
NamedGenerator generator_by_name(const std::string& name);

/// D . l for a ruling curve l.
template <class Scalar>
Scalar curve_pairing(const MultiDegree<Scalar>& d, const NamedGenerator& curve) {
  Scalar sum(0);
  for (int k = 0; k < 4; ++k)
    if (!curve.type(k).is_zero()) sum += d(k) * Scalar(curve.type(k));
  return sum;
}

/// Polyhedral cone in the 4-dimensional divisor space, held both by its
/// generators and by inward facet normals f (f . g >= 0 on every generator).
class PolyhedralCone {
 public:
  /// Facets are derived exactly from the generators; the generators must
  /// span R^4.
  explicit PolyhedralCone(std::vector<Degree> generators);

  const std::vector<Degree>& generators() const { return generators_; }
  const std::vector<Degree>& facets() const { return facets_; }

  bool contains(const Degree& d) const;
  /// sup{x >= 0 : base - x * direction in the cone}. Requires base in the
  /// cone and direction nonzero with some facet decreasing along it.
  Rational threshold(const Degree& base, const Degree& direction) const;

 private:
  std::vector<Degree> generators_;
  std::vector<Degree> facets_;
};

/// Nef cone: spanned by the Y_i, i.e. the nonnegative orthant.
const PolyhedralCone& nef_cone();
/// Pseudo-effective cone: spanned by the Y_i and the S_ijk.
const PolyhedralCone& pseff_cone();

bool is_nef(const Degree& d);
bool is_pseff(const Degree& d);
Rational nef_threshold(const Degree& l, const Degree& f);
Rational pseff_threshold(const Degree& l, const Degree& f);

/// One u-interval of a threefold Zariski decomposition of -K_X - uF:
/// positive part P(u) and negative part N(u) = sum c(u) S.
struct ThreefoldChamber {
  Rational u_lo;
  Rational u_hi;
  DegreeU positive;
  std::vector<std::pair<NamedGenerator, Poly2>> negative;

  /// vol(-K_X - uF) on this chamber, i.e. P(u)^3.
  Poly2 volume() const { return self_cube(positive); }
  /// N(u) as a divisor type.
  DegreeU negative_type() const;
  /// Coefficient of a given exceptional divisor in N(u) (zero if absent).
  Poly2 negative_coefficient(const NamedGenerator& g) const;
};

struct ThreefoldZariski {
  NamedGenerator divisor;
  std::vector<ThreefoldChamber> chambers;
};

/// Zariski decomposition of -K_X - uY_i for u in [0, pseff threshold]. The
/// first wall is the nef threshold; past it the exceptional divisors whose
/// rulings become negative enter N with coefficients fixed by P . l = 0.
/// Every chamber is validated (P nef and N >= 0 at the endpoints, P . l = 0
/// on supp N, P + N = -K_X - uY); throws std::runtime_error otherwise.
ThreefoldZariski zariski_threefold(const NamedGenerator& fiber_class);

/// zariski_threefold for fibers. For an exceptional divisor -K_X - uS stays
/// nef up to its pseudo-effective threshold, giving a single chamber with
/// N = 0; other shapes are rejected.
ThreefoldZariski threefold_decomposition(const NamedGenerator& divisor);

/// Throws std::runtime_error describing the first violated chamber condition.
void validate(const ThreefoldZariski& z);

/// S_X(F) = (1 / (-K_X)^3) * integral of vol(-K_X - uF) du.
Rational expected_vanishing_order(const NamedGenerator& divisor);
/// beta(F) = A_X(F) - S_X(F) with A_X(F) = 1 for a prime divisor on X.
Rational beta(const NamedGenerator& divisor);

}  // namespace kstab::ambient
