#pragma once

// Intersection lattices of sextic del Pezzo fibers and parametric Zariski
// decomposition of affine two-parameter families D(u, v) on them.

#include "kstab/eigen_scalar.hpp"
#include "kstab/poly2.hpp"
#include "kstab/region.hpp"

#include <Eigen/Core>

#include <string>
#include <utility>
#include <vector>

namespace kstab::surface {

/// Divisor class on a fiber, coordinates in the lattice basis.
using SurfaceClass = PVector;

struct NamedClass {
  std::string name;
  RVector coords;
};

/// Numerical intersection data of a del Pezzo surface of degree 6.
///
/// `negative_curves` must list every irreducible curve of negative
/// self-intersection: nefness is tested against them, and the Zariski
/// support is drawn from them. `extra_classes` are further named classes
/// (conic fibrations and the like) used for reports and chamber walls.
class DPLattice {
 public:
  DPLattice(std::string name, std::vector<std::string> basis_names, RMatrix gram, RVector anticanonical,
            std::vector<NamedClass> negative_curves, std::vector<NamedClass> extra_classes = {});

  const std::string& name() const { return name_; }
  Eigen::Index rank() const { return gram_.rows(); }
  const std::vector<std::string>& basis_names() const { return basis_names_; }
  const RMatrix& gram() const { return gram_; }
  const RVector& anticanonical() const { return anticanonical_; }
  const std::vector<NamedClass>& negative_curves() const { return negative_curves_; }
  const std::vector<NamedClass>& extra_classes() const { return extra_classes_; }

  /// -K, the negative curves and the extra classes, in that order.
  std::vector<NamedClass> named_classes() const;
  /// Throws std::invalid_argument on an unknown name.
  const RVector& coords(const std::string& class_name) const;

  Rational pair(const RVector& a, const RVector& b) const { return bilinear(a, gram_, b); }
  /// Gram matrix restricted to a subset of negative curves.
  RMatrix support_gram(const std::vector<int>& support) const;

  /// Plain-text table: basis, gram entries as "p/q", -K, named classes.
  std::string table() const;

 private:
  std::string name_;
  std::vector<std::string> basis_names_;
  RMatrix gram_;
  RVector anticanonical_;
  std::vector<NamedClass> negative_curves_;
  std::vector<NamedClass> extra_classes_;
};

/// Smooth sextic del Pezzo: basis (L, e1, e2, e3), hexagon of (-1)-curves.
const DPLattice& smooth_lattice();
/// A1-singular sextic del Pezzo: basis (-K, Z, E1) with E1^2 = -1/2.
const DPLattice& singular_lattice();
/// "SMOOTH" or "SING".
const DPLattice& lattice_preset(const std::string& name);

SurfaceClass lift(const RVector& coords);

/// a^T G b. Throws std::invalid_argument if a dimension does not match.
Poly2 intersect(const SurfaceClass& a, const SurfaceClass& b, const DPLattice& lattice);
Rational intersect(const RVector& a, const RVector& b, const DPLattice& lattice);

/// How the support grows when several curves pair negatively at once.
enum class Growth {
  simultaneous,  ///< add every negatively-paired curve in one round
  sequential,    ///< add only the first one, in the given priority order
};

/// Exact Zariski decomposition at one rational parameter point.
struct PointDecomposition {
  bool big = false;
  std::vector<int> support;        ///< indices into negative_curves(), sorted
  std::vector<Rational> coefficients;  ///< N coefficients, parallel to support
  RVector positive;
  Rational volume;  ///< P^2 when big, else 0
  int rounds = 0;
};

/// Grows the negative support from empty until P . E >= 0 for every negative
/// curve. D is declared not big when the support stops being negative
/// definite or P fails P^2 > 0, P.(-K) > 0. Throws std::runtime_error if the
/// loop needs more rounds than there are negative curves.
PointDecomposition zariski_at_point(const RVector& d, const DPLattice& lattice,
                                    Growth growth = Growth::simultaneous, const std::vector<int>& priority = {});

/// One chamber of a parametric decomposition: on `region`,
/// D = P + sum c_E E with the given support.
struct SurfaceChamber {
  Region region;
  std::vector<int> support;
  SurfaceClass positive;
  std::vector<Poly2> coefficients;  ///< parallel to support

  /// P(u, v)^2
  Poly2 volume(const DPLattice& lattice) const { return intersect(positive, positive, lattice); }
};

struct SurfaceZariski {
  SurfaceClass divisor;
  std::vector<SurfaceChamber> chambers;  ///< chambers where D is big, sorted
  std::vector<Region> outside;           ///< pieces of the box where D is not big
  std::vector<Poly2> walls;              ///< affine wall functions used for the subdivision

  /// The chamber containing (u, v), or nullptr if D is not big there.
  const SurfaceChamber* locate(const Rational& u, const Rational& v) const;
};

/// Symbolic decomposition of an affine family D(u, v) over `box`.
///
/// Candidate walls are the zero lines of c_E, of P . E' for curves outside
/// the support, and of P . C for the named classes, taken over every
/// negative-definite subset of negative curves. The box is cut along all of
/// them; each cell is classified by the exact point algorithm at an interior
/// rational point; equal-support cells are merged; every chamber is then
/// validated at its vertices.
SurfaceZariski zariski_surface(const SurfaceClass& d, const DPLattice& lattice, const Region& box);

/// Throws std::runtime_error on the first violated chamber condition.
void validate(const SurfaceZariski& z, const DPLattice& lattice);

/// P^2 per chamber; zero outside the listed regions.
struct VolumePiece {
  Region region;
  Poly2 volume;
};
std::vector<VolumePiece> vol_surface(const SurfaceClass& d, const DPLattice& lattice, const Region& box);

/// Floating-point re-run of the support-growth loop at a single point,
/// written against Eigen's double decompositions and sharing no code with
/// the exact path.
struct NumericZariski {
  bool big = false;
  double volume = 0.0;
  Eigen::VectorXd coefficients;  ///< one entry per negative curve (0 outside the support)
};

NumericZariski numeric_zariski_oracle(const Eigen::VectorXd& d, const DPLattice& lattice, double tol = 1e-9);
NumericZariski numeric_zariski_oracle(const SurfaceClass& d, const DPLattice& lattice, double u, double v,
                                      double tol = 1e-9);

}  // namespace kstab::surface
