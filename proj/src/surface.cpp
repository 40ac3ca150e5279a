#include "kstab/surface.hpp"

#include "kstab/linalg.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

namespace kstab::surface {

namespace {

RVector rvec(std::initializer_list<Rational> xs) {
  RVector v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (const Rational& x : xs) v(i++) = x;
  return v;
}

}  // namespace

DPLattice::DPLattice(std::string name, std::vector<std::string> basis_names, RMatrix gram, RVector anticanonical,
                     std::vector<NamedClass> negative_curves, std::vector<NamedClass> extra_classes)
    : name_(std::move(name)),
      basis_names_(std::move(basis_names)),
      gram_(std::move(gram)),
      anticanonical_(std::move(anticanonical)),
      negative_curves_(std::move(negative_curves)),
      extra_classes_(std::move(extra_classes)) {
  auto fail = [this](const std::string& what) { throw std::invalid_argument("DPLattice " + name_ + ": " + what); };
  const Eigen::Index n = gram_.rows();
  if (gram_.cols() != n) fail("gram is not square");
  if (static_cast<Eigen::Index>(basis_names_.size()) != n) fail("basis name count differs from rank");
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      if (gram_(i, j) != gram_(j, i)) fail("gram is not symmetric");
  if (anticanonical_.size() != n) fail("anticanonical has wrong length");
  if (pair(anticanonical_, anticanonical_) != Rational(6)) fail("(-K)^2 != 6");
  for (const NamedClass& e : negative_curves_) {
    if (e.coords.size() != n) fail(e.name + " has wrong length");
    if (pair(e.coords, e.coords).sign() >= 0) fail(e.name + " is not negative");
    if (pair(anticanonical_, e.coords) != Rational(1)) fail("-K . " + e.name + " != 1");
  }
  for (const NamedClass& c : extra_classes_)
    if (c.coords.size() != n) fail(c.name + " has wrong length");
}

std::vector<NamedClass> DPLattice::named_classes() const {
  std::vector<NamedClass> out{{"-K", anticanonical_}};
  out.insert(out.end(), negative_curves_.begin(), negative_curves_.end());
  out.insert(out.end(), extra_classes_.begin(), extra_classes_.end());
  return out;
}

const RVector& DPLattice::coords(const std::string& class_name) const {
  if (class_name == "-K") return anticanonical_;
  for (const auto* list : {&negative_curves_, &extra_classes_})
    for (const NamedClass& c : *list)
      if (c.name == class_name) return c.coords;
  throw std::invalid_argument("DPLattice " + name_ + ": unknown class " + class_name);
}

RMatrix DPLattice::support_gram(const std::vector<int>& support) const {
  const auto k = static_cast<Eigen::Index>(support.size());
  RMatrix g(k, k);
  for (Eigen::Index a = 0; a < k; ++a)
    for (Eigen::Index b = 0; b < k; ++b)
      g(a, b) = pair(negative_curves_[support[a]].coords, negative_curves_[support[b]].coords);
  return g;
}

std::string DPLattice::table() const {
  std::ostringstream os;
  auto row = [&os](const RVector& x) {
    for (Eigen::Index i = 0; i < x.size(); ++i) os << (i ? " " : "") << x(i).str();
  };
  os << "lattice " << name_ << "\n";
  os << "basis";
  for (const auto& b : basis_names_) os << " " << b;
  os << "\ngram\n";
  for (Eigen::Index i = 0; i < gram_.rows(); ++i) {
    row(gram_.row(i).transpose());
    os << "\n";
  }
  os << "anticanonical ";
  row(anticanonical_);
  os << "\n";
  for (const NamedClass& e : negative_curves_) {
    os << "negative " << e.name << " = ";
    row(e.coords);
    os << "\n";
  }
  for (const NamedClass& c : extra_classes_) {
    os << "class " << c.name << " = ";
    row(c.coords);
    os << "\n";
  }
  return os.str();
}

const DPLattice& smooth_lattice() {
  static const DPLattice lattice = [] {
    RMatrix gram = RMatrix::Zero(4, 4);
    gram(0, 0) = Rational(1);
    for (int i = 1; i < 4; ++i) gram(i, i) = Rational(-1);
    std::vector<NamedClass> hexagon{
        {"e1", rvec({0, 1, 0, 0})},        {"e2", rvec({0, 0, 1, 0})},        {"e3", rvec({0, 0, 0, 1})},
        {"L-e1-e2", rvec({1, -1, -1, 0})}, {"L-e1-e3", rvec({1, -1, 0, -1})}, {"L-e2-e3", rvec({1, 0, -1, -1})},
    };
    std::vector<NamedClass> conics{
        {"L-e1", rvec({1, -1, 0, 0})}, {"L-e2", rvec({1, 0, -1, 0})}, {"L-e3", rvec({1, 0, 0, -1})}};
    return DPLattice("SMOOTH", {"L", "e1", "e2", "e3"}, gram, rvec({3, -1, -1, -1}), hexagon, conics);
  }();
  return lattice;
}

const DPLattice& singular_lattice() {
  static const DPLattice lattice = [] {
    RMatrix gram(3, 3);
    // E1 passes through the A1 point, hence E1^2 = -1/2.
    gram << Rational(6), Rational(2), Rational(1),  //
        Rational(2), Rational(0), Rational(1),      //
        Rational(1), Rational(1), Rational(-1, 2);
    return DPLattice("SING", {"-K", "Z", "E1"}, gram, rvec({1, 0, 0}), {{"E1", rvec({0, 0, 1})}},
                     {{"Z", rvec({0, 1, 0})}});
  }();
  return lattice;
}

const DPLattice& lattice_preset(const std::string& name) {
  if (name == "SMOOTH") return smooth_lattice();
  if (name == "SING") return singular_lattice();
  throw std::invalid_argument("unknown lattice preset: " + name);
}

SurfaceClass lift(const RVector& coords) { return to_poly(coords); }

Poly2 intersect(const SurfaceClass& a, const SurfaceClass& b, const DPLattice& lattice) {
  if (a.size() != lattice.rank() || b.size() != lattice.rank())
    throw std::invalid_argument("intersect: class does not live on lattice " + lattice.name());
  return bilinear(a, lattice.gram(), b);
}

Rational intersect(const RVector& a, const RVector& b, const DPLattice& lattice) {
  if (a.size() != lattice.rank() || b.size() != lattice.rank())
    throw std::invalid_argument("intersect: class does not live on lattice " + lattice.name());
  return lattice.pair(a, b);
}

// ---------------------------------------------------------------------------
// Exact point algorithm

namespace {

// Coefficients c solving sum_F c_F (F . E) = D . E for E in the support.
template <class Scalar>
std::vector<Scalar> solve_support(const Vec<Scalar>& d, const DPLattice& lattice, const std::vector<int>& support) {
  const auto k = static_cast<Eigen::Index>(support.size());
  if (k == 0) return {};
  RMatrix inv = inverse(lattice.support_gram(support));
  std::vector<Scalar> rhs;
  for (int e : support) {
    Vec<Scalar> curve(lattice.rank());
    const RVector& c = lattice.negative_curves()[e].coords;
    for (Eigen::Index i = 0; i < c.size(); ++i) curve(i) = Scalar(c(i));
    rhs.push_back(bilinear(d, lattice.gram(), curve));
  }
  std::vector<Scalar> coeffs;
  for (Eigen::Index a = 0; a < k; ++a) {
    Scalar sum(0);
    for (Eigen::Index b = 0; b < k; ++b)
      if (!inv(a, b).is_zero()) sum += Scalar(inv(a, b)) * rhs[b];
    coeffs.push_back(sum);
  }
  return coeffs;
}

template <class Scalar>
Vec<Scalar> subtract_support(Vec<Scalar> d, const DPLattice& lattice, const std::vector<int>& support,
                             const std::vector<Scalar>& coeffs) {
  for (std::size_t s = 0; s < support.size(); ++s) {
    const RVector& c = lattice.negative_curves()[support[s]].coords;
    for (Eigen::Index i = 0; i < c.size(); ++i)
      if (!c(i).is_zero()) d(i) -= coeffs[s] * Scalar(c(i));
  }
  return d;
}

}  // namespace

PointDecomposition zariski_at_point(const RVector& d, const DPLattice& lattice, Growth growth,
                                    const std::vector<int>& priority) {
  if (d.size() != lattice.rank()) throw std::invalid_argument("zariski_at_point: class has wrong length");
  const int curves = static_cast<int>(lattice.negative_curves().size());
  std::vector<int> order = priority;
  if (order.empty())
    for (int e = 0; e < curves; ++e) order.push_back(e);

  PointDecomposition out;
  std::vector<int> support;
  std::vector<Rational> coeffs;
  RVector p = d;
  for (int round = 0;; ++round) {
    if (!negative_definite(lattice.support_gram(support))) {
      out.support = support;
      out.positive = p;
      out.rounds = round;
      return out;  // not big
    }
    coeffs = solve_support(d, lattice, support);
    p = subtract_support(d, lattice, support, coeffs);

    std::vector<int> entering;
    for (int e : order) {
      if (std::find(support.begin(), support.end(), e) != support.end()) continue;
      if (lattice.pair(p, lattice.negative_curves()[e].coords).sign() < 0) entering.push_back(e);
    }
    if (entering.empty()) {
      out.rounds = round;
      break;
    }
    if (round >= curves) throw std::runtime_error("zariski_at_point: support growth did not stabilize");
    if (growth == Growth::sequential) entering.resize(1);
    support.insert(support.end(), entering.begin(), entering.end());
    std::sort(support.begin(), support.end());
  }

  for (const Rational& c : coeffs)
    if (c.sign() < 0) throw std::runtime_error("zariski_at_point: negative coefficient in N; bad lattice data");

  out.support = support;
  out.coefficients = coeffs;
  out.positive = p;
  Rational self = lattice.pair(p, p);
  out.big = self.sign() > 0 && lattice.pair(p, lattice.anticanonical()).sign() > 0;
  out.volume = out.big ? self : Rational(0);
  return out;
}

// ---------------------------------------------------------------------------
// Parametric decomposition

namespace {

struct SymbolicPart {
  SurfaceClass positive;
  std::vector<Poly2> coefficients;
};

SymbolicPart symbolic_part(const SurfaceClass& d, const DPLattice& lattice, const std::vector<int>& support) {
  std::vector<Poly2> coeffs = solve_support(d, lattice, support);
  return {subtract_support(d, lattice, support, coeffs), coeffs};
}

// Scale an affine function so that equal lines compare equal.
Poly2 normalize_wall(const Poly2& f) {
  Rational lead = f.coeff(0, 1);
  if (lead.is_zero()) lead = f.coeff(1, 0);
  return f * Poly2(Rational(1) / lead);
}

std::vector<std::vector<int>> negative_definite_supports(const DPLattice& lattice) {
  const int curves = static_cast<int>(lattice.negative_curves().size());
  if (curves > 16) throw std::invalid_argument("too many negative curves to enumerate supports");
  std::vector<std::vector<int>> out;
  for (unsigned mask = 0; mask < (1u << curves); ++mask) {
    std::vector<int> support;
    for (int e = 0; e < curves; ++e)
      if (mask & (1u << e)) support.push_back(e);
    if (negative_definite(lattice.support_gram(support))) out.push_back(std::move(support));
  }
  return out;
}

std::vector<Poly2> candidate_walls(const SurfaceClass& d, const DPLattice& lattice) {
  std::vector<Poly2> walls;
  auto add = [&walls](const Poly2& f) {
    if (f.is_constant()) return;
    Poly2 w = normalize_wall(f);
    if (std::find(walls.begin(), walls.end(), w) == walls.end()) walls.push_back(w);
  };
  const std::vector<NamedClass> named = lattice.named_classes();
  for (const auto& support : negative_definite_supports(lattice)) {
    SymbolicPart part = symbolic_part(d, lattice, support);
    for (const Poly2& c : part.coefficients) add(c);
    for (const NamedClass& cls : named) add(intersect(part.positive, lift(cls.coords), lattice));
  }
  return walls;
}

bool is_zero_class(const SurfaceClass& d) {
  for (Eigen::Index i = 0; i < d.size(); ++i)
    if (!d(i).is_zero()) return false;
  return true;
}

}  // namespace

const SurfaceChamber* SurfaceZariski::locate(const Rational& u, const Rational& v) const {
  for (const SurfaceChamber& ch : chambers)
    if (ch.region.contains(u, v)) return &ch;
  return nullptr;
}

SurfaceZariski zariski_surface(const SurfaceClass& d, const DPLattice& lattice, const Region& box) {
  if (d.size() != lattice.rank()) throw std::invalid_argument("zariski_surface: class has wrong length");
  for (Eigen::Index i = 0; i < d.size(); ++i)
    if (!d(i).is_affine()) throw std::invalid_argument("zariski_surface: coefficients must be affine in (u, v)");

  SurfaceZariski z;
  z.divisor = d;
  if (is_zero_class(d) || box.degenerate()) return z;

  z.walls = candidate_walls(d, lattice);
  std::vector<Region> cells{box};
  for (const Poly2& wall : z.walls) {
    std::vector<Region> next;
    for (const Region& cell : cells)
      for (Region& piece : split_region(cell, wall)) next.push_back(std::move(piece));
    cells = std::move(next);
  }

  // Label each cell with its support; -1 marks "not big".
  std::vector<std::pair<Region, std::vector<int>>> labelled;
  const std::vector<int> not_big{-1};
  for (Region& cell : cells) {
    Point2 p = cell.interior_point();
    PointDecomposition pd = zariski_at_point(eval_at(d, p.u, p.v), lattice);
    labelled.emplace_back(std::move(cell), pd.big ? pd.support : not_big);
  }

  for (auto& [region, support] : merge_regions(std::move(labelled))) {
    if (support == not_big) {
      z.outside.push_back(region);
      continue;
    }
    SymbolicPart part = symbolic_part(d, lattice, support);
    z.chambers.push_back({region, support, part.positive, part.coefficients});
  }
  validate(z, lattice);
  return z;
}

void validate(const SurfaceZariski& z, const DPLattice& lattice) {
  const auto& curves = lattice.negative_curves();
  for (const SurfaceChamber& ch : z.chambers) {
    auto fail = [&ch](const std::string& what) {
      throw std::runtime_error("surface Zariski chamber " + ch.region.str() + ": " + what);
    };
    if (!negative_definite(lattice.support_gram(ch.support))) fail("support is not negative definite");
    SurfaceClass recomposed = ch.positive;
    for (std::size_t s = 0; s < ch.support.size(); ++s)
      recomposed += lift(curves[ch.support[s]].coords) * ch.coefficients[s];
    if (recomposed != z.divisor) fail("P + N differs from D");
    for (int e : ch.support)
      if (!intersect(ch.positive, lift(curves[e].coords), lattice).is_zero()) fail("P . " + curves[e].name + " != 0");
    const Poly2 self = intersect(ch.positive, ch.positive, lattice);
    const Poly2 degree = intersect(ch.positive, lift(lattice.anticanonical()), lattice);
    for (const Point2& vx : ch.region.vertices()) {
      std::string at = " at (" + vx.u.str() + ", " + vx.v.str() + ")";
      for (const NamedClass& e : curves)
        if (intersect(ch.positive, lift(e.coords), lattice).eval(vx.u, vx.v).sign() < 0)
          fail("P . " + e.name + " < 0" + at);
      for (const Poly2& c : ch.coefficients)
        if (c.eval(vx.u, vx.v).sign() < 0) fail("negative N coefficient" + at);
      if (self.eval(vx.u, vx.v).sign() < 0) fail("P^2 < 0" + at);
      if (degree.eval(vx.u, vx.v).sign() < 0) fail("P . (-K) < 0" + at);
    }
  }
}

std::vector<VolumePiece> vol_surface(const SurfaceClass& d, const DPLattice& lattice, const Region& box) {
  std::vector<VolumePiece> out;
  for (const SurfaceChamber& ch : zariski_surface(d, lattice, box).chambers)
    out.push_back({ch.region, ch.volume(lattice)});
  return out;
}

}  // namespace kstab::surface
