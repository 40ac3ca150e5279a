#include "kstab/ambient.hpp"

#include "kstab/linalg.hpp"

#include <optional>
#include <stdexcept>

namespace kstab::ambient {

DegreeU to_poly(const Degree& d) {
  DegreeU out;
  for (int k = 0; k < 4; ++k) out(k) = Poly2(d(k));
  return out;
}

Degree eval_at(const DegreeU& d, const Rational& u) {
  Degree out;
  for (int k = 0; k < 4; ++k) out(k) = d(k).eval(u, Rational(0));
  return out;
}

std::string NamedGenerator::name() const {
  std::string out;
  switch (kind) {
    case GeneratorKind::fiber: out = "Y"; break;
    case GeneratorKind::exceptional: out = "S"; break;
    case GeneratorKind::ruling: out = "l"; break;
  }
  for (int s : slots) out += std::to_string(s);
  return out;
}

namespace {

void check_slot(int i) {
  if (i < 1 || i > 4) throw std::invalid_argument("factor index out of range: " + std::to_string(i));
}

int complement_slot(int i, int j, int k) {
  check_slot(i);
  check_slot(j);
  check_slot(k);
  if (!(i < j && j < k)) throw std::invalid_argument("expected 1 <= i < j < k <= 4");
  return 10 - i - j - k;
}

}  // namespace

NamedGenerator fiber(int i) {
  check_slot(i);
  Degree t = Degree::Constant(Rational(0));
  t(i - 1) = Rational(1);
  return {GeneratorKind::fiber, {i}, t};
}

NamedGenerator exceptional(int i, int j, int k) {
  int rest = complement_slot(i, j, k);
  Degree t = Degree::Constant(Rational(1));
  t(rest - 1) = Rational(-1);
  return {GeneratorKind::exceptional, {i, j, k}, t};
}

NamedGenerator ruling(int i, int j, int k) {
  int rest = complement_slot(i, j, k);
  Degree profile = Degree::Constant(Rational(0));
  profile(rest - 1) = Rational(1);
  return {GeneratorKind::ruling, {i, j, k}, profile};
}

NamedGenerator complementary_exceptional(int i) {
  check_slot(i);
  std::vector<int> rest;
  for (int s = 1; s <= 4; ++s)
    if (s != i) rest.push_back(s);
  return exceptional(rest[0], rest[1], rest[2]);
}

NamedGenerator ruling_of(const NamedGenerator& e) {
  if (e.kind != GeneratorKind::exceptional) throw std::invalid_argument(e.name() + " has no ruling");
  return ruling(e.slots[0], e.slots[1], e.slots[2]);
}

std::vector<NamedGenerator> divisor_generators() {
  return {fiber(1),           fiber(2),           fiber(3),           fiber(4),
          exceptional(1, 2, 3), exceptional(1, 2, 4), exceptional(1, 3, 4), exceptional(2, 3, 4)};
}

std::vector<NamedGenerator> ruling_curves() {
  return {ruling(1, 2, 3), ruling(1, 2, 4), ruling(1, 3, 4), ruling(2, 3, 4)};
}

NamedGenerator generator_by_name(const std::string& name) {
  for (const auto& g : divisor_generators())
    if (g.name() == name) return g;
  for (const auto& g : ruling_curves())
    if (g.name() == name) return g;
  throw std::invalid_argument("unknown generator: " + name);
}

// ---------------------------------------------------------------------------
// Cones

namespace {

// Normal to the hyperplane spanned by three vectors of R^4 (generalized cross
// product by cofactor expansion); zero if they are dependent.
Degree hyperplane_normal(const Degree& a, const Degree& b, const Degree& c) {
  Degree n;
  for (int col = 0; col < 4; ++col) {
    RMatrix minor(3, 3);
    int mc = 0;
    for (int k = 0; k < 4; ++k) {
      if (k == col) continue;
      minor(0, mc) = a(k);
      minor(1, mc) = b(k);
      minor(2, mc) = c(k);
      ++mc;
    }
    Rational det = determinant(minor);
    n(col) = (col % 2 == 0) ? det : -det;
  }
  return n;
}

Degree primitive(Degree n) {
  Rational scale;
  for (int k = 0; k < 4; ++k)
    if (!n(k).is_zero()) {
      scale = abs(n(k));
      break;
    }
  for (int k = 0; k < 4; ++k) n(k) /= scale;
  return n;
}

bool all_zero(const Degree& d) {
  for (int k = 0; k < 4; ++k)
    if (!d(k).is_zero()) return false;
  return true;
}

Rational dot(const Degree& a, const Degree& b) {
  Rational s;
  for (int k = 0; k < 4; ++k) s += a(k) * b(k);
  return s;
}

}  // namespace

PolyhedralCone::PolyhedralCone(std::vector<Degree> generators) : generators_(std::move(generators)) {
  const std::size_t n = generators_.size();
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b)
      for (std::size_t c = b + 1; c < n; ++c) {
        Degree normal = hyperplane_normal(generators_[a], generators_[b], generators_[c]);
        if (all_zero(normal)) continue;
        bool pos = false;
        bool neg = false;
        for (const Degree& g : generators_) {
          int s = dot(normal, g).sign();
          pos = pos || s > 0;
          neg = neg || s < 0;
        }
        if (pos && neg) continue;
        if (neg) normal = -normal;
        normal = primitive(normal);
        if (std::find(facets_.begin(), facets_.end(), normal) == facets_.end()) facets_.push_back(normal);
      }
  if (facets_.size() < 4) throw std::invalid_argument("PolyhedralCone: generators do not span R^4");
}

bool PolyhedralCone::contains(const Degree& d) const {
  return std::all_of(facets_.begin(), facets_.end(), [&d](const Degree& f) { return dot(f, d).sign() >= 0; });
}

Rational PolyhedralCone::threshold(const Degree& base, const Degree& direction) const {
  if (all_zero(direction)) throw std::invalid_argument("threshold: zero direction");
  if (!contains(base)) throw std::invalid_argument("threshold: base class lies outside the cone");
  std::optional<Rational> best;
  for (const Degree& f : facets_) {
    Rational rate = dot(f, direction);
    if (rate.sign() <= 0) continue;
    Rational x = dot(f, base) / rate;
    if (!best || x < *best) best = x;
  }
  if (!best) throw std::invalid_argument("threshold: unbounded along this direction");
  return *best;
}

const PolyhedralCone& nef_cone() {
  static const PolyhedralCone cone = [] {
    std::vector<Degree> gens;
    for (int i = 1; i <= 4; ++i) gens.push_back(fiber(i).type);
    return PolyhedralCone(std::move(gens));
  }();
  return cone;
}

const PolyhedralCone& pseff_cone() {
  static const PolyhedralCone cone = [] {
    std::vector<Degree> gens;
    for (const auto& g : divisor_generators()) gens.push_back(g.type);
    return PolyhedralCone(std::move(gens));
  }();
  return cone;
}

bool is_nef(const Degree& d) { return nef_cone().contains(d); }
bool is_pseff(const Degree& d) { return pseff_cone().contains(d); }
Rational nef_threshold(const Degree& l, const Degree& f) { return nef_cone().threshold(l, f); }
Rational pseff_threshold(const Degree& l, const Degree& f) { return pseff_cone().threshold(l, f); }

// ---------------------------------------------------------------------------
// Threefold Zariski decomposition

DegreeU ThreefoldChamber::negative_type() const {
  DegreeU sum = to_poly(Degree(Degree::Constant(Rational(0))));
  for (const auto& [g, c] : negative)
    for (int k = 0; k < 4; ++k) sum(k) += c * Poly2(g.type(k));
  return sum;
}

Poly2 ThreefoldChamber::negative_coefficient(const NamedGenerator& g) const {
  for (const auto& [h, c] : negative)
    if (h == g) return c;
  return Poly2();
}

namespace {

DegreeU family(const NamedGenerator& f) {
  DegreeU d = to_poly(anticanonical());
  for (int k = 0; k < 4; ++k) d(k) -= Poly2::u() * Poly2(f.type(k));
  return d;
}

}  // namespace

void validate(const ThreefoldZariski& z) {
  const DegreeU whole = family(z.divisor);
  auto fail = [&z](const std::string& what) {
    throw std::runtime_error("threefold Zariski decomposition of -K_X - u" + z.divisor.name() + ": " + what);
  };
  for (const ThreefoldChamber& ch : z.chambers) {
    std::string where = " on [" + ch.u_lo.str() + ", " + ch.u_hi.str() + "]";
    DegreeU recomposed = ch.positive + ch.negative_type();
    if (recomposed != whole) fail("P + N differs from the divisor" + where);
    for (const Rational& u : {ch.u_lo, ch.u_hi}) {
      if (!is_nef(eval_at(ch.positive, u))) fail("P not nef at u = " + u.str());
      for (const auto& [g, c] : ch.negative)
        if (c.eval(u, Rational(0)).sign() < 0) fail("negative coefficient of " + g.name() + " at u = " + u.str());
    }
    for (const auto& [g, c] : ch.negative) {
      if (g.kind != GeneratorKind::exceptional) fail("support may only contain exceptional divisors");
      if (!curve_pairing(ch.positive, ruling_of(g)).is_zero()) fail("P . " + ruling_of(g).name() + " != 0" + where);
    }
  }
  for (std::size_t k = 0; k + 1 < z.chambers.size(); ++k) {
    const Rational& wall = z.chambers[k].u_hi;
    if (wall != z.chambers[k + 1].u_lo) fail("chambers are not contiguous");
    if (eval_at(z.chambers[k].positive, wall) != eval_at(z.chambers[k + 1].positive, wall))
      fail("P jumps at u = " + wall.str());
  }
}

ThreefoldZariski zariski_threefold(const NamedGenerator& fiber_class) {
  if (fiber_class.kind != GeneratorKind::fiber) throw std::invalid_argument("zariski_threefold expects a fiber Y_i");
  const Degree minus_k = anticanonical();
  const Degree& f = fiber_class.type;
  const Rational nef_end = nef_threshold(minus_k, f);
  const Rational pseff_end = pseff_threshold(minus_k, f);
  const DegreeU whole = family(fiber_class);

  ThreefoldZariski z{fiber_class, {}};
  z.chambers.push_back({Rational(0), nef_end, whole, {}});

  if (nef_end < pseff_end) {
    // Exceptional divisors whose ruling pairs to zero at the wall and turns
    // negative past it.
    std::vector<NamedGenerator> support;
    for (const auto& g : divisor_generators()) {
      if (g.kind != GeneratorKind::exceptional) continue;
      NamedGenerator l = ruling_of(g);
      Poly2 pairing = curve_pairing(whole, l);
      if (pairing.eval(nef_end, Rational(0)).is_zero() && pairing.coeff(1, 0).sign() < 0) support.push_back(g);
    }
    if (support.empty()) throw std::runtime_error("zariski_threefold: no exceptional divisor enters past the nef wall");

    // Solve sum_S c_S (S . l_T) = (-K - uF) . l_T for T in the support.
    const auto n = static_cast<Eigen::Index>(support.size());
    RMatrix m(n, n);
    for (Eigen::Index r = 0; r < n; ++r)
      for (Eigen::Index c = 0; c < n; ++c)
        m(r, c) = curve_pairing(support[c].type, ruling_of(support[r]));
    RMatrix inv = inverse(m);

    ThreefoldChamber ch{nef_end, pseff_end, whole, {}};
    for (Eigen::Index s = 0; s < n; ++s) {
      Poly2 coeff;
      for (Eigen::Index r = 0; r < n; ++r) coeff += Poly2(inv(s, r)) * curve_pairing(whole, ruling_of(support[r]));
      ch.negative.emplace_back(support[s], coeff);
    }
    ch.positive = whole - ch.negative_type();
    z.chambers.push_back(std::move(ch));
  }
  validate(z);
  return z;
}

ThreefoldZariski threefold_decomposition(const NamedGenerator& divisor) {
  if (divisor.kind == GeneratorKind::fiber) return zariski_threefold(divisor);
  if (divisor.kind != GeneratorKind::exceptional) throw std::invalid_argument(divisor.name() + " is not a divisor");
  const Degree minus_k = anticanonical();
  const Rational nef_end = nef_threshold(minus_k, divisor.type);
  const Rational pseff_end = pseff_threshold(minus_k, divisor.type);
  if (nef_end != pseff_end)
    throw std::runtime_error("threefold_decomposition: -K_X - u" + divisor.name() + " leaves the nef cone early");
  ThreefoldZariski z{divisor, {{Rational(0), nef_end, family(divisor), {}}}};
  validate(z);
  return z;
}

Rational expected_vanishing_order(const NamedGenerator& divisor) {
  const Rational total_volume = self_cube(anticanonical());
  Rational integral;
  for (const ThreefoldChamber& ch : threefold_decomposition(divisor).chambers)
    integral += integrate_u(ch.volume(), ch.u_lo, ch.u_hi);
  return integral / total_volume;
}

Rational beta(const NamedGenerator& divisor) { return Rational(1) - expected_vanishing_order(divisor); }

}  // namespace kstab::ambient
