#include "kstab/region.hpp"

#include <algorithm>
#include <optional>
#include <stdexcept>

namespace kstab {

namespace {

void require_u_affine(const Poly2& p, const char* which) {
  if (!p.is_affine() || p.depends_on_v())
    throw std::invalid_argument(std::string("Region: ") + which + " must be affine in u, got " + p.str());
}

// Root of the affine u-polynomial a + b*u strictly inside (lo, hi), if any.
std::optional<Rational> interior_root(const Poly2& p, const Rational& lo, const Rational& hi) {
  Rational b = p.coeff(1, 0);
  if (b.is_zero()) return std::nullopt;
  Rational root = -p.coeff(0, 0) / b;
  if (lo < root && root < hi) return root;
  return std::nullopt;
}

}  // namespace

Region::Region(Rational u_lo, Rational u_hi, Poly2 v_lo, Poly2 v_hi)
    : u_lo_(std::move(u_lo)), u_hi_(std::move(u_hi)), v_lo_(std::move(v_lo)), v_hi_(std::move(v_hi)) {
  if (u_hi_ < u_lo_) throw std::invalid_argument("Region: u_lo > u_hi");
  require_u_affine(v_lo_, "v_lo");
  require_u_affine(v_hi_, "v_hi");
  if (v_hi_at(u_lo_) < v_lo_at(u_lo_) || v_hi_at(u_hi_) < v_lo_at(u_hi_))
    throw std::invalid_argument("Region: v_lo(u) > v_hi(u) on " + str());
}

Region Region::box(const Rational& u_lo, const Rational& u_hi, const Rational& v_lo, const Rational& v_hi) {
  return Region(u_lo, u_hi, Poly2(v_lo), Poly2(v_hi));
}

bool Region::degenerate() const {
  if (u_lo_ == u_hi_) return true;
  return v_lo_at(u_lo_) == v_hi_at(u_lo_) && v_lo_at(u_hi_) == v_hi_at(u_hi_);
}

std::array<Point2, 4> Region::vertices() const {
  return {Point2{u_lo_, v_lo_at(u_lo_)}, Point2{u_lo_, v_hi_at(u_lo_)}, Point2{u_hi_, v_lo_at(u_hi_)},
          Point2{u_hi_, v_hi_at(u_hi_)}};
}

Point2 Region::interior_point() const {
  Rational mid = (u_lo_ + u_hi_) / Rational(2);
  return {mid, (v_lo_at(mid) + v_hi_at(mid)) / Rational(2)};
}

bool Region::contains(const Rational& u, const Rational& v) const {
  return u_lo_ <= u && u <= u_hi_ && v_lo_at(u) <= v && v <= v_hi_at(u);
}

std::string Region::str() const {
  return "{" + u_lo_.str() + " <= u <= " + u_hi_.str() + ", " + v_lo_.str() + " <= v <= " + v_hi_.str() + "}";
}

Rational integrate_region(const Poly2& p, const Region& r) {
  if (p.is_zero() || r.u_lo() == r.u_hi()) return Rational(0);
  Poly2 inner = p.antiderivative_v();
  Poly2 in_u = inner.substitute_v(r.v_hi()) - inner.substitute_v(r.v_lo());
  Poly2 outer = in_u.antiderivative_u();
  return outer.eval(r.u_hi(), Rational(0)) - outer.eval(r.u_lo(), Rational(0));
}

bool crosses(const Region& r, const Poly2& affine) {
  bool pos = false;
  bool neg = false;
  for (const Point2& p : r.vertices()) {
    int s = affine.eval(p.u, p.v).sign();
    pos = pos || s > 0;
    neg = neg || s < 0;
  }
  return pos && neg;
}

std::vector<Region> split_at_u(const Region& r, const Rational& u) {
  if (!(r.u_lo() < u && u < r.u_hi())) return {r};
  std::vector<Region> out;
  for (Region piece : {Region(r.u_lo(), u, r.v_lo(), r.v_hi()), Region(u, r.u_hi(), r.v_lo(), r.v_hi())})
    if (!piece.degenerate()) out.push_back(std::move(piece));
  return out;
}

std::vector<Region> split_region(const Region& r, const Poly2& f) {
  if (!f.is_affine()) throw std::invalid_argument("split_region: wall must be affine, got " + f.str());
  if (!crosses(r, f)) return {r};

  Rational c = f.coeff(0, 1);
  if (c.is_zero()) {
    Rational b = f.coeff(1, 0);
    return split_at_u(r, -f.coeff(0, 0) / b);
  }

  // Wall as a graph v = line(u).
  Poly2 line = Poly2::affine(-f.coeff(0, 0) / c, -f.coeff(1, 0) / c, Rational(0));

  std::vector<Rational> cuts{r.u_lo()};
  for (const Poly2& gap : {line - r.v_lo(), line - r.v_hi()})
    if (auto root = interior_root(gap, r.u_lo(), r.u_hi())) cuts.push_back(*root);
  cuts.push_back(r.u_hi());
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  std::vector<Region> out;
  auto keep = [&out](Region piece) {
    if (!piece.degenerate()) out.push_back(std::move(piece));
  };
  for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
    Region slab(cuts[k], cuts[k + 1], r.v_lo(), r.v_hi());
    if (slab.degenerate()) continue;
    Rational mid = (cuts[k] + cuts[k + 1]) / Rational(2);
    Rational at = line.eval(mid, Rational(0));
    if (slab.v_lo_at(mid) < at && at < slab.v_hi_at(mid)) {
      keep(Region(cuts[k], cuts[k + 1], r.v_lo(), line));
      keep(Region(cuts[k], cuts[k + 1], line, r.v_hi()));
    } else {
      keep(std::move(slab));
    }
  }
  return out;
}

std::vector<Region> intersect_regions(const Region& a, const Region& b) {
  if (a.u_hi() <= b.u_lo() || b.u_hi() <= a.u_lo()) return {};
  const Poly2 u = Poly2::u();
  const Poly2 v = Poly2::v();
  std::vector<Region> pieces{a};
  for (const Poly2& wall : {u - Poly2(b.u_lo()), u - Poly2(b.u_hi()), v - b.v_lo(), v - b.v_hi()}) {
    std::vector<Region> next;
    for (const Region& piece : pieces)
      for (Region& sub : split_region(piece, wall)) next.push_back(std::move(sub));
    pieces = std::move(next);
  }
  std::vector<Region> out;
  for (Region& piece : pieces) {
    Point2 p = piece.interior_point();
    if (b.contains(p.u, p.v)) out.push_back(std::move(piece));
  }
  return out;
}

}  // namespace kstab
