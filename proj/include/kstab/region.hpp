#pragma once

#include "kstab/poly2.hpp"
#include "kstab/rational.hpp"

#include <array>
#include <string>
#include <utility>
#include <vector>

namespace kstab {

/// A point (u, v) of the parameter plane.
struct Point2 {
  Rational u;
  Rational v;
};

/// Integration chamber {u_lo <= u <= u_hi, v_lo(u) <= v <= v_hi(u)} whose
/// v-bounds are affine functions of u alone.
///
/// The constructor rejects non-affine or v-dependent bounds and bounds that
/// cross inside [u_lo, u_hi]; since the bounds are affine, checking the two
/// endpoints is enough.
class Region {
 public:
  Region(Rational u_lo, Rational u_hi, Poly2 v_lo, Poly2 v_hi);

  /// Axis-aligned box [u_lo, u_hi] x [v_lo, v_hi].
  static Region box(const Rational& u_lo, const Rational& u_hi, const Rational& v_lo, const Rational& v_hi);

  const Rational& u_lo() const { return u_lo_; }
  const Rational& u_hi() const { return u_hi_; }
  const Poly2& v_lo() const { return v_lo_; }
  const Poly2& v_hi() const { return v_hi_; }

  Rational v_lo_at(const Rational& u) const { return v_lo_.eval(u, Rational(0)); }
  Rational v_hi_at(const Rational& u) const { return v_hi_.eval(u, Rational(0)); }

  /// True when the region has zero area.
  bool degenerate() const;
  /// Corners in the order (u_lo, v_lo), (u_lo, v_hi), (u_hi, v_lo), (u_hi, v_hi).
  std::array<Point2, 4> vertices() const;
  /// A rational point strictly inside a non-degenerate region.
  Point2 interior_point() const;
  /// Closed-set membership.
  bool contains(const Rational& u, const Rational& v) const;

  std::string str() const;

  friend bool operator==(const Region&, const Region&) = default;

 private:
  Rational u_lo_;
  Rational u_hi_;
  Poly2 v_lo_;
  Poly2 v_hi_;
};

/// Exact value of the iterated integral of p over the region (inner in v).
Rational integrate_region(const Poly2& p, const Region& r);

/// Sign pattern of an affine function over a region's vertices.
/// Returns true iff f takes both strictly positive and strictly negative
/// values on the region.
bool crosses(const Region& r, const Poly2& affine);

/// Splits r along the zero line of an affine function of (u, v). Every
/// returned piece is non-degenerate and f has constant (weak) sign on it.
/// Returns {r} when the line misses the interior.
std::vector<Region> split_region(const Region& r, const Poly2& affine);

/// Splits r at an interior u value; returns {r} if u is not interior.
std::vector<Region> split_at_u(const Region& r, const Rational& u);

/// Non-degenerate pieces covering the intersection of two regions.
std::vector<Region> intersect_regions(const Region& a, const Region& b);

/// Merges a list of labelled regions: pieces with equal labels are fused
/// when they stack in v over the same u-interval or abut in u with identical
/// bounds. Repeats until no merge applies. Order of the result is sorted by
/// (u_lo, v_lo at the left edge).
template <class Label>
std::vector<std::pair<Region, Label>> merge_regions(std::vector<std::pair<Region, Label>> pieces);

}  // namespace kstab

#include "kstab/region_merge.ipp"
