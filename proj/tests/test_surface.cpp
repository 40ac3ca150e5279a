#include "kstab/surface.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <algorithm>
#include <random>

using namespace kstab;
using namespace kstab::surface;

namespace {

Rational R(long long p, long long q = 1) { return Rational(p, q); }

const Poly2 U = Poly2::u();
const Poly2 V = Poly2::v();

int curve_index(const DPLattice& lattice, const std::string& name) {
  const auto& curves = lattice.negative_curves();
  for (std::size_t i = 0; i < curves.size(); ++i)
    if (curves[i].name == name) return static_cast<int>(i);
  FAIL("no curve " << name);
  return -1;
}

// a(u, v) (-K) - b(u, v) Z
SurfaceClass family(const DPLattice& lattice, const std::string& z, const Poly2& a, const Poly2& b) {
  return lift(lattice.anticanonical()) * a - lift(lattice.coords(z)) * b;
}

RVector random_class(std::mt19937& rng, const DPLattice& lattice) {
  RVector d = lattice.anticanonical() * kstab::testing::random_rational(rng, 0, 2);
  for (const auto& e : lattice.negative_curves()) d += e.coords * kstab::testing::random_rational(rng, 0, 2);
  for (const auto& c : lattice.extra_classes()) d -= c.coords * kstab::testing::random_rational(rng, 0, 1);
  return d;
}

}  // namespace

TEST_CASE("lattice presets") {
  const DPLattice& smooth = smooth_lattice();
  const DPLattice& sing = singular_lattice();
  const RVector& k = smooth.anticanonical();
  CHECK(intersect(k, k, smooth) == R(6));
  CHECK(intersect(sing.anticanonical(), sing.anticanonical(), sing) == R(6));
  CHECK(smooth.pair(smooth.coords("L-e1"), smooth.coords("L-e1")) == R(0));
  CHECK(sing.pair(sing.coords("Z"), sing.coords("Z")) == R(0));
  CHECK(sing.pair(sing.coords("E1"), sing.coords("E1")) == R(-1, 2));
  for (const auto* l : {&smooth, &sing}) {
    // Z is a conic: Z^2 = 0 and -K . Z = 2.
    const char* z = l == &smooth ? "L-e1" : "Z";
    CHECK(l->pair(l->anticanonical(), l->coords(z)) == R(2));
  }
  CHECK(&lattice_preset("SING") == &sing);
  CHECK_THROWS_AS(lattice_preset("DP5"), std::invalid_argument);
  CHECK_THROWS_AS(smooth.coords("e4"), std::invalid_argument);
  CHECK_THROWS_AS(intersect(sing.anticanonical(), k, smooth), std::invalid_argument);

  RMatrix bad = RMatrix::Identity(2, 2);
  RVector k2(2);
  k2 << R(1), R(1);
  CHECK_THROWS_AS(DPLattice("BAD", {"a", "b"}, bad, k2, {}), std::invalid_argument);

  std::string table = sing.table();
  CHECK(table.find("lattice SING") != std::string::npos);
  CHECK(table.find("1 1 -1/2") != std::string::npos);
  CHECK(table.find("negative E1 = 0 0 1") != std::string::npos);
}

TEST_CASE("hexagon of (-1)-curves") {
  const DPLattice& smooth = smooth_lattice();
  const auto& hex = smooth.negative_curves();
  REQUIRE(hex.size() == 6);
  for (const auto& e : hex) {
    CHECK(smooth.pair(e.coords, e.coords) == R(-1));
    int neighbours = 0;
    for (const auto& f : hex) {
      if (&e == &f) continue;
      Rational x = smooth.pair(e.coords, f.coords);
      CHECK((x == R(0) || x == R(1)));
      neighbours += x == R(1) ? 1 : 0;
    }
    CHECK(neighbours == 2);
  }
  int met = 0;
  for (const auto& e : hex) met += smooth.pair(smooth.coords("L-e1"), e.coords) == R(1) ? 1 : 0;
  CHECK(met == 2);
}

TEST_CASE("zariski_at_point") {
  const DPLattice& smooth = smooth_lattice();
  RVector d = smooth.anticanonical() - smooth.coords("L-e1") * R(3, 2);
  PointDecomposition pd = zariski_at_point(d, smooth);
  CHECK(pd.big);
  CHECK(pd.volume == R(1, 2));
  std::vector<int> expected{curve_index(smooth, "e1"), curve_index(smooth, "L-e2-e3")};
  std::sort(expected.begin(), expected.end());
  CHECK(pd.support == expected);
  CHECK(pd.coefficients == std::vector<Rational>{R(1, 2), R(1, 2)});

  PointDecomposition nef = zariski_at_point(smooth.anticanonical(), smooth);
  CHECK(nef.support.empty());
  CHECK(nef.volume == R(6));

  // -K - 2 (L - e1) sits on the boundary of the big cone.
  PointDecomposition edge = zariski_at_point(smooth.anticanonical() - smooth.coords("L-e1") * R(2), smooth);
  CHECK_FALSE(edge.big);
  CHECK(edge.volume == R(0));

  const DPLattice& sing = singular_lattice();
  PointDecomposition s = zariski_at_point(sing.anticanonical() - sing.coords("Z") * R(3, 2), sing);
  CHECK(s.big);
  CHECK(s.coefficients == std::vector<Rational>{R(1)});
  CHECK(s.volume == R(1, 2));
  CHECK_THROWS_AS(zariski_at_point(RVector::Zero(2), sing), std::invalid_argument);
}

TEST_CASE("-K - vZ on both lattices") {
  Region box = Region::box(R(0), R(1), R(0), R(2));

  const DPLattice& smooth = smooth_lattice();
  SurfaceZariski zs = zariski_surface(family(smooth, "L-e1", Poly2(1), V), smooth, box);
  REQUIRE(zs.chambers.size() == 2);
  CHECK(zs.chambers[0].support.empty());
  CHECK(zs.chambers[0].region == Region::box(R(0), R(1), R(0), R(1)));
  CHECK(zs.chambers[0].volume(smooth) == Poly2(6) - Poly2(4) * V);
  const SurfaceChamber& upper = zs.chambers[1];
  CHECK(upper.region == Region::box(R(0), R(1), R(1), R(2)));
  REQUIRE(upper.support.size() == 2);
  CHECK(smooth.negative_curves()[upper.support[0]].name == "e1");
  CHECK(smooth.negative_curves()[upper.support[1]].name == "L-e2-e3");
  CHECK(upper.coefficients[0] == V - Poly2(1));
  CHECK(upper.coefficients[1] == V - Poly2(1));
  CHECK(upper.volume(smooth) == Poly2(2) * pow(Poly2(2) - V, 2));
  CHECK(zs.outside.empty());

  const DPLattice& sing = singular_lattice();
  SurfaceZariski zg = zariski_surface(family(sing, "Z", Poly2(1), V), sing, box);
  REQUIRE(zg.chambers.size() == 2);
  CHECK(zg.chambers[0].volume(sing) == Poly2(6) - Poly2(4) * V);
  CHECK(zg.chambers[1].coefficients == std::vector<Poly2>{Poly2(2) * (V - Poly2(1))});
  CHECK(intersect(zg.chambers[1].positive, lift(sing.coords("Z")), sing) == Poly2(4) - Poly2(2) * V);

  // one-line variant: Z is itself a (-1)-curve
  SurfaceZariski z1 = zariski_surface(family(smooth, "e1", Poly2(1), V), smooth, Region::box(R(0), R(1), R(0), R(1)));
  REQUIRE(z1.chambers.size() == 1);
  CHECK(z1.chambers[0].volume(smooth) == Poly2(6) - Poly2(2) * V - V * V);
}

TEST_CASE("two-parameter families") {
  Region box = Region::box(R(1), R(2), R(0), R(2));
  const Poly2 a = Poly2(2) - U;

  const DPLattice& smooth = smooth_lattice();
  SurfaceZariski z = zariski_surface(family(smooth, "e1", a, V), smooth, box);
  const SurfaceChamber* upper = z.locate(R(3, 2), R(3, 4));
  REQUIRE(upper != nullptr);
  REQUIRE(upper->support.size() == 2);
  CHECK(smooth.negative_curves()[upper->support[0]].name == "L-e1-e2");
  CHECK(smooth.negative_curves()[upper->support[1]].name == "L-e1-e3");
  CHECK(upper->coefficients[0] == U + V - Poly2(2));
  CHECK(upper->coefficients[1] == U + V - Poly2(2));
  const SurfaceChamber* lower = z.locate(R(3, 2), R(1, 4));
  REQUIRE(lower != nullptr);
  CHECK(lower->support.empty());
  CHECK(lower->region.v_hi() == Poly2(2) - U);
  CHECK(!z.outside.empty());
  CHECK(z.locate(R(3, 2), R(19, 10)) == nullptr);

  const DPLattice& sing = singular_lattice();
  SurfaceZariski zg = zariski_surface(family(sing, "Z", a, V), sing, box);
  const SurfaceChamber* ch = zg.locate(R(3, 2), R(3, 4));
  REQUIRE(ch != nullptr);
  CHECK(ch->coefficients == std::vector<Poly2>{Poly2(2) * (U + V - Poly2(2))});
  CHECK(intersect(ch->positive, lift(sing.coords("Z")), sing) == Poly2(8) - Poly2(4) * U - Poly2(2) * V);

  CHECK(zariski_surface(PVector::Zero(4), smooth, box).chambers.empty());
  CHECK_THROWS_AS(zariski_surface(family(smooth, "e1", a * a, V), smooth, box), std::invalid_argument);
}

TEST_CASE("float oracle at named points") {
  const DPLattice& smooth = smooth_lattice();
  const DPLattice& sing = singular_lattice();
  NumericZariski a = numeric_zariski_oracle(family(smooth, "L-e1", Poly2(1), V), smooth, 0.0, 1.5);
  CHECK(a.big);
  CHECK(a.volume == doctest::Approx(0.5).epsilon(1e-12));
  NumericZariski b = numeric_zariski_oracle(family(sing, "Z", Poly2(1), V), sing, 0.0, 1.5);
  CHECK(b.volume == doctest::Approx(0.5).epsilon(1e-12));
  NumericZariski c = numeric_zariski_oracle(family(smooth, "L-e1", Poly2(1), V), smooth, 0.0, 1.0);
  CHECK(c.coefficients.cwiseAbs().maxCoeff() < 1e-9);
}

TEST_CASE("support does not depend on growth order") {
  std::mt19937 rng(5);
  for (const auto* lattice : {&smooth_lattice(), &singular_lattice()}) {
    std::vector<int> priority(lattice->negative_curves().size());
    for (std::size_t i = 0; i < priority.size(); ++i) priority[i] = static_cast<int>(i);
    for (int trial = 0; trial < 200; ++trial) {
      RVector d = random_class(rng, *lattice);
      PointDecomposition all = zariski_at_point(d, *lattice);
      std::shuffle(priority.begin(), priority.end(), rng);
      PointDecomposition one = zariski_at_point(d, *lattice, Growth::sequential, priority);
      CHECK(all.big == one.big);
      if (!all.big) continue;
      CHECK(all.support == one.support);
      CHECK(all.positive == one.positive);
      CHECK(all.rounds <= one.rounds);
    }
  }
}

TEST_CASE("Zariski properties at random points") {
  std::mt19937 rng(6);
  int big = 0;
  for (const auto* lattice : {&smooth_lattice(), &singular_lattice()}) {
    const auto& curves = lattice->negative_curves();
    for (int trial = 0; trial < 500; ++trial) {
      RVector d = random_class(rng, *lattice);
      PointDecomposition pd = zariski_at_point(d, *lattice);
      if (!pd.big) continue;
      ++big;
      RVector n = RVector::Zero(lattice->rank());
      for (std::size_t s = 0; s < pd.support.size(); ++s) n += curves[pd.support[s]].coords * pd.coefficients[s];
      CHECK(pd.positive + n == d);
      for (const auto& e : curves) CHECK(lattice->pair(pd.positive, e.coords).sign() >= 0);
      CHECK(lattice->pair(pd.positive, n) == R(0));
      for (const Rational& c : pd.coefficients) CHECK(c.sign() >= 0);
      CHECK(pd.volume == lattice->pair(d, d) - lattice->pair(n, n));
      // volume is monotone along effective directions
      RVector bigger = d + curves[0].coords;
      CHECK(zariski_at_point(bigger, *lattice).volume >= pd.volume);

      Eigen::VectorXd x(d.size());
      for (Eigen::Index i = 0; i < d.size(); ++i) x(i) = d(i).to_double();
      NumericZariski num = numeric_zariski_oracle(x, *lattice);
      CHECK(num.big);
      CHECK(num.volume == doctest::Approx(pd.volume.to_double()).epsilon(1e-9));
    }
  }
  CHECK(big > 300);
}

TEST_CASE("chambers glue continuously across walls") {
  const DPLattice& smooth = smooth_lattice();
  Region box = Region::box(R(0), R(2), R(0), R(4));
  for (const auto* lattice : {&smooth_lattice(), &singular_lattice()}) {
    for (const char* zname : {"e1", "L-e1", "Z"}) {
      if ((lattice == &smooth) == (std::string(zname) == "Z")) continue;
      SurfaceZariski z = zariski_surface(family(*lattice, zname, Poly2(2) - U, V), *lattice, box);
      REQUIRE(!z.chambers.empty());
      for (const auto& a : z.chambers)
        for (const auto& b : z.chambers) {
          if (&a == &b) continue;
          for (const Point2& p : a.region.vertices()) {
            if (!b.region.contains(p.u, p.v)) continue;
            CHECK(eval_at(a.positive, p.u, p.v) == eval_at(b.positive, p.u, p.v));
          }
        }
      // volume vanishes on the boundary with the non-big part
      for (const auto& out : z.outside)
        for (const Point2& p : out.vertices())
          if (const SurfaceChamber* ch = z.locate(p.u, p.v)) CHECK(ch->volume(*lattice).eval(p.u, p.v) == R(0));
    }
  }
}

TEST_CASE("chamber volumes match the float oracle on a 50x50 grid") {
  Region box = Region::box(R(0), R(2), R(0), R(4));
  const DPLattice& smooth = smooth_lattice();
  for (const auto* lattice : {&smooth_lattice(), &singular_lattice()}) {
    for (const char* zname : {"e1", "L-e1", "Z"}) {
      if ((lattice == &smooth) == (std::string(zname) == "Z")) continue;
      SurfaceClass d = family(*lattice, zname, Poly2(2) - U, V);
      SurfaceZariski z = zariski_surface(d, *lattice, box);
      double worst = 0.0;
      for (int i = 0; i < 50; ++i)
        for (int j = 0; j < 50; ++j) {
          Rational u = R(2 * i + 1, 50);
          Rational v = R(4 * j + 2, 50);
          const SurfaceChamber* ch = z.locate(u, v);
          double exact = ch ? ch->volume(*lattice).eval(u, v).to_double() : 0.0;
          double approx = numeric_zariski_oracle(d, *lattice, u.to_double(), v.to_double()).volume;
          worst = std::max(worst, std::abs(exact - approx));
        }
      CHECK(worst < 1e-6);
    }
  }
}

TEST_CASE("validate rejects corrupted chambers") {
  const DPLattice& smooth = smooth_lattice();
  SurfaceZariski z = zariski_surface(family(smooth, "L-e1", Poly2(1), V), smooth, Region::box(R(0), R(1), R(0), R(2)));
  SurfaceZariski bad = z;
  bad.chambers[1].coefficients[0] = V;
  CHECK_THROWS_AS(validate(bad, smooth), std::runtime_error);
  bad = z;
  bad.chambers[0].region = Region::box(R(0), R(1), R(0), R(3, 2));
  CHECK_THROWS_AS(validate(bad, smooth), std::runtime_error);
}
