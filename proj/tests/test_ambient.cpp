#include "kstab/ambient.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <random>

using namespace kstab;
using namespace kstab::ambient;

namespace {

Rational R(long long p, long long q = 1) { return Rational(p, q); }

Degree D(long long a, long long b, long long c, long long d) { return multidegree<Rational>(R(a), R(b), R(c), R(d)); }

const Poly2 U = Poly2::u();

// Volume of a nef class through the elementary symmetric polynomial e3,
// a route independent of the permanent.
double nef_volume_e3(double a, double b, double c, double d) {
  return 6.0 * (a * b * c + a * b * d + a * c * d + b * c * d);
}

std::array<double, 4> to_array(const Degree& d) {
  return {d(0).to_double(), d(1).to_double(), d(2).to_double(), d(3).to_double()};
}

}  // namespace

TEST_CASE("quad_product is the permanent") {
  Degree ones = anticanonical();
  CHECK(quad_product(ones, ones, ones, ones) == R(24));
  Degree y1 = D(1, 0, 0, 0);
  CHECK(quad_product(y1, y1, D(3, 1, 4, 1), D(5, 9, 2, 6)) == R(0));

  DegreeU p = multidegree<Poly2>(Poly2(0), Poly2(2) - U, Poly2(2) - U, Poly2(2) - U);
  CHECK(quad_product(p, p, p, to_poly(ones)) == Poly2(6) * pow(Poly2(2) - U, 3));
}

TEST_CASE("triple_on_X") {
  Degree ones = anticanonical();
  CHECK(triple_on_X(ones, ones, ones) == R(24));
  DegreeU t = multidegree<Poly2>(Poly2(1) - U, Poly2(1), Poly2(1), Poly2(1));
  CHECK(self_cube(t) == Poly2(24) - Poly2(18) * U);
  CHECK(self_cube(D(1, 1, 0, 0)) == R(0));
}

TEST_CASE("quad_product is S4-symmetric in the factor slots") {
  std::mt19937 rng(11);
  std::array<int, 4> perm{0, 1, 2, 3};
  for (int trial = 0; trial < 50; ++trial) {
    std::array<Degree, 4> ds;
    for (auto& d : ds)
      for (int k = 0; k < 4; ++k) d(k) = kstab::testing::random_rational(rng, -3, 3);
    std::shuffle(perm.begin(), perm.end(), rng);
    std::array<Degree, 4> permuted;
    for (int a = 0; a < 4; ++a)
      for (int k = 0; k < 4; ++k) permuted[a](k) = ds[a](perm[k]);
    CHECK(quad_product(ds[0], ds[1], ds[2], ds[3]) ==
          quad_product(permuted[0], permuted[1], permuted[2], permuted[3]));
    CHECK(quad_product(ds[0], ds[1], ds[2], ds[3]) == quad_product(ds[2], ds[0], ds[3], ds[1]));
  }
}

TEST_CASE("nef volumes are nonnegative, monotone and match e3") {
  std::mt19937 rng(12);
  for (int trial = 0; trial < 100; ++trial) {
    Degree a, h;
    for (int k = 0; k < 4; ++k) {
      a(k) = kstab::testing::random_rational(rng, 0, 3);
      h(k) = kstab::testing::random_rational(rng, 0, 2);
    }
    Rational vol = self_cube(a);
    CHECK(vol.sign() >= 0);
    CHECK(self_cube(Degree(a + h)) >= vol);
    auto x = to_array(a);
    CHECK(vol.to_double() == doctest::Approx(nef_volume_e3(x[0], x[1], x[2], x[3])));
  }
}

TEST_CASE("generator data") {
  CHECK(fiber(3).type == D(0, 0, 1, 0));
  CHECK(exceptional(2, 3, 4).type == D(-1, 1, 1, 1));
  CHECK(exceptional(1, 2, 4).type == D(1, 1, -1, 1));
  CHECK(complementary_exceptional(1).name() == "S234");
  CHECK(generator_by_name("l134").kind == GeneratorKind::ruling);
  CHECK_THROWS_AS(generator_by_name("Q1"), std::invalid_argument);
  CHECK_THROWS_AS(exceptional(3, 2, 1), std::invalid_argument);

  for (const auto& y : divisor_generators()) {
    if (y.kind != GeneratorKind::fiber) continue;
    for (const auto& l : ruling_curves()) {
      int i = y.slots[0];
      bool complementary = std::find(l.slots.begin(), l.slots.end(), i) == l.slots.end();
      CHECK(curve_pairing(y.type, l) == R(complementary ? 1 : 0));
    }
  }
  // S_jkl . l_jkl = -1: the ruling is contracted negatively.
  for (const auto& s : divisor_generators())
    if (s.kind == GeneratorKind::exceptional) CHECK(curve_pairing(s.type, ruling_of(s)) == R(-1));

  std::vector<std::string> names;
  for (const auto& g : divisor_generators()) names.push_back(g.name());
  CHECK(names == std::vector<std::string>{"Y1", "Y2", "Y3", "Y4", "S123", "S124", "S134", "S234"});
}

TEST_CASE("nef and pseudo-effective cone membership") {
  CHECK(is_nef(D(0, 1, 1, 1)));
  CHECK_FALSE(is_nef(D(-1, 1, 1, 1)));
  CHECK(is_nef(D(1, 1, 1, 1)));

  CHECK(is_pseff(D(-1, 1, 1, 1)));
  CHECK_FALSE(is_pseff(D(-1, 1, 1, 0)));
  CHECK(is_pseff(D(0, 0, 0, 0)));
  CHECK(nef_cone().facets().size() == 4);
}

TEST_CASE("is_pseff agrees with brute-force basis enumeration") {
  std::vector<std::array<double, 4>> gens;
  for (const auto& g : divisor_generators()) gens.push_back(to_array(g.type));
  // frozen oracle answers on both sides of a facet
  CHECK_FALSE(kstab::testing::in_cone_brute_force(gens, {-1, 1, 1, 0}));
  CHECK(kstab::testing::in_cone_brute_force(gens, {-1, 1, 1, 1}));

  std::mt19937 rng(2024);
  int inside = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    Degree d;
    for (int k = 0; k < 4; ++k) d(k) = kstab::testing::random_rational(rng, -2, 3, 4);
    bool expected = kstab::testing::in_cone_brute_force(gens, to_array(d));
    CHECK(is_pseff(d) == expected);
    inside += expected ? 1 : 0;
  }
  // both outcomes are exercised
  CHECK(inside > 100);
  CHECK(inside < 900);
}

TEST_CASE("thresholds") {
  Degree minus_k = anticanonical();
  CHECK(nef_threshold(minus_k, fiber(1).type) == R(1));
  CHECK(pseff_threshold(minus_k, fiber(1).type) == R(2));
  CHECK(pseff_threshold(minus_k, exceptional(2, 3, 4).type) == R(1));
  CHECK(nef_threshold(minus_k, exceptional(2, 3, 4).type) == R(1));
  CHECK_THROWS_AS(nef_threshold(minus_k, D(0, 0, 0, 0)), std::invalid_argument);

  // Independent route for the S234 threshold: scan u = k/64 with the brute
  // force oracle, then confirm the exact boundary.
  std::vector<std::array<double, 4>> gens;
  for (const auto& g : divisor_generators()) gens.push_back(to_array(g.type));
  int last_inside = -1;
  for (int k = 0; k <= 128; ++k) {
    double u = k / 64.0;
    if (kstab::testing::in_cone_brute_force(gens, {1 + u, 1 - u, 1 - u, 1 - u})) last_inside = k;
  }
  CHECK(last_inside == 64);
  CHECK(is_pseff(D(2, 0, 0, 0)));
  CHECK_FALSE(is_pseff(multidegree<Rational>(R(1) + R(65, 64), R(-1, 64), R(-1, 64), R(-1, 64))));
}

TEST_CASE("zariski_threefold for a fiber") {
  ThreefoldZariski z = zariski_threefold(fiber(1));
  REQUIRE(z.chambers.size() == 2);
  const auto& first = z.chambers[0];
  const auto& second = z.chambers[1];
  CHECK(first.u_lo == R(0));
  CHECK(first.u_hi == R(1));
  CHECK(first.negative.empty());
  CHECK(second.u_lo == R(1));
  CHECK(second.u_hi == R(2));
  REQUIRE(second.negative.size() == 1);
  CHECK(second.negative[0].first.name() == "S234");
  CHECK(second.negative[0].second == U - Poly2(1));
  CHECK(second.positive == multidegree<Poly2>(Poly2(0), Poly2(2) - U, Poly2(2) - U, Poly2(2) - U));

  CHECK(eval_at(first.positive, R(1)) == eval_at(second.positive, R(1)));
  CHECK(second.volume() == Poly2(6) * pow(Poly2(2) - U, 3));
  CHECK(second.volume().eval(R(2), R(0)) == R(0));
  CHECK(first.volume().eval(R(1), R(0)) == R(6));
  CHECK(second.volume().eval(R(1), R(0)) == R(6));

  for (int i = 2; i <= 4; ++i) {
    auto zi = zariski_threefold(fiber(i));
    REQUIRE(zi.chambers.size() == 2);
    CHECK(zi.chambers[1].negative[0].first == complementary_exceptional(i));
  }
  CHECK_THROWS_AS(zariski_threefold(exceptional(1, 2, 3)), std::invalid_argument);
}

TEST_CASE("validate rejects corrupted chambers") {
  ThreefoldZariski z = zariski_threefold(fiber(1));
  ThreefoldZariski bad = z;
  bad.chambers[1].negative[0].first = exceptional(1, 2, 3);
  CHECK_THROWS_AS(validate(bad), std::runtime_error);

  bad = z;
  bad.chambers[1].negative[0].second = U;
  CHECK_THROWS_AS(validate(bad), std::runtime_error);

  bad = z;
  bad.chambers[0].u_hi = R(3, 2);
  CHECK_THROWS_AS(validate(bad), std::runtime_error);
}

TEST_CASE("S_X and beta") {
  CHECK(expected_vanishing_order(fiber(1)) == R(33, 48));
  CHECK(beta(fiber(1)) == R(15, 48));
  for (int i = 2; i <= 4; ++i) CHECK(expected_vanishing_order(fiber(i)) == R(33, 48));

  // The two chamber contributions separately.
  auto z = zariski_threefold(fiber(1));
  CHECK(integrate_u(z.chambers[0].volume(), R(0), R(1)) / R(24) == R(15, 24));
  CHECK(integrate_u(z.chambers[1].volume(), R(1), R(2)) / R(24) == R(3, 48));

  CHECK(expected_vanishing_order(exceptional(2, 3, 4)) == R(3, 8));
  // midpoint oracle over the e3 volume of (1+u, 1-u, 1-u, 1-u) on [0,1]
  double sum = 0.0;
  const int n = 4000;
  for (int k = 0; k < n; ++k) {
    double u = (k + 0.5) / n;
    sum += nef_volume_e3(1 + u, 1 - u, 1 - u, 1 - u);
  }
  CHECK(sum / n / 24.0 == doctest::Approx(3.0 / 8.0).epsilon(1e-6));

  for (const auto& g : divisor_generators()) CHECK(beta(g).sign() > 0);
}
