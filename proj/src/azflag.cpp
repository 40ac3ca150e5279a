#include "kstab/azflag.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace kstab::azflag {

using ambient::NamedGenerator;
using surface::DPLattice;
using surface::SurfaceClass;

std::string quantity_label(const std::string& key) {
  static const std::map<std::string, std::string> labels{
      {"quadratic_term", "quadratic term"}, {"ord_term", "ord term"},   {"S_WYZ_P", "S(W^{Y,Z};P)"},
      {"S_WY_Z", "S(W^Y;Z)"},               {"S_X_Y", "S_X(Y)"},         {"delta", "delta_P bound"},
  };
  auto it = labels.find(key);
  if (it == labels.end()) throw std::invalid_argument("unknown quantity: " + key);
  return it->second;
}

void CaseConfig::validate() const {
  auto fail = [this](const std::string& what) { throw std::invalid_argument("case " + name + ": " + what); };
  if (name.empty()) throw std::invalid_argument("case without a name");
  const DPLattice& l = dp_lattice();
  const RVector& z = l.coords(flag_curve);
  l.coords(cprime);
  if (l.pair(z, l.anticanonical()).sign() <= 0) fail("flag curve has nonpositive anticanonical degree");
  if (different.sign() < 0 || different >= Rational(1)) fail("Delta_P must lie in [0, 1)");
  for (const OrdPiece& piece : ord_bound) {
    if (!piece.bound.is_affine()) fail("ord bound " + piece.bound.str() + " is not affine");
    for (const Point2& p : piece.region.vertices())
      if (piece.bound.eval(p.u, p.v).sign() < 0) fail("ord bound " + piece.bound.str() + " is negative on its region");
  }
  for (const OrdZPiece& piece : ord_z) {
    if (piece.u_lo >= piece.u_hi) fail("empty ord_z interval");
    if (piece.value.depends_on_v() || !piece.value.is_affine()) fail("ord_z value must be affine in u");
    for (const Rational& u : {piece.u_lo, piece.u_hi})
      if (piece.value.eval(u, Rational(0)).sign() < 0) fail("negative ord_z value");
  }
  const auto& keys = quantity_keys();
  for (const auto& [key, value] : expected)
    if (std::find(keys.begin(), keys.end(), key) == keys.end()) fail("unknown expected quantity " + key);
}

// ---------------------------------------------------------------------------
// Presets

namespace {

Rational R(long long p, long long q = 1) { return Rational(p, q); }

OrdPiece piece(const Rational& u_lo, const Rational& u_hi, const char* v_lo, const char* v_hi, const char* bound) {
  return {Region(u_lo, u_hi, Poly2::parse(v_lo), Poly2::parse(v_hi)), Poly2::parse(bound)};
}

std::map<std::string, Expected> printed(Rational quadratic, Rational ord, Rational wyzp, Rational wyz) {
  return {{"quadratic_term", {quadratic}}, {"ord_term", {ord}}, {"S_WYZ_P", {wyzp}},
          {"S_WY_Z", {wyz}},               {"S_X_Y", {R(33, 48)}}};
}

std::vector<CaseConfig> build_presets() {
  std::vector<CaseConfig> out;

  // ord_P N'_Y(u)|_Z <= u - 1 past the first wall
  const std::vector<OrdPiece> past_wall{piece(R(1), R(2), "0", "2 - u", "u - 1"),
                                        piece(R(1), R(2), "2 - u", "4 - 2*u", "u - 1")};

  CaseConfig no_line;
  no_line.name = "smooth-no-line";
  no_line.lattice = "SMOOTH";
  no_line.flag_curve = "L-e1";
  no_line.ord_bound = past_wall;
  no_line.expected = printed(R(5, 6), R(1, 16), R(43, 48), R(41, 48));
  no_line.expected["S_WY_Z"].erratum = true;
  no_line.expected["delta"] = {R(48, 43)};
  out.push_back(no_line);

  CaseConfig one_line;
  one_line.name = "smooth-one-line";
  one_line.lattice = "SMOOTH";
  one_line.flag_curve = "e1";
  one_line.ord_bound = past_wall;
  one_line.expected = printed(R(35, 48), R(1, 16), R(47, 48), R(15, 16));
  one_line.expected["S_WYZ_P"].erratum = true;
  out.push_back(one_line);

  CaseConfig two_lines;
  two_lines.name = "smooth-two-lines";
  two_lines.lattice = "SMOOTH";
  two_lines.flag_curve = "e1";
  two_lines.ord_bound = {piece(R(0), R(1), "0", "1", "0"), piece(R(0), R(1), "1", "2", "v - 1"),
                         piece(R(1), R(2), "0", "2 - u", "u - 1"),
                         piece(R(1), R(2), "2 - u", "4 - 2*u", "2*u + v - 3")};
  two_lines.expected = printed(R(35, 48), R(13, 48), R(1), R(15, 16));
  two_lines.expected["delta"] = {R(1)};
  out.push_back(two_lines);

  CaseConfig singular;
  singular.name = "singular-fiber";
  singular.lattice = "SING";
  singular.flag_curve = "Z";
  singular.ord_bound = {piece(R(0), R(1), "0", "2", "0"), piece(R(1), R(2), "0", "4 - 2*u", "0")};
  singular.expected = printed(R(5, 6), R(0), R(5, 6), R(35, 48));
  singular.expected["delta"] = {R(6, 5)};
  out.push_back(singular);

  for (const CaseConfig& c : out) c.validate();
  return out;
}

}  // namespace

const std::vector<CaseConfig>& presets() {
  static const std::vector<CaseConfig> all = build_presets();
  return all;
}

const CaseConfig& preset(const std::string& name) {
  for (const CaseConfig& c : presets())
    if (c.name == name) return c;
  throw std::invalid_argument("unknown case: " + name);
}

// ---------------------------------------------------------------------------
// Config text

namespace {

std::string trim(std::string_view s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split_bars(const std::string& s) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    auto bar = s.find('|', start);
    out.push_back(trim(std::string_view(s).substr(start, bar == std::string::npos ? std::string::npos : bar - start)));
    if (bar == std::string::npos) break;
    start = bar + 1;
  }
  return out;
}

std::pair<Rational, Rational> parse_interval(const std::string& s) {
  std::istringstream in(s);
  std::string lo, hi, extra;
  if (!(in >> lo >> hi) || (in >> extra)) throw std::invalid_argument("expected \"u_lo u_hi\", got \"" + s + "\"");
  return {Rational::parse(lo), Rational::parse(hi)};
}

}  // namespace

CaseConfig parse_config(std::istream& in) {
  CaseConfig cfg;
  cfg.lattice.clear();
  std::vector<std::string> errata;
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    std::string text = trim(line);
    if (text.empty() || text[0] == '#') continue;
    try {
      auto eq = text.find('=');
      if (eq == std::string::npos) throw std::invalid_argument("expected key = value");
      std::string key = trim(std::string_view(text).substr(0, eq));
      std::string value = trim(std::string_view(text).substr(eq + 1));
      if (key == "name") {
        cfg.name = value;
      } else if (key == "lattice") {
        cfg.lattice = value;
      } else if (key == "flag_curve") {
        cfg.flag_curve = value;
      } else if (key == "cprime") {
        cfg.cprime = value;
      } else if (key == "different") {
        cfg.different = Rational::parse(value);
      } else if (key == "ord_bound") {
        auto f = split_bars(value);
        if (f.size() != 4) throw std::invalid_argument("ord_bound needs 4 fields separated by '|'");
        auto [lo, hi] = parse_interval(f[0]);
        cfg.ord_bound.push_back({Region(lo, hi, Poly2::parse(f[1]), Poly2::parse(f[2])), Poly2::parse(f[3])});
      } else if (key == "ord_z") {
        auto f = split_bars(value);
        if (f.size() != 2) throw std::invalid_argument("ord_z needs 2 fields separated by '|'");
        auto [lo, hi] = parse_interval(f[0]);
        cfg.ord_z.push_back({lo, hi, Poly2::parse(f[1])});
      } else if (key.rfind("expected.", 0) == 0) {
        cfg.expected[key.substr(9)].value = Rational::parse(value);
      } else if (key == "erratum") {
        errata.push_back(value);
      } else {
        throw std::invalid_argument("unknown key " + key);
      }
    } catch (const std::exception& e) {
      throw std::invalid_argument("config line " + std::to_string(number) + ": " + e.what());
    }
  }
  for (const std::string& key : errata) {
    auto it = cfg.expected.find(key);
    if (it == cfg.expected.end()) throw std::invalid_argument("erratum for " + key + " without expected value");
    it->second.erratum = true;
  }
  if (cfg.lattice.empty()) throw std::invalid_argument("config is missing lattice");
  if (cfg.flag_curve.empty()) throw std::invalid_argument("config is missing flag_curve");
  cfg.validate();
  return cfg;
}

CaseConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config " + path);
  return parse_config(in);
}

std::string to_config_text(const CaseConfig& cfg) {
  std::ostringstream os;
  os << "name = " << cfg.name << "\n";
  os << "lattice = " << cfg.lattice << "\n";
  os << "flag_curve = " << cfg.flag_curve << "\n";
  os << "cprime = " << cfg.cprime << "\n";
  os << "different = " << cfg.different << "\n";
  for (const OrdPiece& p : cfg.ord_bound)
    os << "ord_bound = " << p.region.u_lo() << " " << p.region.u_hi() << " | " << p.region.v_lo() << " | "
       << p.region.v_hi() << " | " << p.bound << "\n";
  for (const OrdZPiece& p : cfg.ord_z) os << "ord_z = " << p.u_lo << " " << p.u_hi << " | " << p.value << "\n";
  for (const std::string& key : quantity_keys()) {
    auto it = cfg.expected.find(key);
    if (it == cfg.expected.end()) continue;
    os << "expected." << key << " = " << it->second.value << "\n";
    if (it->second.erratum) os << "erratum = " << key << "\n";
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// Evaluation

SurfaceClass restrict_to_fiber(const ambient::ThreefoldChamber& chamber, const NamedGenerator& y,
                               const CaseConfig& cfg) {
  if (y.kind != ambient::GeneratorKind::fiber) throw std::invalid_argument("restriction needs a fiber class");
  const DPLattice& lattice = cfg.dp_lattice();
  const NamedGenerator s = ambient::complementary_exceptional(y.slots[0]);
  const Poly2 u = Poly2::u();

  // Formal expression -K_X - uY - sum c_g g; check it reproduces P(u).
  ambient::DegreeU formal = ambient::to_poly(ambient::anticanonical()) - ambient::to_poly(y.type) * u;
  SurfaceClass image = surface::lift(lattice.anticanonical());
  for (const auto& [g, c] : chamber.negative) {
    if (g != s) throw std::invalid_argument("restriction of " + g.name() + " to the fiber is not modelled");
    formal -= ambient::to_poly(g.type) * c;
    image -= surface::lift(lattice.coords(cfg.cprime)) * c;
  }
  if (formal != chamber.positive) throw std::runtime_error("threefold chamber is not -K_X - uY - N(u)");
  return image;
}

Rational AZReport::value(const std::string& key) const {
  if (key == "quadratic_term") return quadratic_term;
  if (key == "ord_term") return ord_term;
  if (key == "S_WYZ_P") return S_WYZ_P;
  if (key == "S_WY_Z") return S_WY_Z;
  if (key == "S_X_Y") return S_X_Y;
  if (key == "delta") return delta_lower;
  throw std::invalid_argument("unknown quantity: " + key);
}

namespace {

struct ChamberSums {
  std::vector<Rational> quadratic;
  std::vector<Rational> ord;
  Rational volume;
  Rational ord_z;
};

FlagChamber decompose(const ambient::ThreefoldChamber& tc, const NamedGenerator& y, const CaseConfig& cfg) {
  const DPLattice& lattice = cfg.dp_lattice();
  const RVector& z = lattice.coords(cfg.flag_curve);
  SurfaceClass restricted = restrict_to_fiber(tc, y, cfg);

  // D . (-K) >= 0 is necessary for bigness, so v <= D.(-K) / Z.(-K) bounds the box.
  Poly2 degree = surface::intersect(restricted, surface::lift(lattice.anticanonical()), lattice);
  Rational z_degree = lattice.pair(z, lattice.anticanonical());
  Rational v_max = max(degree.eval(tc.u_lo, Rational(0)), degree.eval(tc.u_hi, Rational(0))) / z_degree;
  if (v_max.sign() < 0) v_max = Rational(0);
  Region box = Region::box(tc.u_lo, tc.u_hi, Rational(0), v_max);

  SurfaceClass family = restricted - surface::lift(z) * Poly2::v();
  return {tc, restricted, box, surface::zariski_surface(family, lattice, box)};
}

ChamberSums integrate_chamber(const FlagChamber& fc, const NamedGenerator& y, const CaseConfig& cfg) {
  const DPLattice& lattice = cfg.dp_lattice();
  const surface::SurfaceClass z = surface::lift(lattice.coords(cfg.flag_curve));
  ChamberSums sums;
  sums.ord.assign(cfg.ord_bound.size(), Rational(0));
  for (const surface::SurfaceChamber& sc : fc.zariski.chambers) {
    Poly2 pz = surface::intersect(sc.positive, z, lattice);
    sums.quadratic.push_back(integrate_region(pz * pz, sc.region));
    sums.volume += integrate_region(sc.volume(lattice), sc.region);
    for (std::size_t k = 0; k < cfg.ord_bound.size(); ++k)
      for (const Region& r : intersect_regions(sc.region, cfg.ord_bound[k].region))
        sums.ord[k] += integrate_region(pz * cfg.ord_bound[k].bound, r);
  }
  Poly2 restricted_square = ambient::triple_on_X(fc.threefold.positive, fc.threefold.positive, ambient::to_poly(y.type));
  for (const OrdZPiece& piece : cfg.ord_z) {
    Rational lo = max(piece.u_lo, fc.threefold.u_lo);
    Rational hi = min(piece.u_hi, fc.threefold.u_hi);
    if (lo < hi) sums.ord_z += integrate_u(restricted_square * piece.value, lo, hi);
  }
  return sums;
}

}  // namespace

AZReport evaluate(const CaseConfig& cfg, ChamberOrder order) {
  cfg.validate();
  const NamedGenerator y = ambient::fiber(1);
  const ambient::ThreefoldZariski tz = ambient::zariski_threefold(y);
  const std::size_t n = tz.chambers.size();

  std::vector<std::optional<FlagChamber>> chambers(n);
  std::vector<ChamberSums> sums(n);
  for (std::size_t step = 0; step < n; ++step) {
    std::size_t i = order == ChamberOrder::forward ? step : n - 1 - step;
    chambers[i] = decompose(tz.chambers[i], y, cfg);
    sums[i] = integrate_chamber(*chambers[i], y, cfg);
  }

  AZReport report;
  report.case_name = cfg.name;
  report.ord_partials.assign(cfg.ord_bound.size(), Rational(0));
  Rational quadratic_sum, ord_sum, volume_sum;
  for (std::size_t i = 0; i < n; ++i) {
    report.chambers.push_back(std::move(*chambers[i]));
    for (const Rational& q : sums[i].quadratic) {
      report.quadratic_partials.push_back(q);
      quadratic_sum += q;
    }
    for (std::size_t k = 0; k < sums[i].ord.size(); ++k) report.ord_partials[k] += sums[i].ord[k];
    report.volume_partials.push_back(sums[i].volume);
    volume_sum += sums[i].volume;
    report.ord_z_integral += sums[i].ord_z;
  }
  for (const Rational& o : report.ord_partials) ord_sum += o;

  const Rational volume = ambient::self_cube(ambient::anticanonical());
  report.quadratic_term = Rational(3) / volume * quadratic_sum;
  report.ord_term = Rational(6) / volume * ord_sum;
  report.S_WYZ_P = report.quadratic_term + report.ord_term;
  report.S_WY_Z = Rational(3) / volume * (report.ord_z_integral + volume_sum);
  report.S_X_Y = ambient::expected_vanishing_order(y);

  std::optional<Rational> delta;
  auto bound = [&delta](const Rational& numerator, const Rational& s) {
    if (s.sign() <= 0) return;  // a vanishing S gives no constraint
    Rational b = numerator / s;
    delta = delta ? min(*delta, b) : b;
  };
  bound(Rational(1) - cfg.different, report.S_WYZ_P);
  bound(Rational(1), report.S_WY_Z);
  bound(Rational(1), report.S_X_Y);
  if (!delta) throw std::runtime_error("case " + cfg.name + ": every S-invariant vanishes");
  report.delta_lower = *delta;
  return report;
}

double oracle_deviation(const AZReport& report, const CaseConfig& cfg, int n) {
  if (n <= 0) throw std::invalid_argument("oracle grid size must be positive");
  const DPLattice& lattice = cfg.dp_lattice();
  double worst = 0.0;
  auto sweep = [&](const SurfaceClass& d, const Region& region, const Poly2* volume) {
    const Rational du = (region.u_hi() - region.u_lo()) / Rational(n);
    for (int i = 0; i < n; ++i) {
      Rational u = region.u_lo() + du * Rational(2 * i + 1, 2);
      Rational lo = region.v_lo_at(u);
      Rational dv = (region.v_hi_at(u) - lo) / Rational(n);
      for (int j = 0; j < n; ++j) {
        Rational v = lo + dv * Rational(2 * j + 1, 2);
        double exact = volume ? volume->eval(u, v).to_double() : 0.0;
        double approx = surface::numeric_zariski_oracle(d, lattice, u.to_double(), v.to_double()).volume;
        worst = std::max(worst, std::abs(exact - approx));
      }
    }
  };
  for (const FlagChamber& fc : report.chambers) {
    for (const surface::SurfaceChamber& sc : fc.zariski.chambers) {
      Poly2 volume = sc.volume(lattice);
      sweep(fc.zariski.divisor, sc.region, &volume);
    }
    for (const Region& r : fc.zariski.outside) sweep(fc.zariski.divisor, r, nullptr);
  }
  return worst;
}

}  // namespace kstab::azflag
