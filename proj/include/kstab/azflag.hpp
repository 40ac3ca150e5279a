#pragma once

// Abban-Zhuang flag functionals for a flag Y > Z > P, with Y a fiber of the
// first projection and Z a curve on Y.

#include "kstab/ambient.hpp"
#include "kstab/surface.hpp"

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace kstab::azflag {

/// Upper bound for ord_P(N'_Y(u)|_Z + N(u, v)|_Z) on one region of the (u, v) plane.
struct OrdPiece {
  Region region;
  Poly2 bound;
};

/// ord_Z(N(u)|_Y) on one u-interval.
struct OrdZPiece {
  Rational u_lo;
  Rational u_hi;
  Poly2 value;
};

/// A printed value. `erratum` marks one known to disagree with the exact computation.
struct Expected {
  Rational value;
  bool erratum = false;
};

/// Quantity keys, in report order.
inline const std::vector<std::string>& quantity_keys() {
  static const std::vector<std::string> keys{"quadratic_term", "ord_term", "S_WYZ_P", "S_WY_Z", "S_X_Y", "delta"};
  return keys;
}
/// Display label, e.g. "S(W^Y;Z)" for S_WY_Z.
std::string quantity_label(const std::string& key);

struct CaseConfig {
  std::string name;
  std::string lattice = "SMOOTH";  ///< lattice preset name
  std::string flag_curve;          ///< class name of Z in the lattice
  /// Lattice class of S|_Y, the restriction of the exceptional divisor in N(u).
  std::string cprime = "-K";
  Rational different;  ///< Delta_P
  std::vector<OrdPiece> ord_bound;
  std::vector<OrdZPiece> ord_z;
  std::map<std::string, Expected> expected;

  const surface::DPLattice& dp_lattice() const { return surface::lattice_preset(lattice); }

  /// Throws std::invalid_argument: unknown lattice or class, Delta_P outside
  /// [0, 1), non-affine or negative ord bounds, unknown expected keys.
  void validate() const;
};

/// The four built-in flag configurations.
const std::vector<CaseConfig>& presets();
/// Throws std::invalid_argument for an unknown name.
const CaseConfig& preset(const std::string& name);

/// Plain-text key/value form, one entry per line:
///
///   name = smooth-no-line
///   lattice = SMOOTH
///   flag_curve = L-e1
///   cprime = -K
///   different = 0
///   ord_bound = 1 2 | 0 | 2 - u | u - 1      (u_lo u_hi | v_lo | v_hi | bound)
///   ord_z = 1 2 | u - 1                      (u_lo u_hi | value)
///   expected.S_WY_Z = 41/48
///   erratum = S_WY_Z
///
/// Blank lines and lines starting with '#' are ignored. Throws
/// std::invalid_argument with the line number on malformed input.
CaseConfig parse_config(std::istream& in);
CaseConfig load_config(const std::string& path);
std::string to_config_text(const CaseConfig& cfg);

/// P(u)|_Y in lattice coordinates: -K_X -> -K_Y, Y -> 0, S -> C'.
surface::SurfaceClass restrict_to_fiber(const ambient::ThreefoldChamber& chamber, const ambient::NamedGenerator& y,
                                        const CaseConfig& cfg);

/// Surface decomposition of P(u)|_Y - vZ over one threefold chamber.
struct FlagChamber {
  ambient::ThreefoldChamber threefold;
  surface::SurfaceClass restricted;  ///< P(u)|_Y
  Region box;
  surface::SurfaceZariski zariski;
};

struct AZReport {
  std::string case_name;
  std::vector<FlagChamber> chambers;  ///< in threefold chamber order

  std::vector<Rational> quadratic_partials;  ///< int int (P.Z)^2, one per surface chamber
  std::vector<Rational> ord_partials;        ///< int int (P.Z) * bound, one per ord piece
  std::vector<Rational> volume_partials;     ///< int int vol, one per threefold chamber
  Rational ord_z_integral;                   ///< int (P(u)^2 . Y) d(u) du

  Rational quadratic_term;
  Rational ord_term;
  Rational S_WYZ_P;
  Rational S_WY_Z;
  Rational S_X_Y;
  Rational delta_lower;

  Rational value(const std::string& key) const;
};

enum class ChamberOrder { forward, reversed };

/// Runs the whole flag computation for one configuration. The order argument
/// only changes the order in which threefold chambers are processed.
AZReport evaluate(const CaseConfig& cfg, ChamberOrder order = ChamberOrder::forward);

/// Largest |P^2 - oracle volume| over an n x n grid inside every surface
/// chamber and every non-big piece of the report.
double oracle_deviation(const AZReport& report, const CaseConfig& cfg, int n);

}  // namespace kstab::azflag
