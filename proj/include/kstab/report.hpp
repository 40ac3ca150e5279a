#pragma once

#include "kstab/azflag.hpp"

#include <optional>
#include <string>
#include <vector>

namespace kstab::report {

struct QuantityLine {
  std::string key;
  std::string label;
  Rational value;
  std::optional<Rational> printed;
  bool match = true;    ///< value == printed, or nothing printed
  bool erratum = false; ///< printed value flagged as a known misprint and it does differ
};

struct CaseReport {
  azflag::CaseConfig config;
  azflag::AZReport result;
  std::vector<QuantityLine> quantities;
  std::optional<double> oracle_deviation;
  bool passed = false;
};

struct DivisorialLine {
  std::string generator;
  Rational S_X;
  Rational beta;
};

struct Erratum {
  std::string case_name;
  std::string quantity;
  Rational computed;
  Rational printed;
};

struct VerificationReport {
  std::vector<CaseReport> cases;
  std::vector<DivisorialLine> divisorial;
  std::vector<Erratum> errata;
  bool passed = false;

  std::string text() const;
  /// Deterministic JSON (fixed key order, rationals as "p/q" strings).
  std::string json() const;
};

/// Evaluates the given cases plus the divisorial block. `oracle_grid` > 0
/// additionally runs the float oracle on that grid size.
///
/// A case passes when its delta bound is >= 1, every printed value not
/// marked as an erratum matches exactly and, if run, the oracle sweep stays
/// within oracle_tolerance. The whole report also needs every beta > 0.
VerificationReport verify(const std::vector<azflag::CaseConfig>& cases, int oracle_grid = 0);

/// Tolerance for the oracle sweep to count as agreeing.
inline constexpr double oracle_tolerance = 1e-6;

}  // namespace kstab::report
