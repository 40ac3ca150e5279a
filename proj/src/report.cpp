#include "kstab/report.hpp"

#include <json.hpp>

#include <cstdio>
#include <sstream>

namespace kstab::report {

using Json = nlohmann::ordered_json;

namespace {

CaseReport check_case(const azflag::CaseConfig& cfg, int oracle_grid) {
  CaseReport cr{cfg, azflag::evaluate(cfg), {}, std::nullopt, false};
  bool ok = cr.result.delta_lower >= Rational(1);
  for (const std::string& key : azflag::quantity_keys()) {
    QuantityLine line{key, azflag::quantity_label(key), cr.result.value(key), std::nullopt};
    if (auto it = cfg.expected.find(key); it != cfg.expected.end()) {
      line.printed = it->second.value;
      line.match = line.value == it->second.value;
      line.erratum = it->second.erratum && !line.match;
      if (!line.match && !it->second.erratum) ok = false;
    }
    cr.quantities.push_back(std::move(line));
  }
  if (oracle_grid > 0) {
    cr.oracle_deviation = azflag::oracle_deviation(cr.result, cfg, oracle_grid);
    if (!(*cr.oracle_deviation < oracle_tolerance)) ok = false;
  }
  cr.passed = ok;
  return cr;
}

std::string join(const std::vector<Rational>& xs) {
  std::string out;
  for (const Rational& x : xs) out += (out.empty() ? "" : ", ") + x.str();
  return out;
}

Json rationals(const std::vector<Rational>& xs) {
  Json out = Json::array();
  for (const Rational& x : xs) out.push_back(x.str());
  return out;
}

std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", x);
  return buf;
}

}  // namespace

VerificationReport verify(const std::vector<azflag::CaseConfig>& cases, int oracle_grid) {
  VerificationReport rep;
  bool ok = true;
  for (const azflag::CaseConfig& cfg : cases) {
    rep.cases.push_back(check_case(cfg, oracle_grid));
    const CaseReport& cr = rep.cases.back();
    ok = ok && cr.passed;
    for (const QuantityLine& q : cr.quantities)
      if (q.erratum) rep.errata.push_back({cfg.name, q.key, q.value, *q.printed});
  }
  for (const ambient::NamedGenerator& g : ambient::divisor_generators()) {
    DivisorialLine line{g.name(), ambient::expected_vanishing_order(g), ambient::beta(g)};
    ok = ok && line.beta.sign() > 0;
    rep.divisorial.push_back(line);
  }
  rep.passed = ok;
  return rep;
}

std::string VerificationReport::text() const {
  std::ostringstream os;
  for (const CaseReport& cr : cases) {
    const azflag::CaseConfig& cfg = cr.config;
    os << "case " << cfg.name << " (lattice " << cfg.lattice << ", Z = " << cfg.flag_curve << ")\n";
    for (const QuantityLine& q : cr.quantities) {
      os << "  " << q.label << " = " << q.value << " (paper: ";
      if (q.printed) {
        os << *q.printed << ") " << (q.match ? "✓" : "✗");
        if (q.erratum) os << " erratum";
      } else {
        os << "—)";
      }
      os << "\n";
    }
    const azflag::AZReport& r = cr.result;
    os << "  partials: quadratic " << join(r.quadratic_partials) << "; ord " << join(r.ord_partials) << "; vol "
       << join(r.volume_partials) << "\n";
    os << "  delta_P " << (r.delta_lower > Rational(1) ? ">" : r.delta_lower == Rational(1) ? "=" : "<") << " 1\n";
    if (cr.oracle_deviation) os << "  oracle max deviation: " << format_double(*cr.oracle_deviation) << "\n";
    os << "  result: " << (cr.passed ? "PASS" : "FAIL") << "\n\n";
  }
  os << "divisorial stability\n";
  for (const DivisorialLine& d : divisorial)
    os << "  " << d.generator << ": S_X = " << d.S_X << ", beta = " << d.beta << (d.beta.sign() > 0 ? " > 0" : " <= 0")
       << "\n";
  if (!errata.empty()) {
    os << "errata\n";
    for (const Erratum& e : errata)
      os << "  " << e.case_name << ": " << azflag::quantity_label(e.quantity) << " computed " << e.computed
         << ", printed " << e.printed << "\n";
  }
  os << "verdict: " << (passed ? "PASS" : "FAIL") << "\n";
  return os.str();
}

std::string VerificationReport::json() const {
  Json root;
  root["cases"] = Json::array();
  for (const CaseReport& cr : cases) {
    const azflag::CaseConfig& cfg = cr.config;
    const azflag::AZReport& r = cr.result;
    const surface::DPLattice& lattice = cfg.dp_lattice();
    Json c;
    c["name"] = cfg.name;
    c["lattice"] = cfg.lattice;
    c["flag_curve"] = cfg.flag_curve;
    c["different"] = cfg.different.str();
    Json qs = Json::array();
    for (const QuantityLine& q : cr.quantities) {
      Json line;
      line["key"] = q.key;
      line["label"] = q.label;
      line["value"] = q.value.str();
      line["paper"] = q.printed ? Json(q.printed->str()) : Json(nullptr);
      line["match"] = q.match;
      line["erratum"] = q.erratum;
      qs.push_back(line);
    }
    c["quantities"] = qs;
    c["partials"] = {{"quadratic", rationals(r.quadratic_partials)},
                     {"ord", rationals(r.ord_partials)},
                     {"volume", rationals(r.volume_partials)},
                     {"ord_z", r.ord_z_integral.str()}};
    Json chambers = Json::array();
    for (const azflag::FlagChamber& fc : r.chambers) {
      Json pieces = Json::array();
      const auto z = surface::lift(lattice.coords(cfg.flag_curve));
      for (const surface::SurfaceChamber& sc : fc.zariski.chambers) {
        Json support = Json::array();
        for (std::size_t s = 0; s < sc.support.size(); ++s)
          support.push_back({{"curve", lattice.negative_curves()[sc.support[s]].name},
                             {"coefficient", sc.coefficients[s].str()}});
        pieces.push_back({{"region", sc.region.str()},
                          {"N", support},
                          {"P.Z", surface::intersect(sc.positive, z, lattice).str()},
                          {"volume", sc.volume(lattice).str()}});
      }
      Json restriction = Json::array();
      for (Eigen::Index i = 0; i < fc.restricted.size(); ++i) restriction.push_back(fc.restricted(i).str());
      chambers.push_back({{"u", Json::array({fc.threefold.u_lo.str(), fc.threefold.u_hi.str()})},
                          {"restriction", restriction},
                          {"surface_chambers", pieces}});
    }
    c["chambers"] = chambers;
    c["lattice_table"] = lattice.table();
    if (cr.oracle_deviation) c["oracle_max_deviation"] = format_double(*cr.oracle_deviation);
    c["passed"] = cr.passed;
    root["cases"].push_back(c);
  }
  root["divisorial"] = Json::array();
  for (const DivisorialLine& d : divisorial)
    root["divisorial"].push_back(
        {{"generator", d.generator}, {"S_X", d.S_X.str()}, {"beta", d.beta.str()}, {"positive", d.beta.sign() > 0}});
  root["verdict"] = passed ? "PASS" : "FAIL";
  root["errata"] = Json::array();
  for (const Erratum& e : errata)
    root["errata"].push_back({{"case", e.case_name},
                              {"quantity", e.quantity},
                              {"computed", e.computed.str()},
                              {"printed", e.printed.str()}});
  return root.dump(2) + "\n";
}

}  // namespace kstab::report
