#include "kstab/cli.hpp"

#include "kstab/report.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <ostream>

namespace kstab::cli {

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact verifier for the flag computations on the (1,1,1,1) threefold in (P^1)^4", "kstab"};
  app.require_subcommand(0, 1);

  bool list_cases = false;
  app.add_flag("--list-cases", list_cases, "List the built-in cases");

  CLI::App* verify = app.add_subcommand("verify", "Run cases and print a verification report");
  std::vector<std::string> case_names;
  std::vector<std::string> config_files;
  bool all = false;
  std::string format = "text";
  int oracle_grid = 0;
  verify->add_option("--case", case_names, "Built-in case to run (repeatable)");
  verify->add_option("--config", config_files, "Case config file to run (repeatable)");
  verify->add_flag("--all", all, "Run every built-in case");
  verify->add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "json"}));
  verify->add_option("--oracle-grid", oracle_grid, "Also run the float oracle on an N x N grid per chamber")
      ->check(CLI::Range(1, 1000));
  verify->add_flag("--list-cases", list_cases, "List the built-in cases");

  CLI::App* show = app.add_subcommand("show", "Print a built-in case config and its lattice table");
  std::string show_name;
  show->add_option("case", show_name, "Case name")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return pass;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return pass;
  } catch (const CLI::ParseError& e) {
    err << "kstab: " << e.what() << "\n";
    return usage;
  }

  try {
    if (list_cases) {
      for (const azflag::CaseConfig& c : azflag::presets())
        out << c.name << "  (lattice " << c.lattice << ", Z = " << c.flag_curve << ")\n";
      return pass;
    }
    if (*show) {
      const azflag::CaseConfig& cfg = azflag::preset(show_name);
      out << azflag::to_config_text(cfg) << "\n" << cfg.dp_lattice().table();
      return pass;
    }
    if (!*verify) {
      err << app.help();
      return usage;
    }

    std::vector<azflag::CaseConfig> cases;
    if (all) cases = azflag::presets();
    for (const std::string& name : case_names) {
      const azflag::CaseConfig& cfg = azflag::preset(name);
      bool seen = std::any_of(cases.begin(), cases.end(), [&](const auto& c) { return c.name == name; });
      if (!seen) cases.push_back(cfg);
    }
    for (const std::string& path : config_files) cases.push_back(azflag::load_config(path));
    if (cases.empty()) {
      err << "kstab: verify needs --case, --config or --all\n";
      return usage;
    }

    report::VerificationReport rep = report::verify(cases, oracle_grid);
    out << (format == "json" ? rep.json() : rep.text());
    return rep.passed ? pass : fail;
  } catch (const std::invalid_argument& e) {
    err << "kstab: " << e.what() << "\n";
    return usage;
  } catch (const std::exception& e) {
    err << "kstab: computation failed: " << e.what() << "\n";
    return fail;
  }
}

}  // namespace kstab::cli
