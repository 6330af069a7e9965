#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qtt/error.hpp"
#include "qtt/report/config.hpp"
#include "qtt/report/runs.hpp"
#include "qtt/report/validate.hpp"

namespace {

using nlohmann::json;
namespace report = qtt::report;

enum ExitCode { kOk = 0, kError = 1, kChecksFailed = 3 };

struct Overrides {
  std::string config;
  std::string out;
  std::vector<double> intensities;
  std::vector<std::string> atoms;
  double exit_eta = 0.0;
  std::string experiment;
  bool trajectories = false;
};

void add_common(CLI::App* cmd, Overrides& o) {
  cmd->add_option("--config", o.config, "JSON configuration file")->required()->check(CLI::ExistingFile);
  cmd->add_option("--out", o.out, "output directory (overrides output_dir)");
  cmd->add_option("--intensities", o.intensities, "intensity grid in W/cm2")->delimiter(',');
  cmd->add_option("--atoms", o.atoms, "atoms, e.g. He,Ar,Kr")->delimiter(',');
  cmd->add_option("--exit-eta", o.exit_eta, "eta where the electron is taken to emerge");
}

void fail(const std::string& code, const std::string& message) {
  std::cerr << json{{"status", "error"}, {"code", code}, {"message", message}}.dump() << '\n';
}

report::ExperimentConfig build_config(const CLI::App& cmd, const Overrides& o, report::Mode mode) {
  auto cfg = report::load_config(o.config);
  cfg.mode = mode;
  if (cmd.count("--out")) cfg.output_dir = o.out;
  if (cmd.count("--intensities")) cfg.intensities_W_cm2 = o.intensities;
  if (cmd.count("--atoms")) {
    cfg.atoms.clear();
    for (const auto& name : o.atoms) {
      const auto a = qtt::atom::parse_atom(name);
      if (!a) throw qtt::Error(qtt::ErrorCode::InvalidConfig, "unsupported atom '" + name + "'");
      cfg.atoms.push_back(*a);
    }
  }
  if (cmd.count("--exit-eta")) cfg.exit_eta = o.exit_eta;
  if (cmd.get_option_no_throw("--experiment") && cmd.count("--experiment")) {
    cfg.experiment_data = o.experiment;
  }
  if (cmd.get_option_no_throw("--trajectories") && cmd.count("--trajectories")) {
    cfg.trajectories = true;
  }
  return cfg;
}

int execute(const report::ExperimentConfig& cfg) {
  const auto result = report::run(cfg);
  for (const auto& w : result.warnings) std::cerr << "warning: " << w << '\n';
  for (const auto& path : report::write_tables(result.tables, cfg.output_dir)) {
    std::cout << path.generic_string() << '\n';
  }

  if (cfg.mode != report::Mode::validate) return kOk;
  const auto& t = result.tables.front();
  json failed = json::array();
  for (std::size_t r = 0; r < t.rows().size(); ++r) {
    const auto& verdict = t.label(r, "verdict");
    std::cout << (verdict == "FAIL" ? "FAIL" : verdict == "pass" ? "PASS" : "INFO") << "  "
              << t.label(r, "check") << "  measured=" << report::format_number(t.number(r, "measured"));
    if (verdict != "measured") {
      std::cout << " tolerance=" << report::format_number(t.number(r, "tolerance"));
    }
    if (!t.label(r, "detail").empty()) std::cout << "  (" << t.label(r, "detail") << ')';
    std::cout << '\n';
    if (verdict == "FAIL") failed.push_back(t.label(r, "check"));
  }
  if (!failed.empty()) {
    std::cerr << json{{"status", "checks_failed"}, {"failed", failed}}.dump() << '\n';
    return kChecksFailed;
  }
  return kOk;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quantum travel time through rectangular and atomic tunnelling barriers"};
  app.require_subcommand(1);

  Overrides o;
  struct Verb {
    const char* name;
    const char* help;
    report::Mode mode;
    CLI::App* cmd = nullptr;
  };
  std::vector<Verb> verbs{
      {"rect", "rectangular barrier travel and dwell times", report::Mode::rect},
      {"atom", "travel time against intensity for He, Ar and Kr", report::Mode::atom},
      {"tables", "turning points, barrier maximum and travel time", report::Mode::tables},
      {"validate", "oracle cross-checks with measured discrepancies", report::Mode::validate},
  };
  for (auto& v : verbs) {
    v.cmd = app.add_subcommand(v.name, v.help);
    add_common(v.cmd, o);
    if (v.mode == report::Mode::atom) {
      v.cmd->add_option("--experiment", o.experiment, "measured data to overlay (CSV)")
          ->check(CLI::ExistingFile);
      v.cmd->add_flag("--trajectories", o.trajectories, "also write cumulative-time trajectories");
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    for (const auto& v : verbs) {
      if (v.cmd->parsed()) return execute(build_config(*v.cmd, o, v.mode));
    }
  } catch (const qtt::Error& e) {
    fail(std::string(qtt::to_string(e.code())), e.detail());
    return kError;
  } catch (const std::exception& e) {
    fail("Internal", e.what());
    return kError;
  }
  return kError;
}
