#include <cmath>
#include <cstring>
#include <filesystem>
#include <limits>

#include <catch2/catch_amalgamated.hpp>

#include "qtt/error.hpp"
#include "qtt/report/config.hpp"
#include "qtt/report/experiment.hpp"
#include "qtt/report/runs.hpp"
#include "qtt/report/table.hpp"
#include "qtt/report/validate.hpp"
#include "support/generators.hpp"

using namespace qtt;
using namespace qtt::report;

namespace {

ErrorCode code_of(const auto& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::InvalidArgument;
}

ExperimentConfig small_config() {
  ExperimentConfig cfg;
  cfg.atoms = {atom::Atom::He};
  cfg.intensities_W_cm2 = {2e14, 4e14};
  cfg.rect.heights = {1.0, 2.0, 3.0};
  cfg.rect.widths = {0.5, 1.0};
  return cfg;
}

std::uint64_t bits(double x) {
  std::uint64_t b;
  std::memcpy(&b, &x, sizeof b);
  return b;
}

} // namespace

TEST_CASE("numbers survive text formatting bit for bit") {
  testing::Gen gen(61);
  for (int trial = 0; trial < 20000; ++trial) {
    const double x = (gen.integer(0, 1) ? 1 : -1) * gen.log_uniform(1e-300, 1e300);
    CHECK(bits(parse_number(format_number(x))) == bits(x));
  }
  for (double x : {0.0, -0.0, 5e-324, std::numeric_limits<double>::max(), 0.1, 1.0 / 3.0}) {
    CHECK(bits(parse_number(format_number(x))) == bits(x));
  }
  CHECK(std::isnan(parse_number(format_number(std::nan("")))));
  CHECK(std::isinf(parse_number(format_number(INFINITY))));
  CHECK(format_number(0.1) == "0.10000000000000001");
  CHECK(code_of([] { parse_number("1.0x"); }) == ErrorCode::MalformedDataFile);
}

TEST_CASE("tables round-trip through CSV") {
  FigureTable t("demo", {Column::label("name"), Column::number("time_as", Unit::attosecond),
                         Column::number("eta", Unit::atomic_length)},
                "demo table, with a comma");
  t.set_config_hash("0123456789abcdef");
  t.add_row({std::string("plain"), 1.0 / 3.0, 42.0});
  t.add_row({std::string("has, comma and \"quotes\""), std::nan(""), -1e-310});
  const std::string text = to_csv(t);
  const auto back = parse_csv(text);
  CHECK(back == t);
  CHECK(to_csv(back) == text);
  CHECK(back.columns()[1].unit == Unit::attosecond);
  CHECK(text.rfind("#{", 0) == 0);
}

TEST_CASE("rows must match the columns") {
  FigureTable t("demo", {Column::number("x", Unit::dimensionless)}, "");
  CHECK_THROWS_AS(t.add_row({1.0, 2.0}), Error);
  CHECK_THROWS_AS(t.add_row({std::string("x")}), Error);
  CHECK_THROWS_AS(FigureTable("bad", {Column::label("a"), Column::label("a")}, ""), Error);
}

TEST_CASE("corrupt CSV reports the line") {
  FigureTable t("demo", {Column::number("x", Unit::dimensionless)}, "");
  t.add_row({1.0});
  std::string text = to_csv(t) + "abc\n";
  try {
    parse_csv(text);
    FAIL("no exception");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::MalformedDataFile);
    CHECK(std::string(e.what()).find("line 4") != std::string::npos);
  }
  CHECK(code_of([] { parse_csv("x\n1\n"); }) == ErrorCode::MalformedDataFile);
}

TEST_CASE("config defaults and overrides") {
  const auto def = parse_config("{}");
  CHECK(def.mode == Mode::tables);
  CHECK(def.atoms.size() == 3);
  CHECK(def.intensities_W_cm2 == std::vector<double>{1.08e14, 1.7e14, 6.12e14});
  CHECK(def.laser.ellipticity == 0.85);
  CHECK(def.laser.omega == 0.035);
  CHECK(def.laser.tau_fs == 156.0);
  CHECK(validate_config(def).empty());

  const auto cfg = parse_config(R"({"mode": "atom", "atoms": ["Kr"], "intensities_Wcm2": [2e14],
      "laser": {"ellipticity": 0.5}, "exit_eta": 30, "rect": {"widths": [1, 2]},
      "tolerances": {"wkb_rel": 1e-7}, "trajectories": true})");
  CHECK(cfg.mode == Mode::atom);
  CHECK(cfg.atoms == std::vector<atom::Atom>{atom::Atom::Kr});
  CHECK(cfg.laser.ellipticity == 0.5);
  CHECK(cfg.exit_eta == 30.0);
  CHECK(cfg.rect.widths.size() == 2);
  CHECK(cfg.tolerances.wkb_rel == 1e-7);
  CHECK(cfg.trajectories);
}

TEST_CASE("config validation") {
  CHECK(code_of([] { parse_config(R"({"atom": ["He"]})"); }) == ErrorCode::InvalidConfig);
  CHECK(code_of([] { parse_config(R"({"atoms": ["Xe"]})"); }) == ErrorCode::InvalidConfig);
  CHECK(code_of([] { parse_config(R"({"atoms": "He"})"); }) == ErrorCode::InvalidConfig);
  CHECK(code_of([] { parse_config("{not json"); }) == ErrorCode::InvalidConfig);
  CHECK(code_of([] { validate_config(parse_config(R"({"atoms": []})")); }) == ErrorCode::InvalidConfig);
  CHECK(code_of([] { validate_config(parse_config(R"({"intensities_Wcm2": []})")); }) ==
        ErrorCode::InvalidConfig);
  CHECK(code_of([] { validate_config(parse_config(R"({"rect": {"heights": []}})")); }) ==
        ErrorCode::InvalidConfig);
  CHECK(code_of([] { validate_config(parse_config(R"({"exit_eta": -1})")); }) ==
        ErrorCode::InvalidConfig);
  const auto warnings = validate_config(parse_config(R"({"intensities_Wcm2": [5e12, 1e14]})"));
  REQUIRE(warnings.size() == 1);
  CHECK(warnings[0].find("outside") != std::string::npos);
}

TEST_CASE("config hash ignores the output directory only") {
  auto a = parse_config("{}");
  auto b = a;
  b.output_dir = "elsewhere";
  CHECK(config_hash(a) == config_hash(b));
  b.laser.ellipticity = 0.8;
  CHECK(config_hash(a) != config_hash(b));
}

TEST_CASE("experimental data ingestion") {
  const auto d = parse_dataset(
      "# transcribed\nintensity_Wcm2,time_as,error_as,instrument\n"
      "6e14, 80, 10, COLTRIMS\n\n2e14,110,12,VMIS\n");
  REQUIRE(d.points.size() == 2);
  CHECK(d.points[0].intensity_W_cm2 == 2e14);
  CHECK(d.points[0].instrument == "VMIS");
  CHECK(d.points[1].time_as == 80.0);

  const auto line_of = [](const std::string& text) -> std::string {
    try {
      parse_dataset(text);
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::MalformedDataFile);
      return e.what();
    }
    return "";
  };
  const std::string header = "intensity_Wcm2,time_as,error_as,instrument\n";
  CHECK(line_of(header + "1e14,10,1,a\n2e14,abc,1,b\n").find("line 3") != std::string::npos);
  CHECK(line_of(header + "1e14,10,1\n").find("line 2") != std::string::npos);
  CHECK(line_of(header + "-1e14,10,1,a\n").find("line 2") != std::string::npos);
  CHECK(line_of(header + "1e14,10,-1,a\n").find("line 2") != std::string::npos);
  CHECK(line_of(header + "1e14,10,1,a\n1e14,11,1,b\n").find("line 3") != std::string::npos);
  CHECK(line_of("time,intensity\n").find("line 1") != std::string::npos);
  CHECK(line_of("").find("missing header") != std::string::npos);
}

TEST_CASE("overlay of the model's own curve has zero residuals") {
  auto cfg = small_config();
  const auto empty = overlay_experiment(cfg, {});
  REQUIRE(empty.warnings.size() == 1);
  REQUIRE(empty.table.rows().size() == 2);
  CHECK(std::isnan(empty.table.number(0, "residual_as")));

  std::string csv = "intensity_Wcm2,time_as,error_as,instrument\n";
  for (std::size_t r = 0; r < empty.table.rows().size(); ++r) {
    csv += format_number(empty.table.number(r, "intensity_Wcm2")) + "," +
           format_number(empty.table.number(r, "qtt_model_as")) + ",1,self\n";
  }
  const auto overlay = overlay_experiment(cfg, parse_dataset(csv));
  CHECK(overlay.warnings.empty());
  for (double r : overlay.table.number_column("residual_as")) CHECK(r == 0.0);
}

TEST_CASE("overlay does not depend on row order") {
  auto cfg = small_config();
  const std::string header = "intensity_Wcm2,time_as,error_as,instrument\n";
  const auto a = overlay_experiment(cfg, parse_dataset(header + "2e14,100,5,x\n4e14,90,5,y\n"));
  const auto b = overlay_experiment(cfg, parse_dataset(header + "4e14,90,5,y\n2e14,100,5,x\n"));
  CHECK(a.table == b.table);
  CHECK(a.table.number(0, "intensity_Wcm2") == 2e14);
}

TEST_CASE("two runs give byte-identical files") {
  auto cfg = small_config();
  cfg.mode = Mode::atom;
  cfg.trajectories = true;
  cfg.trajectory_samples = 21;
  const auto first = run(cfg);
  const auto second = run(cfg);
  REQUIRE(first.tables.size() == second.tables.size());
  for (std::size_t i = 0; i < first.tables.size(); ++i) {
    CHECK(to_csv(first.tables[i]) == to_csv(second.tables[i]));
    CHECK(first.tables[i].config_hash() == config_hash(cfg));
  }

  const auto dir = std::filesystem::temp_directory_path() / "qtt_report_test";
  std::filesystem::remove_all(dir);
  const auto paths = write_tables(first.tables, dir);
  for (std::size_t i = 0; i < paths.size(); ++i) CHECK(read_csv_file(paths[i]) == first.tables[i]);
  std::filesystem::remove_all(dir);
}

TEST_CASE("turning-point table rows and diagnostics") {
  ExperimentConfig cfg;
  cfg.intensities_W_cm2 = {1.08e14, 2e15};
  const auto t = run_tables(cfg);
  REQUIRE(t.rows().size() == 9); // 2 fixed intensities plus one extra, three atoms
  CHECK(t.label(0, "atom") == "He");
  CHECK(std::abs(t.number(0, "eta_R") / 42.0210 - 1.0) < 1e-3);
  CHECK(t.label(5, "atom") == "Kr");
  CHECK(std::abs(t.number(5, "eta_L") / 5.2817 - 1.0) < 1e-3);
  CHECK(t.label(8, "status").rfind("NoBarrier", 0) == 0);
  CHECK(std::isnan(t.number(8, "eta_R")));
}

TEST_CASE("time against intensity is in long format with reference columns") {
  ExperimentConfig cfg;
  cfg.atoms = {atom::Atom::Kr};
  const auto t = run_time_vs_intensity(cfg);
  REQUIRE(t.rows().size() == 3);
  CHECK(t.number(0, "phase_time_ref_as") == 138.0);
  CHECK(t.number(2, "phase_time_ref_as") == 64.0);
  cfg.intensities_W_cm2 = {2e14};
  CHECK(run_time_vs_intensity(cfg).rows().size() == 1);
}

TEST_CASE("rect grid") {
  auto cfg = small_config();
  const auto t = run_rect(cfg);
  REQUIRE(t.rows().size() == 6);
  for (std::size_t r = 0; r < t.rows().size(); ++r) {
    const double E = t.number(r, "E");
    if (t.number(r, "V0") == E) {
      CHECK(t.label(r, "status").rfind("DegenerateInput", 0) == 0);
      continue;
    }
    CHECK(t.label(r, "status") == "ok");
    CHECK(t.number(r, "qtt_III_as") == atomic_time_to_as(1.0 / std::sqrt(2.0 * E)));
    CHECK(std::abs(t.number(r, "qtt_II_exp_ratio") - 2.0) < 1e-8);
  }
}

TEST_CASE("validation suite") {
  const auto checks = run_validation(ExperimentConfig{});
  REQUIRE(checks.size() > 10);
  for (const auto& c : checks) {
    INFO(c.name << " measured " << c.measured << " detail " << c.detail);
    CHECK(c.passed);
  }
  const auto t = validation_table(checks);
  CHECK(t.rows().size() == checks.size());
}
