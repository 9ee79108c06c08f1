#include <filesystem>
#include <fstream>

#include "contourmon/error.hpp"
#include "contourmon/scenario.hpp"
#include "doctest.h"

using namespace contourmon;

namespace {

ErrorCode parse_error(const std::string& text) {
  try {
    scenario::parse(text);
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::Shape;
}

}  // namespace

TEST_SUITE("scenario") {
  TEST_CASE("empty text gives the reference defaults") {
    const auto s = scenario::parse("");
    CHECK(s.name == "default");
    CHECK(s.mode == "both");
    CHECK(s.seeds == std::vector<std::uint64_t>{1});
    CHECK(s.config.field.area.width == 100.0);
    CHECK(s.config.field.sigma1 == 10.0);
    CHECK(s.config.field.sigma2 == 15.0);
    CHECK(s.config.initial_m == 3);
    CHECK(s.config.grid.P == 101);
    CHECK(s.config.grid.Q == 101);
  }

  TEST_CASE("sections and keys") {
    const auto s = scenario::parse(R"(
[scenario]
name = wide
mode = dual-sg
output_dir = results
seeds = 3, 9, 27

[field]
width = 200
height = 50
n1 = 4
n2 = 0

[grid]
P = 41
Q = 11

[run]
max_iterations = 7
initial_delta_fraction = 0.1

[trace]
step = 0.25
report_spacing = 0.5

[compare]
mae_db_targets = -3, -6
)");
    CHECK(s.name == "wide");
    CHECK(s.mode == "dual-sg");
    CHECK(s.output_dir == "results");
    CHECK(s.seeds == std::vector<std::uint64_t>{3, 9, 27});
    CHECK(s.config.field.area == Area{200, 50});
    CHECK(s.config.grid.area == Area{200, 50});
    CHECK(s.config.field.n2 == 0);
    CHECK(s.config.grid.P == 41);
    CHECK(s.config.convergence.max_iterations == 7);
    CHECK(s.config.initial_delta_fraction == 0.1);
    CHECK(s.config.trace.step == 0.25);
    CHECK(s.mae_db_targets == std::vector<double>{-3, -6});

    const auto rc = s.run_config(dfc::Mode::Baseline, 27);
    CHECK(rc.mode == dfc::Mode::Baseline);
    CHECK(rc.field.seed == 27);
  }

  TEST_CASE("invalid scenarios are configuration errors") {
    CHECK(parse_error("[field]\ncolour = red\n") == ErrorCode::Config);
    CHECK(parse_error("[weather]\nwind = 3\n") == ErrorCode::Config);
    CHECK(parse_error("[scenario]\nmode = fast\n") == ErrorCode::Config);
    CHECK(parse_error("[scenario]\nseeds = 1, x\n") == ErrorCode::Config);
    CHECK(parse_error("[scenario]\nseeds = \n") == ErrorCode::Config);
    CHECK(parse_error("[field]\nsigma1 = -2\n") == ErrorCode::Config);
    CHECK(parse_error("[grid]\nP = 1\n") == ErrorCode::Config);
    CHECK(parse_error("[trace]\nreport_spacing = 0.1\n") == ErrorCode::Config);
    CHECK(parse_error("[run]\nmax_iterations = ten\n") == ErrorCode::Config);
    CHECK(parse_error("no section = 1\n") == ErrorCode::Config);
    CHECK(parse_error("[field\n") == ErrorCode::Config);
  }

  TEST_CASE("load reads files and reports missing ones") {
    const auto path = std::filesystem::temp_directory_path() / "contourmon_scenario_test.cfg";
    {
      std::ofstream out(path);
      out << "[scenario]\nname = from-file\n";
    }
    CHECK(scenario::load(path).name == "from-file");
    std::filesystem::remove(path);
    CHECK_THROWS_AS(scenario::load(path), Error);
  }

  TEST_CASE("seed lists") {
    CHECK(scenario::parse_seed_list("5") == std::vector<std::uint64_t>{5});
    CHECK(scenario::parse_seed_list(" 1,2 ,3") == std::vector<std::uint64_t>{1, 2, 3});
    CHECK_THROWS_AS(scenario::parse_seed_list("-1"), Error);
    CHECK_THROWS_AS(scenario::parse_seed_list(""), Error);
  }
}
