#include <cmath>
#include <sstream>

#include "contourmon/error.hpp"
#include "contourmon/report_io.hpp"
#include "doctest.h"
#include "json.hpp"

using namespace contourmon;

namespace {

dfc::RunReport sample_report() {
  dfc::RunReport r;
  r.mode = dfc::Mode::Baseline;
  r.seed = 4;
  r.termination = "converged";
  r.converged = true;
  metrics::IterationRecord a;
  a.iteration = 1;
  a.m_requested = 3;
  a.m_traced = 3;
  a.learning_error = 2.5;
  a.mae = 1.25;
  a.mae_db = 20 * std::log10(1.25);
  a.span_ratio = 0.875;
  a.kappa = 1;
  a.delta = 0;
  a.cost_increment = 120.5;
  a.cost_cumulative = 120.5;
  a.levels = {10.5, 40, 70.25};
  metrics::IterationRecord b = a;
  b.iteration = 2;
  b.mae = 0;
  b.mae_db = -INFINITY;
  b.levels = {};
  r.records = {a, b};
  return r;
}

}  // namespace

TEST_SUITE("report_io") {
  TEST_CASE("run CSV schema and round trip") {
    const auto r = sample_report();
    std::ostringstream out;
    report::write_run_csv(r, out);
    const std::string text = out.str();
    CHECK(text.rfind(
              "iteration,M_requested,M_traced,learning_error,mae,mae_db,span_ratio,kappa,delta,cost_increment,"
              "cost_cumulative,levels\n",
              0) == 0);
    CHECK(text.find("10.5;40;70.25\n") != std::string::npos);
    CHECK(text.find(",-inf,") != std::string::npos);

    std::istringstream in(text);
    const auto back = report::read_run_csv(in);
    REQUIRE(back.size() == 2);
    CHECK(back[0].levels == r.records[0].levels);
    CHECK(back[0].mae_db == doctest::Approx(r.records[0].mae_db).epsilon(1e-9));
    CHECK(back[1].levels.empty());
    CHECK(std::isinf(back[1].mae_db));
    CHECK(back[1].cost_cumulative == 120.5);
  }

  TEST_CASE("malformed run CSV is rejected") {
    auto code = [](const std::string& text) {
      std::istringstream in(text);
      try {
        report::read_run_csv(in);
      } catch (const Error& e) {
        return e.code();
      }
      return ErrorCode::Config;
    };
    CHECK(code("nope\n") == ErrorCode::Io);
    CHECK(code(std::string(report::kRunCsvHeader) + "\n1,2,3\n") == ErrorCode::Io);
    CHECK(code(std::string(report::kRunCsvHeader) + "\n1,3,3,x,1,0,1,1,0,0,0,\n") == ErrorCode::Io);
  }

  TEST_CASE("summary JSON") {
    std::ostringstream out;
    report::write_summary_json(sample_report(), out);
    const auto j = nlohmann::json::parse(out.str());
    CHECK(j["mode"] == "baseline");
    CHECK(j["seed"] == 4);
    CHECK(j["converged"] == true);
    CHECK(j["iterations"] == 2);
    CHECK(j["final"]["mae_db"].is_null());
  }
}
