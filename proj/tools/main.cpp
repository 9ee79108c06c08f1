// contourmon command-line front end. Talks to the simulator only through the C API.

#include <contourmon/contourmon.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "svg_plot.hpp"

namespace fs = std::filesystem;

namespace {

constexpr int kExitRuntime = 1;
constexpr int kExitUsage = 2;

struct CliError : std::runtime_error {
  int exit_code;
  CliError(int code, const std::string& msg) : std::runtime_error(msg), exit_code(code) {}
};

void check(cmon_status st, const std::string& what, int exit_code = kExitRuntime) {
  if (st != CMON_OK) throw CliError(exit_code, what + ": " + cmon_status_string(st) + ": " + cmon_last_error());
}

struct ScenarioDeleter {
  void operator()(cmon_scenario* s) const { cmon_scenario_free(s); }
};
struct ReportDeleter {
  void operator()(cmon_report* r) const { cmon_report_free(r); }
};
struct RecordsDeleter {
  void operator()(cmon_records* r) const { cmon_records_free(r); }
};
struct FieldDeleter {
  void operator()(cmon_field* f) const { cmon_field_free(f); }
};
using ScenarioPtr = std::unique_ptr<cmon_scenario, ScenarioDeleter>;
using ReportPtr = std::unique_ptr<cmon_report, ReportDeleter>;
using RecordsPtr = std::unique_ptr<cmon_records, RecordsDeleter>;
using FieldPtr = std::unique_ptr<cmon_field, FieldDeleter>;

ScenarioPtr load_scenario(const std::string& path) {
  cmon_scenario* raw = nullptr;
  if (path.empty()) {
    check(cmon_scenario_default(&raw), "default scenario");
  } else {
    if (!fs::exists(path)) throw CliError(kExitUsage, "scenario file not found: " + path);
    check(cmon_scenario_load(path.c_str(), &raw), "loading scenario '" + path + "'", kExitUsage);
  }
  return ScenarioPtr(raw);
}

// Accepts "1,2,5" and ranges such as "1-10".
std::vector<uint64_t> parse_seeds(const std::string& text) {
  std::vector<uint64_t> seeds;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item.erase(0, item.find_first_not_of(" \t"));
    item.erase(item.find_last_not_of(" \t") + 1);
    if (item.empty()) continue;
    try {
      std::size_t used = 0;
      const auto dash = item.find('-', 1);
      if (dash == std::string::npos) {
        seeds.push_back(std::stoull(item, &used));
        if (used != item.size()) throw std::invalid_argument(item);
      } else {
        const uint64_t lo = std::stoull(item.substr(0, dash));
        const uint64_t hi = std::stoull(item.substr(dash + 1));
        if (hi < lo) throw std::invalid_argument(item);
        for (uint64_t s = lo; s <= hi; ++s) seeds.push_back(s);
      }
    } catch (const std::logic_error&) {
      throw CliError(kExitUsage, "bad seed list entry '" + item + "'");
    }
  }
  if (seeds.empty()) throw CliError(kExitUsage, "seed list is empty");
  return seeds;
}

std::vector<double> parse_doubles(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      out.push_back(std::stod(item));
    } catch (const std::logic_error&) {
      throw CliError(kExitUsage, "bad number '" + item + "'");
    }
  }
  return out;
}

std::vector<cmon_iteration> records_of(const cmon_records* r) {
  std::size_t n = 0;
  check(cmon_records_count(r, &n), "records");
  std::vector<cmon_iteration> out(n);
  for (std::size_t i = 0; i < n; ++i) check(cmon_records_at(r, i, &out[i]), "records");
  return out;
}

RecordsPtr read_records(const std::string& path) {
  cmon_records* raw = nullptr;
  check(cmon_records_read_csv(path.c_str(), &raw), "reading '" + path + "'");
  return RecordsPtr(raw);
}

std::string write_status(cmon_status st, const fs::path& path) {
  check(st, "writing " + path.string());
  return path.string();
}

std::vector<std::vector<double>> read_matrix(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw CliError(kExitRuntime, "cannot read " + path.string());
  std::vector<std::vector<double>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    rows.emplace_back();
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) rows.back().push_back(std::stod(cell));
  }
  return rows;
}

struct RunResult {
  std::string mode;
  uint64_t seed;
  fs::path dir;
};

const char* mode_name(cmon_mode m) { return m == CMON_MODE_DUAL_SG ? "dual-sg" : "baseline"; }

RunResult execute(const cmon_scenario* scenario, cmon_mode mode, uint64_t seed, const fs::path& out_root) {
  cmon_report* raw = nullptr;
  check(cmon_run(scenario, mode, seed, &raw), std::string(mode_name(mode)) + " run, seed " + std::to_string(seed));
  ReportPtr report(raw);

  const fs::path dir = out_root / mode_name(mode) / ("seed_" + std::to_string(seed));
  fs::create_directories(dir);
  write_status(cmon_report_write_csv(report.get(), (dir / "run.csv").c_str()), dir / "run.csv");
  write_status(cmon_report_write_summary(report.get(), (dir / "summary.json").c_str()), dir / "summary.json");
  write_status(cmon_report_write_traces(report.get(), (dir / "traces.csv").c_str()), dir / "traces.csv");
  write_status(cmon_report_write_contours(report.get(), (dir / "contours.csv").c_str()), dir / "contours.csv");
  write_status(cmon_report_write_estimate(report.get(), (dir / "estimate.csv").c_str()), dir / "estimate.csv");
  write_status(cmon_report_write_truth(report.get(), (dir / "truth.csv").c_str()), dir / "truth.csv");
  write_status(cmon_report_write_error_map(report.get(), (dir / "error_map.csv").c_str()), dir / "error_map.csv");
  write_status(cmon_report_write_field(report.get(), (dir / "field.csv").c_str()), dir / "field.csv");

  std::size_t n = 0;
  check(cmon_report_iteration_count(report.get(), &n), "report");
  const char* termination = "";
  check(cmon_report_termination(report.get(), &termination), "report");
  cmon_iteration last{};
  if (n > 0) check(cmon_report_iteration(report.get(), n - 1, &last), "report");
  std::printf("%-8s seed %-4llu iterations %-3zu mae_db %8.3f span %.4f cost %9.2f  %s\n", mode_name(mode),
              static_cast<unsigned long long>(seed), n, last.mae_db, last.span_ratio, last.cost_cumulative,
              termination);
  return {mode_name(mode), seed, dir};
}

struct Stat {
  std::size_t count = 0;
  double sum = 0;
  double lo = INFINITY;
  double hi = -INFINITY;
  void add(double v) {
    if (!std::isfinite(v)) return;
    ++count;
    sum += v;
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
};

void write_summary_csv(const std::vector<RunResult>& runs, const fs::path& path) {
  const std::vector<std::string> metrics = {"iterations",      "final_learning_error", "final_mae",
                                            "final_mae_db",    "final_span_ratio",     "final_cost",
                                            "iterations_to_learning_error_below_0.5"};
  std::map<std::string, std::map<std::string, Stat>> stats;
  std::vector<std::string> modes;
  for (const auto& run : runs) {
    if (std::find(modes.begin(), modes.end(), run.mode) == modes.end()) modes.push_back(run.mode);
    auto records = read_records((run.dir / "run.csv").string());
    const auto rows = records_of(records.get());
    auto& s = stats[run.mode];
    s["iterations"].add(static_cast<double>(rows.size()));
    if (rows.empty()) continue;
    const auto& last = rows.back();
    s["final_learning_error"].add(last.learning_error);
    s["final_mae"].add(last.mae);
    s["final_mae_db"].add(last.mae_db);
    s["final_span_ratio"].add(last.span_ratio);
    s["final_cost"].add(last.cost_cumulative);
    for (const auto& r : rows)
      if (r.learning_error < 0.5) {
        s["iterations_to_learning_error_below_0.5"].add(r.iteration);
        break;
      }
  }
  std::ofstream out(path);
  if (!out) throw CliError(kExitRuntime, "cannot write " + path.string());
  out << "mode,metric,count,mean,min,max\n";
  char buf[256];
  for (const auto& mode : modes)
    for (const auto& metric : metrics) {
      const Stat& st = stats[mode][metric];
      if (st.count == 0) {
        out << mode << ',' << metric << ",0,,,\n";
        continue;
      }
      std::snprintf(buf, sizeof buf, "%s,%s,%zu,%.10g,%.10g,%.10g\n", mode.c_str(), metric.c_str(), st.count,
                    st.sum / static_cast<double>(st.count), st.lo, st.hi);
      out << buf;
    }
}

void emit_plots(const std::vector<RunResult>& runs, const fs::path& dir) {
  fs::create_directories(dir);
  cmon_cli::LinePlot mae_m{"MAE vs number of contour levels", "M (levels requested)", "MAE (dB)", {}};
  cmon_cli::LinePlot le_m{"Learning error vs number of contour levels", "M (levels requested)", "learning error", {}};
  cmon_cli::LinePlot spr{"Span ratio vs iteration", "iteration", "span ratio", {}};
  cmon_cli::LinePlot cost_m{"Cumulative flying distance vs M", "M (levels requested)", "cumulative cost", {}};
  cmon_cli::LinePlot mae_cost{"MAE vs cumulative flying distance", "cumulative cost", "MAE (dB)", {}};
  cmon_cli::LinePlot delta{"Redundancy threshold vs iteration", "iteration", "delta", {}};

  std::map<std::string, bool> heatmap_done;
  for (const auto& run : runs) {
    auto records = read_records((run.dir / "run.csv").string());
    const auto rows = records_of(records.get());
    const std::string color = run.mode == "dual-sg" ? "#1f77b4" : "#ff7f0e";
    cmon_cli::Series m_mae{run.mode, color, {}, {}}, m_le = m_mae, it_spr = m_mae, m_cost = m_mae, c_mae = m_mae,
                                     it_delta = m_mae;
    for (const auto& r : rows) {
      m_mae.x.push_back(r.m_requested);
      m_mae.y.push_back(r.mae_db);
      m_le.x.push_back(r.m_requested);
      m_le.y.push_back(r.learning_error);
      it_spr.x.push_back(r.iteration);
      it_spr.y.push_back(r.span_ratio);
      m_cost.x.push_back(r.m_requested);
      m_cost.y.push_back(r.cost_cumulative);
      c_mae.x.push_back(r.cost_cumulative);
      c_mae.y.push_back(r.mae_db);
      it_delta.x.push_back(r.iteration);
      it_delta.y.push_back(r.delta);
    }
    mae_m.series.push_back(m_mae);
    le_m.series.push_back(m_le);
    spr.series.push_back(it_spr);
    cost_m.series.push_back(m_cost);
    mae_cost.series.push_back(c_mae);
    if (run.mode == "dual-sg") delta.series.push_back(it_delta);

    if (!heatmap_done[run.mode]) {
      heatmap_done[run.mode] = true;
      cmon_cli::write_heatmap(read_matrix(run.dir / "error_map.csv"),
                              "Local absolute error, " + run.mode + ", seed " + std::to_string(run.seed),
                              (dir / ("error_heatmap_" + run.mode + ".svg")).string());
    }
  }
  cmon_cli::write_line_plot(mae_m, (dir / "mae_db_vs_m.svg").string());
  cmon_cli::write_line_plot(le_m, (dir / "learning_error_vs_m.svg").string());
  cmon_cli::write_line_plot(spr, (dir / "span_ratio_vs_iteration.svg").string());
  cmon_cli::write_line_plot(cost_m, (dir / "cost_vs_m.svg").string());
  cmon_cli::write_line_plot(mae_cost, (dir / "mae_db_vs_cost.svg").string());
  cmon_cli::write_line_plot(delta, (dir / "delta_vs_iteration.svg").string());
}

std::vector<double> scenario_targets(const cmon_scenario* s) {
  std::size_t n = 0;
  check(cmon_scenario_target_count(s, &n), "scenario");
  std::vector<double> t(n);
  for (std::size_t i = 0; i < n; ++i) check(cmon_scenario_target_at(s, i, &t[i]), "scenario");
  return t;
}

void compare_files(const fs::path& a, const fs::path& b, const std::string& label_a, const std::string& label_b,
                   const std::vector<double>& targets, const fs::path& cost_path, const fs::path& target_path) {
  auto ra = read_records(a.string());
  auto rb = read_records(b.string());
  int partial = 0;
  check(cmon_compare(ra.get(), rb.get(), label_a.c_str(), label_b.c_str(), targets.data(), targets.size(),
                     cost_path.c_str(), target_path.c_str(), &partial),
        "comparing " + a.string() + " and " + b.string());
  if (partial) std::fprintf(stderr, "warning: %s\n", cmon_last_error());
}

struct RunOptions {
  std::string scenario;
  std::string mode;
  std::optional<uint64_t> seed;
  std::string seeds;
  std::string out;
  int max_iters = 0;
  bool emit_plots = false;
};

int cmd_run(const RunOptions& opt) {
  ScenarioPtr scenario = load_scenario(opt.scenario);

  std::string mode = opt.mode;
  if (mode.empty()) {
    const char* m = nullptr;
    check(cmon_scenario_mode(scenario.get(), &m), "scenario");
    mode = m;
  }
  std::vector<cmon_mode> modes;
  if (mode == "dual-sg" || mode == "both") modes.push_back(CMON_MODE_DUAL_SG);
  if (mode == "baseline" || mode == "both") modes.push_back(CMON_MODE_BASELINE);
  if (modes.empty()) throw CliError(kExitUsage, "unknown mode '" + mode + "'");

  std::vector<uint64_t> seeds;
  if (opt.seed) {
    seeds = {*opt.seed};
  } else if (!opt.seeds.empty()) {
    seeds = parse_seeds(opt.seeds);
  } else {
    std::size_t n = 0;
    check(cmon_scenario_seed_count(scenario.get(), &n), "scenario");
    seeds.resize(n);
    for (std::size_t i = 0; i < n; ++i) check(cmon_scenario_seed_at(scenario.get(), i, &seeds[i]), "scenario");
  }
  if (opt.max_iters != 0) check(cmon_scenario_set_max_iterations(scenario.get(), opt.max_iters), "--max-iters", kExitUsage);

  fs::path out_root = opt.out;
  if (out_root.empty()) {
    const char* d = nullptr;
    check(cmon_scenario_output_dir(scenario.get(), &d), "scenario");
    out_root = d;
  }
  std::error_code ec;
  fs::create_directories(out_root, ec);
  if (ec) throw CliError(kExitUsage, "cannot create output directory " + out_root.string() + ": " + ec.message());

  std::vector<RunResult> runs;
  for (uint64_t seed : seeds)
    for (cmon_mode m : modes) runs.push_back(execute(scenario.get(), m, seed, out_root));

  if (modes.size() == 2) {
    const auto targets = scenario_targets(scenario.get());
    fs::create_directories(out_root / "compare");
    for (uint64_t seed : seeds) {
      const std::string tag = "seed_" + std::to_string(seed);
      compare_files(out_root / "dual-sg" / tag / "run.csv", out_root / "baseline" / tag / "run.csv", "dual-sg",
                    "baseline", targets, out_root / "compare" / (tag + "_cost.csv"),
                    out_root / "compare" / (tag + "_targets.csv"));
    }
  }
  write_summary_csv(runs, out_root / "summary.csv");
  if (opt.emit_plots) emit_plots(runs, out_root / "plots");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Contour-based UAV spatial monitoring simulator"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(cmon_version()));

  RunOptions run_opt;
  auto* run = app.add_subcommand("run", "Run the monitoring loop for one or more seeds");
  run->add_option("--scenario", run_opt.scenario, "Scenario file (built-in defaults when omitted)");
  run->add_option("--mode", run_opt.mode, "dual-sg, baseline or both (default: from scenario)")
      ->check(CLI::IsMember({"dual-sg", "baseline", "both"}));
  auto* seed_opt = run->add_option("--seed", run_opt.seed, "Single seed");
  run->add_option("--seeds", run_opt.seeds, "Seed list, e.g. 1,2,3 or 1-10")->excludes(seed_opt);
  run->add_option("--out", run_opt.out, "Output directory (default: from scenario)");
  run->add_option("--max-iters", run_opt.max_iters, "Iteration cap")->check(CLI::PositiveNumber);
  run->add_flag("--emit-plots", run_opt.emit_plots, "Write SVG plots under <out>/plots");

  std::string cmp_a, cmp_b, cmp_labels = "a,b", cmp_targets = "0,-5,-10", cmp_out = ".";
  auto* cmp = app.add_subcommand("compare", "Compare two run CSVs on a common cost axis");
  cmp->add_option("run_a", cmp_a, "First run CSV")->required();
  cmp->add_option("run_b", cmp_b, "Second run CSV")->required();
  cmp->add_option("--labels", cmp_labels, "Column labels, comma separated");
  cmp->add_option("--targets", cmp_targets, "MAE targets in dB, comma separated");
  cmp->add_option("--out", cmp_out, "Output directory");

  std::string field_scenario, field_out = "field.csv";
  uint64_t field_seed = 1;
  auto* field = app.add_subcommand("field", "Write the Gaussian components of a generated field");
  field->add_option("--scenario", field_scenario, "Scenario file");
  field->add_option("--seed", field_seed, "Seed");
  field->add_option("--out", field_out, "Output CSV");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*run) return cmd_run(run_opt);
    if (*cmp) {
      const auto labels = CLI::detail::split(cmp_labels, ',');
      if (labels.size() != 2) throw CliError(kExitUsage, "--labels needs exactly two entries");
      fs::create_directories(cmp_out);
      compare_files(cmp_a, cmp_b, labels[0], labels[1], parse_doubles(cmp_targets), fs::path(cmp_out) / "cost_table.csv",
                    fs::path(cmp_out) / "target_table.csv");
      return 0;
    }
    if (*field) {
      ScenarioPtr scenario = load_scenario(field_scenario);
      cmon_field* raw = nullptr;
      check(cmon_field_generate(scenario.get(), field_seed, &raw), "field generation");
      FieldPtr f(raw);
      check(cmon_field_write_components(f.get(), field_out.c_str()), "writing " + field_out);
      return 0;
    }
  } catch (const CliError& e) {
    std::fprintf(stderr, "contourmon: %s\n", e.what());
    return e.exit_code;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "contourmon: %s\n", e.what());
    return kExitRuntime;
  }
  return 0;
}
