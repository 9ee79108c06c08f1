// Acceptance suite: one PASS/FAIL line per criterion, details indented below.
// Exit status is non-zero when any criterion fails.

#include <contourmon/contourmon.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "analytic_fields.hpp"
#include "contour_oracle.hpp"
#include "contourmon/compare.hpp"
#include "contourmon/dfc.hpp"
#include "contourmon/field.hpp"
#include "contourmon/interp.hpp"
#include "contourmon/levels.hpp"
#include "contourmon/metrics.hpp"
#include "contourmon/scenario.hpp"
#include "contourmon/uav.hpp"
#include "quantizer_oracle.hpp"

using namespace contourmon;

namespace {

struct Outcome {
  bool ok = true;
  std::vector<std::string> details;

  void expect(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      details.push_back("failed: " + what);
    }
  }
  template <class... A>
  void note(const char* fmt, A... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, fmt, args...);
    details.emplace_back(buf);
  }
};

int failures = 0;

void criterion(int id, const char* title, double budget_s, const std::function<void(Outcome&)>& body) {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    body(o);
  } catch (const std::exception& e) {
    o.ok = false;
    o.details.push_back(std::string("exception: ") + e.what());
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (budget_s > 0 && secs > budget_s) {
    o.ok = false;
    o.note("runtime %.2f s exceeds the %.0f s budget", secs, budget_s);
  }
  std::printf("[%s] criterion %d: %s (%.2f s)\n", o.ok ? "PASS" : "FAIL", id, title, secs);
  for (const auto& d : o.details) std::printf("       %s\n", d.c_str());
  std::fflush(stdout);
  if (!o.ok) ++failures;
}

bool close(double a, double b, double tol) { return std::abs(a - b) <= tol; }

// ---- criterion 1 ----------------------------------------------------------

void formulas(Outcome& o) {
  o.expect(dfc::update_kappa(1, 0.8, 0.8).kappa == 2, "kappa(1, e, e) = 2");
  o.expect(dfc::update_kappa(2, 2, 1).kappa == 4, "kappa(2, 2, 1) = 4");
  o.expect(dfc::update_kappa(3, 3, 1).kappa == 5, "kappa(3, 3, 1) = 5");
  const double d = 0.37;
  o.expect(dfc::update_delta(d, 3, 1).delta == 0.0, "delta(d, 3, 1) = 0");
  o.expect(dfc::update_delta(d, 1, 3).delta == 2 * d, "delta(d, 1, 3) = 2d");
  o.expect(dfc::update_delta(d, 0.5, 0.5).delta == d, "delta(d, e, e) = d");

  const interp::GridSpec s{2, 2, Area{1, 1}};
  const interp::GridEstimate a(s, {0, 0, 0, 4}), z(s, {0, 0, 0, 0});
  const interp::GridEstimate t(s, {1, 2, 3, 4}), pm(s, {2, 1, 4, 3}), plus2(s, {3, 4, 5, 6});
  o.expect(close(metrics::learning_error(a, z), 1.0, 1e-12), "learning error [[0,0],[0,4]] vs 0 = 1");
  o.expect(close(metrics::learning_error(z, z), 0.0, 1e-12), "learning error of identical grids = 0");
  o.expect(close(metrics::mae(t, plus2), 2.0, 1e-12), "mae(truth, truth + 2) = 2");
  o.expect(close(metrics::mae(t, pm), 1.0, 1e-12), "mae with +-1 errors = 1");
  o.expect(close(metrics::mae_db(1.0), 0.0, 1e-12), "mae_db(1) = 0");
  o.expect(close(metrics::mae_db(10.0), 20.0, 1e-12), "mae_db(10) = 20");
  o.expect(close(metrics::mae_db(0.1), -20.0, 1e-12), "mae_db(0.1) = -20");
  o.expect(close(metrics::mae_db(metrics::mae(t, pm)), 0.0, 1e-12), "mae_db(mae) on the 2x2 case");
}

// ---- criterion 2 ----------------------------------------------------------

levels::EmpiricalPdf atoms(const std::vector<double>& at, const std::vector<double>& mass) {
  levels::EmpiricalPdf p;
  for (std::size_t k = 0; k < at.size(); ++k) {
    if (k > 0) p.probs.push_back(0.0);
    p.edges.push_back(at[k] - 5e-4);
    p.edges.push_back(at[k] + 5e-4);
    p.probs.push_back(mass[k]);
  }
  return p;
}

void lloyd_max(Outcome& o) {
  levels::EmpiricalPdf u;
  for (int k = 0; k <= 256; ++k) u.edges.push_back(100.0 * k / 256);
  u.probs.assign(256, 1.0 / 256);
  for (int M : {1, 2, 4, 8}) {
    const auto r = levels::lloyd_max_levels(u, M);
    bool good = r.levels.size() == static_cast<std::size_t>(M);
    double worst = 0;
    for (int k = 0; good && k < M; ++k) worst = std::max(worst, std::abs(r.levels[k] - 100.0 * (k + 0.5) / M));
    good = good && worst <= 1e-9;
    o.expect(good, "uniform pdf, M = " + std::to_string(M));
    o.note("uniform M=%d: max level error %.3g", M, worst);
  }
  struct Case {
    std::vector<double> at, mass;
    int M;
  };
  const std::vector<Case> cases{{{20, 80}, {0.5, 0.5}, 2},
                                {{20, 80}, {0.3, 0.7}, 1},
                                {{10, 50, 90}, {0.2, 0.5, 0.3}, 2},
                                {{10, 20, 90}, {0.45, 0.1, 0.45}, 2},
                                {{5, 60, 95}, {0.6, 0.1, 0.3}, 2},
                                {{10, 50, 90}, {0.2, 0.5, 0.3}, 3}};
  for (const auto& c : cases) {
    const auto pdf = atoms(c.at, c.mass);
    const auto r = levels::lloyd_max_levels(pdf, c.M);
    const double got = testsupport::oracle_mse(pdf, r.levels);
    const double best = testsupport::exhaustive_best(pdf, c.at, c.mass, c.M);
    o.expect(std::abs(got - best) <= 1e-9, std::to_string(c.at.size()) + "-mass pdf, M = " + std::to_string(c.M));
    o.note("%zu-mass M=%d: mse %.12g, exhaustive optimum %.12g", c.at.size(), c.M, got, best);
  }
}

// ---- criterion 3 ----------------------------------------------------------

void interpolation(Outcome& o) {
  field::FieldConfig cfg;
  cfg.seed = 2024;
  const auto f = field::generate_field(cfg);
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> u(0.0, 100.0);
  std::vector<interp::SamplePoint> samples;
  for (int k = 0; k < 200; ++k) {
    const double x = u(rng), y = u(rng);
    samples.push_back({x, y, f.eval(x, y)});
  }
  const auto model = interp::fit(samples);
  double worst = 0;
  for (const auto& s : samples) worst = std::max(worst, std::abs(model(s.x, s.y) - s.value));
  o.expect(worst <= 1e-6, "training samples reproduced to 1e-6");
  o.note("max training residual %.3g", worst);

  const interp::GridSpec spec{101, 101, Area{}};
  const auto est = interp::evaluate_grid(model, spec);
  const auto truth = metrics::truth_grid(f, spec);
  double ss = 0;
  for (std::size_t k = 0; k < est.values().size(); ++k) ss += std::pow(est.values()[k] - truth.values()[k], 2);
  const double rel = std::sqrt(ss / static_cast<double>(est.values().size())) / truth.range();
  o.expect(rel < 0.05, "held-out RMS below 5% of the field range");
  o.note("held-out RMS / range = %.4f", rel);
}

// ---- criterion 4 ----------------------------------------------------------

void tracer(Outcome& o) {
  const testsupport::RadialField cone({100, 100}, 100.0, Area{200, 200});
  const uav::TraceParams p;
  for (double level : {25.0, 50.0, 75.0}) {
    const double r = 100.0 - level;
    const auto t = uav::trace_contour(cone, level, {100 + r, 100}, p);
    double worst = 0;
    for (const Vec2& c : t.reported) worst = std::max(worst, std::abs(cone.eval(c) - level));
    const double rel = t.path_length / (2 * std::numbers::pi * r) - 1.0;
    o.expect(t.closed, "level " + std::to_string(level) + " trace closes");
    o.expect(worst <= p.trace_tol, "reported points within trace_tol");
    o.expect(std::abs(rel) <= 0.01, "path length within 1% of the circumference");
    o.note("level %.0f: closed=%d, %zu reports, max |g - level| %.2g, length error %+.4f%%", level, t.closed,
           t.reported.size(), worst, 100 * rel);
  }
}

// ---- criterion 5 ----------------------------------------------------------

void contours(Outcome& o) {
  int grids = 0, mismatches = 0;
  std::size_t segments = 0;
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(0.0, 10.0);
    std::vector<double> v(256);
    for (auto& x : v) x = u(rng);
    const interp::GridEstimate g(interp::GridSpec{16, 16, Area{15, 15}}, v);
    for (int k = 0; k < 3; ++k) {
      const double level = u(rng);
      const auto oracle = testsupport::brute_force_segments(g, level);
      segments += oracle.size();
      if (!testsupport::same_segments(testsupport::library_segments(g, level), oracle, 1e-12)) ++mismatches;
      ++grids;
    }
  }
  o.expect(mismatches == 0, "segment sets equal the brute-force enumeration");
  o.note("%d grid/level pairs, %zu segments, %d mismatches", grids, segments, mismatches);
}

// ---- criteria 6 and 7 -----------------------------------------------------

struct Pair {
  std::uint64_t seed;
  dfc::RunReport dual, base;
};

int first_below(const std::vector<metrics::IterationRecord>& r, double threshold) {
  for (const auto& x : r)
    if (x.learning_error < threshold) return x.iteration;
  return -1;
}

void comparative(Outcome& o, const std::vector<Pair>& runs, double threshold) {
  int a_wins = 0, c_wins = 0, spr_in = 0;
  double spr_sum = 0;
  o.note("seed  iters<%.1f dual/base  final spr dual  common MAE-dB  cost dual / base", threshold);
  for (const auto& p : runs) {
    const int id = first_below(p.dual.records, threshold);
    const int ib = first_below(p.base.records, threshold);
    const bool a = id > 0 && (ib < 0 || id < ib);
    a_wins += a;
    const double spr = p.dual.records.back().span_ratio;
    spr_sum += spr;
    spr_in += spr >= 0.95 && spr <= 1.05;
    const double common = compare::lowest_common_mae_db(p.dual.records, p.base.records);
    const auto cd = compare::cost_at_mae_db(p.dual.records, common);
    const auto cb = compare::cost_at_mae_db(p.base.records, common);
    const bool c = cd && cb && *cd <= *cb;
    c_wins += c;
    o.note("%4llu  %3d / %-3d           %.4f         %8.3f      %8.1f / %-8.1f", static_cast<unsigned long long>(p.seed),
           id, ib, spr, common, cd.value_or(NAN), cb.value_or(NAN));
  }
  const int n = static_cast<int>(runs.size());
  const double mean_spr = spr_sum / n;
  o.note("(a) dual-SG strictly faster below %.1f in %d/%d seeds (need >= 8/10)", threshold, a_wins, n);
  o.note("(b) mean final dual-SG span ratio %.4f (need within [0.95, 1.05]); %d/%d seeds individually in range",
         mean_spr, spr_in, n);
  o.note("(c) dual-SG cost <= baseline at the lowest common MAE-dB in %d/%d seeds (need >= 8/10)", c_wins, n);
  o.expect(n >= 10, "at least 10 seeds");
  o.expect(a_wins * 10 >= 8 * n, "(a) faster learning-error drop");
  o.expect(mean_spr >= 0.95 && mean_spr <= 1.05, "(b) span ratio near 1");
  o.expect(c_wins * 10 >= 8 * n, "(c) cost at the lowest common MAE-dB");
}

void redundancy(Outcome& o, const std::vector<Pair>& runs) {
  std::size_t checked = 0;
  for (const auto& p : runs) {
    for (const auto& rec : p.dual.records) {
      for (double level : rec.levels) {
        for (const auto& t : p.dual.traces) {
          if (t.iteration >= rec.iteration) continue;
          ++checked;
          if (!(std::abs(level - t.level) > rec.delta)) {
            o.expect(false, "seed " + std::to_string(p.seed) + " iteration " + std::to_string(rec.iteration) +
                                " level within delta of a past level");
          }
        }
      }
    }
    for (std::size_t k = 0; k < p.base.records.size(); ++k) {
      if (p.base.records[k].m_requested != 3 + static_cast<int>(k)) {
        o.expect(false, "baseline seed " + std::to_string(p.seed) + " requested M out of sequence");
      }
    }
  }
  o.note("%zu level pairs checked over %zu dual-SG runs; baseline M sequences checked", checked, runs.size());
}

// ---- criterion 8 ----------------------------------------------------------

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void determinism(Outcome& o, const char* scenario_path) {
  cmon_scenario* s = nullptr;
  if (cmon_scenario_load(scenario_path, &s) != CMON_OK) {
    o.expect(false, std::string("load scenario: ") + cmon_last_error());
    return;
  }
  uint64_t seed = 0;
  cmon_scenario_seed_at(s, 0, &seed);
  const auto dir = std::filesystem::temp_directory_path() / "contourmon_acceptance";
  std::filesystem::create_directories(dir);
  for (cmon_mode mode : {CMON_MODE_DUAL_SG, CMON_MODE_BASELINE}) {
    std::string text[2];
    for (int k = 0; k < 2; ++k) {
      cmon_report* r = nullptr;
      const auto path = dir / ("run_" + std::to_string(k) + ".csv");
      if (cmon_run(s, mode, seed, &r) != CMON_OK || cmon_report_write_csv(r, path.c_str()) != CMON_OK) {
        o.expect(false, std::string("run: ") + cmon_last_error());
      }
      cmon_report_free(r);
      text[k] = slurp(path);
    }
    o.expect(!text[0].empty() && text[0] == text[1], "byte-identical run CSVs");
    o.note("%s seed %llu: %zu bytes, identical=%d", mode == CMON_MODE_DUAL_SG ? "dual-sg" : "baseline",
           static_cast<unsigned long long>(seed), text[0].size(), text[0] == text[1]);
  }
  std::filesystem::remove_all(dir);
  cmon_scenario_free(s);
}

}  // namespace

int main(int argc, char** argv) {
  const char* scenario_path = argc > 1 ? argv[1] : CONTOURMON_DEFAULT_SCENARIO;

  criterion(1, "update rules and error metrics match closed forms", 1, formulas);
  criterion(2, "Lloyd-Max levels match analytic and exhaustive-search optima", 5, lloyd_max);
  criterion(3, "interpolation reproduces samples and reconstructs a Gaussian field", 10, interpolation);
  criterion(4, "tracer follows analytic circles", 5, tracer);
  criterion(5, "marching squares matches brute-force enumeration", 5, contours);

  std::vector<Pair> runs;
  const auto sc = scenario::load(scenario_path);
  criterion(6, "end-to-end comparative claims on the default scenario", 0, [&](Outcome& o) {
    for (std::uint64_t seed : sc.seeds) {
      runs.push_back({seed, dfc::run(sc.run_config(dfc::Mode::DualSg, seed)),
                      dfc::run(sc.run_config(dfc::Mode::Baseline, seed))});
    }
    comparative(o, runs, sc.config.convergence.error_threshold);
  });
  criterion(7, "redundancy invariant and baseline level schedule", 0, [&](Outcome& o) { redundancy(o, runs); });
  criterion(8, "identical scenario and seed give byte-identical run CSVs", 0,
            [&](Outcome& o) { determinism(o, scenario_path); });

  std::printf("%d of 8 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
