#include "contourmon/dfc.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "contourmon/contour.hpp"
#include "contourmon/error.hpp"

namespace contourmon::dfc {

const char* to_string(Mode mode) noexcept { return mode == Mode::DualSg ? "dual-sg" : "baseline"; }

Mode parse_mode(std::string_view text) {
  if (text == "dual-sg") return Mode::DualSg;
  if (text == "baseline") return Mode::Baseline;
  fail(ErrorCode::Config, "unknown mode '" + std::string(text) + "'");
}

void RunConfig::validate() const {
  if (initial_m < 1) fail(ErrorCode::Config, "run: initial_m must be at least 1");
  if (initial_kappa < 1) fail(ErrorCode::Config, "run: initial_kappa must be at least 1");
  if (!(initial_delta_fraction >= 0.0)) fail(ErrorCode::Config, "run: initial_delta_fraction must be non-negative");
  if (convergence.max_iterations < 1) fail(ErrorCode::Config, "run: max_iterations must be at least 1");
  if (!(convergence.error_threshold >= 0.0) || !(convergence.span_window >= 0.0)) {
    fail(ErrorCode::Config, "run: convergence thresholds must be non-negative");
  }
  if (!(survey_spacing > 0.0)) fail(ErrorCode::Config, "run: survey_spacing must be positive");
  if (pdf_bins < 2) fail(ErrorCode::Config, "run: pdf_bins must be at least 2");
  trace.validate();
  field.validate();
  try {
    grid.validate();
  } catch (const Error& e) {
    fail(ErrorCode::Config, e.what());
  }
}

KappaUpdate update_kappa(int kappa_prev, double err2, double err1) {
  const double sum = std::abs(err2 + err1);
  if (sum == 0.0) return {kappa_prev + 1, true};
  const double step = std::ceil(1.0 + 2.0 * std::abs(err2 - err1) / sum);
  return {kappa_prev + static_cast<int>(step), false};
}

DeltaUpdate update_delta(double delta_prev, double err2, double err1) {
  const double sum = err2 + err1;
  if (sum == 0.0) return {delta_prev, true};
  return {delta_prev * std::abs(1.0 - 2.0 * (err2 - err1) / sum), false};
}

std::vector<double> eliminate_redundant(std::span<const double> new_levels, std::span<const double> past_levels,
                                        double delta) {
  std::vector<double> kept;
  for (double level : new_levels) {
    const bool redundant = std::any_of(past_levels.begin(), past_levels.end(),
                                       [&](double past) { return std::abs(level - past) <= delta; });
    if (!redundant) kept.push_back(level);
  }
  return kept;
}

bool check_convergence(std::span<const metrics::IterationRecord> records, const ConvergenceThresholds& thresholds) {
  if (records.size() < 2) return false;
  const auto& last = records[records.size() - 1];
  const auto& prev = records[records.size() - 2];
  return last.learning_error < thresholds.error_threshold &&
         std::abs(last.span_ratio - prev.span_ratio) < thresholds.span_window;
}

RunReport run(const RunConfig& config) {
  config.validate();
  const field::ScalarField truth = field::generate_field(config.field);
  return run(config, truth);
}

namespace {

std::string format(const char* fmt, auto... args) {
  char buf[256];
  std::snprintf(buf, sizeof buf, fmt, args...);
  return buf;
}

bool near_flown(const std::vector<uav::TracedContour>& flown, Vec2 p, double radius) {
  for (const auto& t : flown) {
    for (const auto& piece : t.pieces) {
      for (const Vec2& v : piece) {
        if (distance(v, p) < radius) return true;
      }
    }
  }
  return false;
}

}  // namespace

RunReport run(const RunConfig& config, const field::SignalField& truth) {
  config.validate();
  if (!(truth.area() == config.grid.area)) fail(ErrorCode::Config, "run: grid area differs from the field area");

  RunReport report;
  report.mode = config.mode;
  report.seed = config.field.seed;
  report.truth = metrics::truth_grid(truth, config.grid);

  // Initiation: diagonal survey and first rough estimate.
  interp::OccupancyThinner samples(config.grid.area, config.fit.max_nodes);
  for (const auto& s : uav::initial_survey(truth, config.survey_spacing)) samples.offer(s);
  interp::GridEstimate estimate = interp::evaluate_grid(interp::fit(samples.kept(), config.fit), config.grid);
  report.initial_estimate = estimate;
  if (!estimate.has_signal_range()) fail(ErrorCode::DegenerateField, "run: initial estimate has zero signal range");

  SgState sg;
  sg.kappa = config.mode == Mode::DualSg ? config.initial_kappa : 1;
  sg.delta = config.mode == Mode::DualSg ? config.initial_delta_fraction * estimate.range() : 0.0;
  int m = config.initial_m;
  double cost = 0.0;

  auto next_batch = [&](const interp::GridEstimate& est, int iteration) {
    const auto pdf = levels::estimate_pdf(est, config.pdf_bins);
    auto lm = levels::lloyd_max_levels(pdf, m);
    if (lm.reduced) {
      report.notes.push_back(format("iteration %d: requested %d levels, %zu feasible", iteration, m, lm.levels.size()));
    }
    return lm.levels;
  };
  std::vector<double> batch = next_batch(estimate, 1);

  report.termination = "max-iterations";
  for (int n = 1; n <= config.convergence.max_iterations; ++n) {
    sg.m_history.push_back(m);
    const std::vector<double> assigned =
        config.mode == Mode::DualSg ? eliminate_redundant(batch, sg.past_levels, sg.delta) : batch;

    double cost_increment = 0.0;
    int traced_levels = 0;
    std::size_t before = samples.kept().size();
    for (double level : assigned) {
      const auto pieces = contour::extract_contours(estimate, level);
      const auto starts = contour::pick_start_points(pieces, estimate);
      std::vector<uav::TracedContour> flown;
      for (std::size_t p = 0; p < starts.size(); ++p) {
        const auto start = uav::locate_crossing(truth, level, starts[p], config.trace);
        if (!start) {
          report.notes.push_back(format("iteration %d: level %.6g piece %zu has no true crossing nearby", n, level, p));
          continue;
        }
        // A second estimated piece can lead to a contour already flown.
        if (near_flown(flown, *start, config.trace.step)) continue;
        auto trace = uav::trace_contour(truth, level, *start, config.trace);
        if (trace.flagged()) {
          report.notes.push_back(
              format("iteration %d: level %.6g piece %zu trace ended: %s", n, level, p, uav::to_string(trace.end)));
        }
        for (const Vec2& c : trace.reported) samples.offer({c.x, c.y, truth.eval(c)});
        cost_increment += trace.path_length;
        report.traces.push_back({n, level, static_cast<int>(p), trace});
        flown.push_back(std::move(trace));
      }
      if (!flown.empty()) {
        ++traced_levels;
        sg.past_levels.insert(std::upper_bound(sg.past_levels.begin(), sg.past_levels.end(), level), level);
        report.traced_levels.push_back(level);
      }
    }
    cost += cost_increment;

    interp::GridEstimate next = samples.kept().size() == before
                                    ? estimate
                                    : interp::evaluate_grid(interp::fit(samples.kept(), config.fit), config.grid);

    metrics::IterationRecord rec;
    rec.iteration = n;
    rec.m_requested = m;
    rec.m_traced = traced_levels;
    rec.learning_error = metrics::learning_error(next, estimate);
    rec.mae = metrics::mae(*report.truth, next);
    rec.mae_db = metrics::mae_db(rec.mae);
    rec.span_ratio = metrics::span_ratio(next, *report.truth);
    rec.kappa = sg.kappa;
    rec.delta = sg.delta;
    rec.cost_increment = cost_increment;
    rec.cost_cumulative = cost;
    rec.levels = assigned;
    report.records.push_back(rec);
    sg.error_history.push_back(rec.learning_error);
    estimate = std::move(next);

    if (check_convergence(report.records, config.convergence)) {
      report.converged = true;
      report.termination = "converged";
      break;
    }
    if (n == config.convergence.max_iterations) break;
    if (!estimate.has_signal_range()) {
      report.termination = "degenerate-estimate";
      report.notes.push_back(format("iteration %d: estimate has zero signal range", n));
      break;
    }

    if (config.mode == Mode::DualSg) {
      const auto& errs = sg.error_history;
      if (errs.size() < 2) {
        // Only one learning error so far: grow by one, keep delta.
        sg.kappa += 1;
        report.notes.push_back(format("iteration %d: bootstrap kappa/delta update", n + 1));
      } else {
        const double err2 = errs[errs.size() - 2];
        const double err1 = errs[errs.size() - 1];
        const auto k = update_kappa(sg.kappa, err2, err1);
        const auto d = update_delta(sg.delta, err2, err1);
        if (k.degenerate || d.degenerate) {
          report.notes.push_back(format("iteration %d: both learning errors are zero", n + 1));
        }
        sg.kappa = k.kappa;
        sg.delta = d.delta;
      }
    }
    m += sg.kappa;
    batch = next_batch(estimate, n + 1);
  }

  report.final_estimate = estimate;
  report.sample_count = samples.kept().size();
  return report;
}

}  // namespace contourmon::dfc
