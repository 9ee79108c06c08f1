#pragma once

// Data-fusion-centre loop: reconstruct, schedule Lloyd-Max level batches,
// adapt the level increment and the redundancy threshold from the learning
// error, dispatch UAV traces, repeat until convergence.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "contourmon/field.hpp"
#include "contourmon/interp.hpp"
#include "contourmon/levels.hpp"
#include "contourmon/metrics.hpp"
#include "contourmon/uav.hpp"

namespace contourmon::dfc {

enum class Mode {
  DualSg,
  /// Grows M by one per iteration and never drops redundant levels.
  Baseline,
};

const char* to_string(Mode mode) noexcept;
/// Accepts "dual-sg" and "baseline"; throws Config otherwise.
Mode parse_mode(std::string_view text);

struct ConvergenceThresholds {
  double error_threshold = 0.5;
  double span_window = 0.02;
  int max_iterations = 20;
};

struct RunConfig {
  Mode mode = Mode::DualSg;
  int initial_m = 3;
  int initial_kappa = 1;
  /// delta_1 as a fraction of the signal range of the first estimate.
  double initial_delta_fraction = 0.02;
  ConvergenceThresholds convergence{};
  uav::TraceParams trace{};
  interp::GridSpec grid{};
  field::FieldConfig field{};
  double survey_spacing = 1.0;
  int pdf_bins = 256;
  interp::FitOptions fit{};

  void validate() const;
};

struct SgState {
  int kappa = 1;
  double delta = 0.0;
  std::vector<double> error_history;
  std::vector<int> m_history;
  /// Sorted, every level traced so far.
  std::vector<double> past_levels;
};

struct KappaUpdate {
  int kappa = 1;
  bool degenerate = false;
};

struct DeltaUpdate {
  double delta = 0.0;
  bool degenerate = false;
};

/// kappa + ceil(1 + 2|err2 - err1| / |err2 + err1|), where err2 is the older of
/// the two errors. Both errors zero: kappa + 1, flagged.
KappaUpdate update_kappa(int kappa_prev, double err2, double err1);

/// delta * |1 - 2(err2 - err1)/(err2 + err1)|. Both errors zero: delta kept,
/// flagged.
DeltaUpdate update_delta(double delta_prev, double err2, double err1);

/// New levels farther than `delta` from every past level, order preserved.
std::vector<double> eliminate_redundant(std::span<const double> new_levels, std::span<const double> past_levels,
                                        double delta);

/// Converged when the latest learning error is below the threshold and the
/// span ratio moved less than the window since the previous record.
bool check_convergence(std::span<const metrics::IterationRecord> records, const ConvergenceThresholds& thresholds);

struct TraceLog {
  int iteration = 0;
  double level = 0.0;
  int piece_id = 0;
  uav::TracedContour trace;
};

struct RunReport {
  Mode mode = Mode::DualSg;
  std::uint64_t seed = 0;
  std::vector<metrics::IterationRecord> records;
  std::vector<TraceLog> traces;
  std::optional<interp::GridEstimate> truth;
  std::optional<interp::GridEstimate> initial_estimate;
  std::optional<interp::GridEstimate> final_estimate;
  std::vector<double> traced_levels;
  bool converged = false;
  std::string termination;
  /// Diagnostics: bootstrap updates, dropped pieces, reduced level counts.
  std::vector<std::string> notes;
  std::size_t sample_count = 0;
};

/// Generates the truth from config.field and runs the loop.
RunReport run(const RunConfig& config);

/// Runs the loop against an externally supplied truth.
RunReport run(const RunConfig& config, const field::SignalField& truth);

}  // namespace contourmon::dfc
