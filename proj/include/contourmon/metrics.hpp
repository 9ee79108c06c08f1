#pragma once

#include <span>
#include <vector>

#include "contourmon/field.hpp"
#include "contourmon/interp.hpp"
#include "contourmon/uav.hpp"

namespace contourmon::metrics {

/// One row of the run table.
struct IterationRecord {
  int iteration = 0;
  int m_requested = 0;
  int m_traced = 0;
  double learning_error = 0.0;
  double mae = 0.0;
  double mae_db = 0.0;
  double span_ratio = 0.0;
  int kappa = 0;
  double delta = 0.0;
  double cost_increment = 0.0;
  double cost_cumulative = 0.0;
  /// Levels actually assigned to UAVs this iteration.
  std::vector<double> levels;
};

/// Ground truth sampled at the grid points of `spec`.
interp::GridEstimate truth_grid(const field::SignalField& truth, const interp::GridSpec& spec);

/// Mean absolute change between consecutive estimates.
double learning_error(const interp::GridEstimate& current, const interp::GridEstimate& previous);

/// Mean absolute error against the truth grid.
double mae(const interp::GridEstimate& truth, const interp::GridEstimate& estimate);

/// 20 log10(e); -infinity for e == 0.
double mae_db(double e);

/// (est max - est min) / (truth max - truth min). Throws DegenerateField for a
/// constant truth grid.
double span_ratio(const interp::GridEstimate& estimate, const interp::GridEstimate& truth);

/// Pointwise |truth - estimate|.
interp::GridEstimate local_error_map(const interp::GridEstimate& truth, const interp::GridEstimate& estimate);

/// Total flown length; ferry legs between pieces are not counted.
double total_cost(std::span<const uav::TracedContour> traces);

}  // namespace contourmon::metrics
