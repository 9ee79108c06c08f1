#pragma once

// Side-by-side comparison of two runs on a common cost axis.

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "contourmon/metrics.hpp"

namespace contourmon::compare {

struct CostRow {
  double cost = 0.0;
  double mae_db_a = 0.0;
  double mae_db_b = 0.0;
  /// mae_db_a - mae_db_b; negative means run A is better at this cost.
  double difference = 0.0;
};

struct TargetRow {
  double target_mae_db = 0.0;
  std::optional<double> cost_a;
  std::optional<double> cost_b;
};

struct Comparison {
  std::vector<CostRow> rows;
  std::vector<TargetRow> targets;
  /// Cost points outside the overlap of both runs were left out.
  bool partial = false;
  std::string warning;
};

/// MAE-dB as a piecewise-linear function of cumulative cost, evaluated at
/// every cost point of either run that lies in both runs' cost ranges.
Comparison compare(std::span<const metrics::IterationRecord> a, std::span<const metrics::IterationRecord> b,
                   std::span<const double> mae_db_targets);

/// Cumulative cost at the first iteration whose MAE-dB is at or below the
/// target; std::nullopt when never reached.
std::optional<double> cost_at_mae_db(std::span<const metrics::IterationRecord> records, double target_mae_db);

/// The lowest MAE-dB both runs reach: the larger of the two minima.
double lowest_common_mae_db(std::span<const metrics::IterationRecord> a, std::span<const metrics::IterationRecord> b);

/// `cost,mae_db_<a>,mae_db_<b>,difference`.
void write_cost_table_csv(const Comparison& c, const std::string& label_a, const std::string& label_b,
                          std::ostream& out);

/// `target_mae_db,cost_<a>,cost_<b>`; unreached targets are written as "unreached".
void write_target_table_csv(const Comparison& c, const std::string& label_a, const std::string& label_b,
                            std::ostream& out);

}  // namespace contourmon::compare
