#pragma once

// Serialisation of run reports. Formats are fixed-precision text so repeated
// runs produce byte-identical files.

#include <iosfwd>
#include <vector>

#include "contourmon/dfc.hpp"

namespace contourmon::report {

inline constexpr const char* kRunCsvHeader =
    "iteration,M_requested,M_traced,learning_error,mae,mae_db,span_ratio,kappa,delta,cost_increment,cost_cumulative,"
    "levels";

/// One row per iteration; `levels` is semicolon-joined.
void write_run_csv(const dfc::RunReport& report, std::ostream& out);

/// Parses a file written by write_run_csv. Throws Io on malformed input.
std::vector<metrics::IterationRecord> read_run_csv(std::istream& in);

/// Reported UAV coordinates: `iteration,level,piece_id,x,y`.
void write_traces_csv(const dfc::RunReport& report, std::ostream& out);

/// Contours of the final estimate at every traced level: `level,piece_id,x,y`.
void write_final_contours_csv(const dfc::RunReport& report, std::ostream& out);

/// JSON summary: mode, seed, convergence, final metrics, notes.
void write_summary_json(const dfc::RunReport& report, std::ostream& out);

}  // namespace contourmon::report
