#pragma once

// UAV simulator: diagonal initiation survey, crossing search near an assigned
// start, and predictor-corrector pacing of a true-field iso-contour.

#include <optional>
#include <vector>

#include "contourmon/field.hpp"
#include "contourmon/interp.hpp"

namespace contourmon::uav {

struct TraceParams {
  double step = 0.5;
  double trace_tol = 1e-3;
  double search_radius = 10.0;
  int max_steps = 10000;
  double report_spacing = 1.0;

  void validate() const;
};

enum class TraceEnd {
  Closed,
  ExitedArea,
  MaxSteps,
  /// Gradient vanished; the trace stopped with a partial result.
  FlatSpot,
  /// Newton correction failed even at the smallest predictor step.
  CorrectorFailed,
};

const char* to_string(TraceEnd end) noexcept;

struct TracedContour {
  double level = 0.0;
  /// Flown polylines; every vertex is a corrected on-contour position.
  std::vector<std::vector<Vec2>> pieces;
  /// Coordinates reported to the fusion centre, one every report_spacing of
  /// arc length plus both ends.
  std::vector<Vec2> reported;
  double path_length = 0.0;
  std::size_t sample_count = 0;
  bool closed = false;
  TraceEnd end = TraceEnd::MaxSteps;

  bool flagged() const { return end == TraceEnd::FlatSpot || end == TraceEnd::CorrectorFailed; }
};

/// Samples along both main diagonals of the area, endpoints included.
std::vector<interp::SamplePoint> initial_survey(const field::SignalField& truth, double spacing);

/// Marches outward along eight rays from `guess` (staying inside the area)
/// looking for a sign change of g - level, then bisects to within trace_tol.
/// The nearest crossing wins; std::nullopt when none lies within
/// search_radius.
std::optional<Vec2> locate_crossing(const field::SignalField& truth, double level, Vec2 guess,
                                    const TraceParams& params);

/// Paces the contour through `start`. The tangent is the gradient rotated by
/// +90 degrees. When the forward walk leaves the area the contour is open and
/// the walk resumes from the start in the opposite direction, so the result
/// spans boundary to boundary. Throws InvalidArgument when `start` is not
/// within trace_tol of `level`.
TracedContour trace_contour(const field::SignalField& truth, double level, Vec2 start, const TraceParams& params);

}  // namespace contourmon::uav
