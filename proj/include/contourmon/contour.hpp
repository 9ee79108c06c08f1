#pragma once

// Marching-squares iso-contours of a grid estimate.

#include <iosfwd>
#include <span>
#include <vector>

#include "contourmon/geometry.hpp"
#include "contourmon/interp.hpp"

namespace contourmon::contour {

struct ContourPiece {
  double level = 0.0;
  std::vector<Vec2> vertices;
  /// Closed pieces repeat their first vertex at the end.
  bool closed = false;

  double length() const;
};

struct Segment {
  Vec2 a;
  Vec2 b;
};

/// Per-cell segments with linear edge interpolation. A corner counts as
/// "above" when its value is >= level; saddles are split according to the
/// cell-centre average.
std::vector<Segment> cell_segments(const interp::GridEstimate& grid, double level);

/// Segments chained into maximal polylines. Returns nothing when `level` is
/// not strictly inside the grid's value range.
std::vector<ContourPiece> extract_contours(const interp::GridEstimate& grid, double level);

/// One initiation coordinate per piece: the first vertex of an open piece
/// (which lies on the grid boundary) or, for a closed piece, the vertex where
/// the estimated gradient is steepest.
std::vector<Vec2> pick_start_points(std::span<const ContourPiece> pieces, const interp::GridEstimate& grid);

/// `level,piece_id,x,y` rows.
void write_contours_csv(std::span<const ContourPiece> pieces, std::ostream& out, bool header = true);

}  // namespace contourmon::contour
