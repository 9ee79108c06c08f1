#pragma once

// Scattered-data reconstruction of the field estimate with a biharmonic
// Green's-function spline, kernel phi(r) = r^2 (ln r - 1), plus an affine
// trend so constants and planes are reproduced exactly.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <iosfwd>
#include <span>
#include <unordered_map>
#include <vector>

#include "contourmon/geometry.hpp"

namespace contourmon::interp {

struct SamplePoint {
  double x = 0.0;
  double y = 0.0;
  double value = 0.0;

  Vec2 position() const { return {x, y}; }
  friend bool operator==(const SamplePoint&, const SamplePoint&) = default;
};

/// P points along x by Q points along y, spanning the full area inclusive.
struct GridSpec {
  int P = 101;
  int Q = 101;
  Area area{};

  void validate() const;
  double x(int i) const { return area.width * i / (P - 1); }
  double y(int j) const { return area.height * j / (Q - 1); }
  double dx() const { return area.width / (P - 1); }
  double dy() const { return area.height / (Q - 1); }

  friend bool operator==(const GridSpec&, const GridSpec&) = default;
};

/// Dense P x Q grid of values, stored row-major by x index: value(i, j) is at
/// (x_i, y_j).
class GridEstimate {
 public:
  GridEstimate(GridSpec spec, std::vector<double> values);

  template <class F>
  static GridEstimate from_function(const GridSpec& spec, F&& f) {
    spec.validate();
    std::vector<double> v(static_cast<std::size_t>(spec.P) * spec.Q);
    for (int i = 0; i < spec.P; ++i)
      for (int j = 0; j < spec.Q; ++j) v[static_cast<std::size_t>(i) * spec.Q + j] = f(spec.x(i), spec.y(j));
    return GridEstimate(spec, std::move(v));
  }

  const GridSpec& spec() const { return spec_; }
  double at(int i, int j) const { return values_[static_cast<std::size_t>(i) * spec_.Q + j]; }
  const std::vector<double>& values() const { return values_; }
  double min() const { return min_; }
  double max() const { return max_; }
  double range() const { return max_ - min_; }
  /// False when the range is lost in rounding relative to the values.
  bool has_signal_range() const {
    return range() > 1e-12 * std::max({1.0, std::abs(min_), std::abs(max_)});
  }

  /// Bilinear interpolation; the point is clamped to the grid.
  double bilinear(Vec2 p) const;
  /// Gradient of the grid surface from central differences at the nodes,
  /// bilinearly interpolated to `p`.
  Vec2 gradient(Vec2 p) const;

 private:
  GridSpec spec_;
  std::vector<double> values_;
  double min_ = 0.0;
  double max_ = 0.0;
};

struct FitOptions {
  /// Samples closer than this are merged by averaging their values.
  double merge_distance = 1e-6;
  /// Diagonal ridge relative to the largest kernel magnitude.
  double ridge = 1e-10;
  /// Upper bound on solved nodes; larger inputs are thinned on an occupancy grid.
  std::size_t max_nodes = 4000;
};

class InterpModel {
 public:
  double operator()(double x, double y) const;
  double operator()(Vec2 p) const { return (*this)(p.x, p.y); }

  std::size_t node_count() const { return nodes_.size(); }
  const std::vector<Vec2>& nodes() const { return nodes_; }
  const std::vector<double>& weights() const { return weights_; }

 private:
  friend InterpModel fit(std::span<const SamplePoint>, const FitOptions&);

  // Nodes are stored in normalised coordinates u = (p - origin) / scale.
  std::vector<Vec2> nodes_;
  std::vector<double> weights_;
  double trend_[3] = {0.0, 0.0, 0.0};
  Vec2 origin_;
  double scale_ = 1.0;
};

/// Greens-function kernel r^2 (ln r - 1) evaluated from the squared radius.
double biharmonic_kernel(double r2);

/// Merges near-duplicates, orders nodes canonically (so the result does not
/// depend on input order), and solves the augmented interpolation system.
/// Throws InsufficientData for fewer than three distinct samples and
/// Numerical when the solve fails.
InterpModel fit(std::span<const SamplePoint> samples, const FitOptions& options = {});

GridEstimate evaluate_grid(const InterpModel& model, const GridSpec& spec);

/// Keeps the first sample offered in each cell of a fixed occupancy grid, so
/// the retained set only ever grows as more samples are offered.
class OccupancyThinner {
 public:
  OccupancyThinner(Area area, std::size_t max_cells);

  /// Returns true when the sample was kept.
  bool offer(const SamplePoint& s);
  const std::vector<SamplePoint>& kept() const { return kept_; }
  std::size_t capacity() const { return static_cast<std::size_t>(nx_) * static_cast<std::size_t>(ny_); }

 private:
  Area area_;
  int nx_ = 1;
  int ny_ = 1;
  std::unordered_map<long long, std::size_t> occupied_;
  std::vector<SamplePoint> kept_;
};

/// Headerless CSV: P rows (x index), Q columns (y index).
void write_grid_csv(const GridEstimate& grid, std::ostream& out);

}  // namespace contourmon::interp
