#pragma once

// Lloyd-Max contour-level placement over the empirical distribution of the
// current field estimate.

#include <span>
#include <vector>

#include "contourmon/interp.hpp"

namespace contourmon::levels {

/// Piecewise-constant density: probability probs[k] spread uniformly over
/// [edges[k], edges[k+1]).
struct EmpiricalPdf {
  std::vector<double> edges;
  std::vector<double> probs;

  /// Throws InvalidArgument unless edges are strictly increasing, sizes agree
  /// and probabilities are non-negative and sum to 1 within 1e-9.
  void validate() const;

  double lower() const { return edges.front(); }
  double upper() const { return edges.back(); }
  double range() const { return upper() - lower(); }
  int populated_bins() const;

  /// Probability mass on [a, b].
  double mass(double a, double b) const;
  /// First moment on [a, b].
  double moment(double a, double b) const;
  double mean() const { return moment(lower(), upper()); }
  /// Inverse CDF, linear inside each bin.
  double quantile(double p) const;
};

/// Normalised histogram of the grid values over [min, max].
/// Throws DegenerateField when the grid is constant.
EmpiricalPdf estimate_pdf(const interp::GridEstimate& estimate, int n_bins = 256);

struct LloydMaxResult {
  std::vector<double> levels;
  /// Decision boundaries y_0 < y_1 < ... < y_M with y_0, y_M the pdf support.
  std::vector<double> boundaries;
  int requested = 0;
  /// True when the requested count exceeded the number of populated bins.
  bool reduced = false;
  bool converged = false;
  int sweeps = 0;
  /// Quantisation MSE after initialisation and after every sweep.
  std::vector<double> mse_history;
};

/// Alternates centroid (level) and midpoint (boundary) updates starting from
/// equal-probability quantiles until no level moves by `tol` or more.
/// Cells without mass take their midpoint.
LloydMaxResult lloyd_max_levels(const EmpiricalPdf& pdf, int M, double tol, int max_iter = 200);

/// Same with the default tolerance of 1e-6 times the pdf support width.
LloydMaxResult lloyd_max_levels(const EmpiricalPdf& pdf, int M);

/// Boundaries midway between adjacent levels, bracketed by the pdf support.
std::vector<double> midpoint_boundaries(const EmpiricalPdf& pdf, std::span<const double> levels);

/// Integral of min_k (s - level_k)^2 f(s) ds, exact for the histogram density.
double quantizer_mse(const EmpiricalPdf& pdf, std::span<const double> levels);

struct LevelBatch {
  int iteration = 0;
  int requested = 0;
  std::vector<double> levels;
  std::vector<double> retained;
};

}  // namespace contourmon::levels
