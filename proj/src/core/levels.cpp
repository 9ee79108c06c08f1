#include "contourmon/levels.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "contourmon/error.hpp"

namespace contourmon::levels {

void EmpiricalPdf::validate() const {
  if (edges.size() < 2 || probs.size() + 1 != edges.size()) {
    fail(ErrorCode::InvalidArgument, "pdf: need n+1 edges for n bins");
  }
  for (std::size_t k = 1; k < edges.size(); ++k) {
    if (!(edges[k] > edges[k - 1])) fail(ErrorCode::InvalidArgument, "pdf: edges must be strictly increasing");
  }
  double total = 0.0;
  for (double p : probs) {
    if (!(p >= 0.0)) fail(ErrorCode::InvalidArgument, "pdf: negative probability");
    total += p;
  }
  if (std::abs(total - 1.0) > 1e-9) fail(ErrorCode::InvalidArgument, "pdf: probabilities must sum to 1");
}

int EmpiricalPdf::populated_bins() const {
  return static_cast<int>(std::count_if(probs.begin(), probs.end(), [](double p) { return p > 0.0; }));
}

namespace {

// Index range of bins overlapping [a, b].
std::pair<std::size_t, std::size_t> bin_span(const EmpiricalPdf& pdf, double a, double b) {
  const auto first = std::upper_bound(pdf.edges.begin(), pdf.edges.end(), a);
  const auto last = std::lower_bound(pdf.edges.begin(), pdf.edges.end(), b);
  const std::size_t lo = first == pdf.edges.begin() ? 0 : static_cast<std::size_t>(first - pdf.edges.begin()) - 1;
  const std::size_t hi = std::min(static_cast<std::size_t>(last - pdf.edges.begin()), pdf.probs.size());
  return {lo, hi};
}

template <class F>
double integrate_bins(const EmpiricalPdf& pdf, double a, double b, F&& piece) {
  if (!(b > a)) return 0.0;
  double sum = 0.0;
  const auto [lo, hi] = bin_span(pdf, a, b);
  for (std::size_t k = lo; k < hi; ++k) {
    if (pdf.probs[k] <= 0.0) continue;
    const double l = std::max(a, pdf.edges[k]);
    const double h = std::min(b, pdf.edges[k + 1]);
    if (h <= l) continue;
    sum += pdf.probs[k] / (pdf.edges[k + 1] - pdf.edges[k]) * piece(l, h);
  }
  return sum;
}

}  // namespace

double EmpiricalPdf::mass(double a, double b) const {
  return integrate_bins(*this, a, b, [](double l, double h) { return h - l; });
}

double EmpiricalPdf::moment(double a, double b) const {
  return integrate_bins(*this, a, b, [](double l, double h) { return 0.5 * (h * h - l * l); });
}

double EmpiricalPdf::quantile(double p) const {
  p = std::clamp(p, 0.0, 1.0);
  double cum = 0.0;
  for (std::size_t k = 0; k < probs.size(); ++k) {
    if (probs[k] > 0.0 && cum + probs[k] >= p) {
      const double t = std::clamp((p - cum) / probs[k], 0.0, 1.0);
      return edges[k] + t * (edges[k + 1] - edges[k]);
    }
    cum += probs[k];
  }
  return upper();
}

EmpiricalPdf estimate_pdf(const interp::GridEstimate& estimate, int n_bins) {
  if (n_bins < 2) fail(ErrorCode::InvalidArgument, "pdf: n_bins must be at least 2");
  const double lo = estimate.min();
  const double hi = estimate.max();
  if (!estimate.has_signal_range()) fail(ErrorCode::DegenerateField, "pdf: estimate has zero signal range");
  EmpiricalPdf pdf;
  pdf.edges.resize(static_cast<std::size_t>(n_bins) + 1);
  for (int k = 0; k <= n_bins; ++k) pdf.edges[static_cast<std::size_t>(k)] = lo + (hi - lo) * k / n_bins;
  pdf.edges.back() = hi;
  std::vector<std::size_t> counts(static_cast<std::size_t>(n_bins), 0);
  for (double v : estimate.values()) {
    const auto k = std::min(static_cast<std::size_t>((v - lo) / (hi - lo) * n_bins), counts.size() - 1);
    ++counts[k];
  }
  const double total = static_cast<double>(estimate.values().size());
  pdf.probs.reserve(counts.size());
  for (std::size_t c : counts) pdf.probs.push_back(static_cast<double>(c) / total);
  return pdf;
}

std::vector<double> midpoint_boundaries(const EmpiricalPdf& pdf, std::span<const double> levels) {
  std::vector<double> y(levels.size() + 1);
  y.front() = pdf.lower();
  y.back() = pdf.upper();
  for (std::size_t i = 1; i < levels.size(); ++i) y[i] = 0.5 * (levels[i - 1] + levels[i]);
  return y;
}

double quantizer_mse(const EmpiricalPdf& pdf, std::span<const double> levels) {
  if (levels.empty()) fail(ErrorCode::InvalidArgument, "mse: no levels");
  std::vector<double> sorted(levels.begin(), levels.end());
  std::sort(sorted.begin(), sorted.end());
  const auto y = midpoint_boundaries(pdf, sorted);
  double mse = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const double l = sorted[i];
    mse += integrate_bins(pdf, y[i], y[i + 1], [l](double a, double b) {
      return ((b - l) * (b - l) * (b - l) - (a - l) * (a - l) * (a - l)) / 3.0;
    });
  }
  return mse;
}

LloydMaxResult lloyd_max_levels(const EmpiricalPdf& pdf, int M, double tol, int max_iter) {
  pdf.validate();
  if (M < 1) fail(ErrorCode::InvalidArgument, "lloyd-max: M must be at least 1");
  LloydMaxResult r;
  r.requested = M;
  const int feasible = pdf.populated_bins();
  if (M > feasible) {
    M = feasible;
    r.reduced = true;
  }

  std::vector<double> lv(static_cast<std::size_t>(M));
  for (int k = 0; k < M; ++k) lv[static_cast<std::size_t>(k)] = pdf.quantile((k + 0.5) / M);
  r.mse_history.push_back(quantizer_mse(pdf, lv));

  std::vector<double> y;
  for (int sweep = 0; sweep < max_iter; ++sweep) {
    y = midpoint_boundaries(pdf, lv);
    double moved = 0.0;
    for (std::size_t i = 0; i < lv.size(); ++i) {
      const double m = pdf.mass(y[i], y[i + 1]);
      const double next = m > 0.0 ? pdf.moment(y[i], y[i + 1]) / m : 0.5 * (y[i] + y[i + 1]);
      moved = std::max(moved, std::abs(next - lv[i]));
      lv[i] = next;
    }
    r.sweeps = sweep + 1;
    r.mse_history.push_back(quantizer_mse(pdf, lv));
    if (moved < tol) {
      r.converged = true;
      break;
    }
  }

  // Collapsed neighbours cannot be distinct contour levels.
  const auto last = std::unique(lv.begin(), lv.end(), [](double a, double b) { return !(b > a); });
  if (last != lv.end()) {
    lv.erase(last, lv.end());
    r.reduced = true;
  }
  r.levels = std::move(lv);
  r.boundaries = midpoint_boundaries(pdf, r.levels);
  return r;
}

LloydMaxResult lloyd_max_levels(const EmpiricalPdf& pdf, int M) {
  pdf.validate();
  return lloyd_max_levels(pdf, M, 1e-6 * pdf.range(), 200);
}

}  // namespace contourmon::levels
