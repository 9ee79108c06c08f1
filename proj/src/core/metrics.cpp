#include "contourmon/metrics.hpp"

#include <cmath>
#include <limits>

#include "contourmon/error.hpp"

namespace contourmon::metrics {

namespace {

void require_same_grid(const interp::GridEstimate& a, const interp::GridEstimate& b) {
  if (!(a.spec() == b.spec())) fail(ErrorCode::Shape, "metrics: grids have different specs");
}

double mean_abs_difference(const interp::GridEstimate& a, const interp::GridEstimate& b) {
  require_same_grid(a, b);
  const auto& va = a.values();
  const auto& vb = b.values();
  double sum = 0.0;
  for (std::size_t k = 0; k < va.size(); ++k) sum += std::abs(va[k] - vb[k]);
  return sum / static_cast<double>(va.size());
}

}  // namespace

interp::GridEstimate truth_grid(const field::SignalField& truth, const interp::GridSpec& spec) {
  return interp::GridEstimate::from_function(spec, [&](double x, double y) { return truth.eval(Vec2{x, y}); });
}

double learning_error(const interp::GridEstimate& current, const interp::GridEstimate& previous) {
  return mean_abs_difference(current, previous);
}

double mae(const interp::GridEstimate& truth, const interp::GridEstimate& estimate) {
  return mean_abs_difference(truth, estimate);
}

double mae_db(double e) {
  if (e < 0.0) fail(ErrorCode::InvalidArgument, "mae_db: negative error");
  if (e == 0.0) return -std::numeric_limits<double>::infinity();
  return 20.0 * std::log10(e);
}

double span_ratio(const interp::GridEstimate& estimate, const interp::GridEstimate& truth) {
  if (!(truth.range() > 0.0)) fail(ErrorCode::DegenerateField, "span_ratio: truth grid has zero range");
  return estimate.range() / truth.range();
}

interp::GridEstimate local_error_map(const interp::GridEstimate& truth, const interp::GridEstimate& estimate) {
  require_same_grid(truth, estimate);
  std::vector<double> v(truth.values().size());
  for (std::size_t k = 0; k < v.size(); ++k) v[k] = std::abs(truth.values()[k] - estimate.values()[k]);
  return interp::GridEstimate(truth.spec(), std::move(v));
}

double total_cost(std::span<const uav::TracedContour> traces) {
  double sum = 0.0;
  for (const auto& t : traces) sum += t.path_length;
  return sum;
}

}  // namespace contourmon::metrics
