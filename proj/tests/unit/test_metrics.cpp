#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "analytic_fields.hpp"
#include "contourmon/error.hpp"
#include "contourmon/metrics.hpp"
#include "doctest.h"

using namespace contourmon;
using interp::GridEstimate;
using interp::GridSpec;

namespace {

const GridSpec k2x2{2, 2, Area{1, 1}};

GridEstimate random_grid(std::mt19937_64& rng, const GridSpec& spec) {
  std::uniform_real_distribution<double> u(-10.0, 10.0);
  std::vector<double> v(static_cast<std::size_t>(spec.P) * spec.Q);
  for (auto& x : v) x = u(rng);
  return GridEstimate(spec, v);
}

GridEstimate shifted(const GridEstimate& g, double c) {
  auto v = g.values();
  for (auto& x : v) x += c;
  return GridEstimate(g.spec(), v);
}

}  // namespace

TEST_SUITE("metrics") {
  TEST_CASE("learning error on hand-computed grids") {
    const GridEstimate a(k2x2, {0, 0, 0, 4});
    const GridEstimate z(k2x2, {0, 0, 0, 0});
    CHECK(std::abs(metrics::learning_error(a, z) - 1.0) < 1e-12);
    CHECK(metrics::learning_error(a, a) == 0.0);
    CHECK(std::abs(metrics::learning_error(shifted(a, -2.5), a) - 2.5) < 1e-12);
  }

  TEST_CASE("mae on hand-computed grids") {
    const GridEstimate t(k2x2, {1, 2, 3, 4});
    CHECK(metrics::mae(t, t) == 0.0);
    CHECK(std::abs(metrics::mae(t, shifted(t, 2)) - 2.0) < 1e-12);
    const GridEstimate pm(k2x2, {2, 1, 4, 3});  // +1, -1, +1, -1
    CHECK(std::abs(metrics::mae(t, pm) - 1.0) < 1e-12);
    const GridEstimate other(GridSpec{3, 2, Area{1, 1}}, {0, 0, 0, 0, 0, 0});
    try {
      metrics::mae(t, other);
      FAIL("expected shape error");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::Shape);
    }
    CHECK_THROWS_AS(metrics::learning_error(t, other), Error);
    CHECK_THROWS_AS(metrics::local_error_map(t, other), Error);
  }

  TEST_CASE("mae in dB") {
    CHECK(std::abs(metrics::mae_db(1.0) - 0.0) < 1e-12);
    CHECK(std::abs(metrics::mae_db(10.0) - 20.0) < 1e-12);
    CHECK(std::abs(metrics::mae_db(0.1) + 20.0) < 1e-12);
    CHECK(metrics::mae_db(0.0) == -std::numeric_limits<double>::infinity());
    CHECK_THROWS_AS(metrics::mae_db(-1.0), Error);
    double prev = -std::numeric_limits<double>::infinity();
    for (double e = 1e-6; e < 1e3; e *= 1.7) {
      const double d = metrics::mae_db(e);
      CHECK(d > prev);
      CHECK(std::abs(d - 20 * std::log10(e)) < 1e-12);
      prev = d;
    }
  }

  TEST_CASE("span ratio") {
    const GridEstimate t(k2x2, {1, 2, 3, 5});
    CHECK(metrics::span_ratio(t, t) == 1.0);
    CHECK(metrics::span_ratio(GridEstimate(k2x2, {0.5, 1, 1.5, 2.5}), t) == doctest::Approx(0.5));
    CHECK(metrics::span_ratio(GridEstimate(k2x2, {7, 7, 7, 7}), t) == 0.0);
    try {
      metrics::span_ratio(t, GridEstimate(k2x2, {7, 7, 7, 7}));
      FAIL("expected degenerate-field error");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::DegenerateField);
    }
  }

  TEST_CASE("local error map") {
    std::mt19937_64 rng(9);
    const GridSpec spec{13, 7, Area{}};
    const auto t = random_grid(rng, spec);
    const auto e = random_grid(rng, spec);
    const auto map = metrics::local_error_map(t, e);
    const auto zero = metrics::local_error_map(t, t);
    for (double v : zero.values()) CHECK(v == 0.0);
    CHECK(map.values() == metrics::local_error_map(e, t).values());
    double sum = 0.0;
    for (double v : map.values()) sum += v;
    CHECK(sum / static_cast<double>(map.values().size()) == metrics::mae(t, e));
  }

  TEST_CASE("symmetry and triangle bound on random grids") {
    std::mt19937_64 rng(31);
    const GridSpec spec{9, 11, Area{}};
    for (int k = 0; k < 200; ++k) {
      const auto a = random_grid(rng, spec), b = random_grid(rng, spec), mid = random_grid(rng, spec);
      CHECK(metrics::mae(a, b) == metrics::mae(b, a));
      CHECK(metrics::learning_error(a, b) == metrics::learning_error(b, a));
      CHECK(metrics::mae(a, b) <= metrics::mae(a, mid) + metrics::mae(mid, b) + 1e-12);
    }
  }

  TEST_CASE("truth grid samples the field at grid points") {
    const testsupport::PlanarField plane(2, -1, 3, Area{});
    const auto g = metrics::truth_grid(plane, GridSpec{11, 11, Area{}});
    CHECK(g.at(3, 7) == 2 * 30 - 70 + 3);
  }

  TEST_CASE("total cost") {
    CHECK(metrics::total_cost({}) == 0.0);
    const testsupport::RadialField cone({100, 100}, 100, Area{200, 200});
    std::vector<uav::TracedContour> traces{uav::trace_contour(cone, 50.0, {150, 100}, uav::TraceParams{})};
    const double one = metrics::total_cost(traces);
    CHECK(one == doctest::Approx(2 * std::numbers::pi * 50).epsilon(0.01));
    traces.push_back(uav::trace_contour(cone, 75.0, {125, 100}, uav::TraceParams{}));
    CHECK(metrics::total_cost(traces) >= one);
    CHECK(metrics::total_cost(traces) == doctest::Approx(one + traces[1].path_length));
  }
}
