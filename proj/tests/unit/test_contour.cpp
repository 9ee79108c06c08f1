#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "contour_oracle.hpp"
#include "contourmon/contour.hpp"
#include "doctest.h"

using namespace contourmon;
using interp::GridEstimate;
using interp::GridSpec;

namespace {

// Peak 100 at the centre of a 120 x 120 area, so the level-50 circle stays inside.
GridEstimate cone(int n) {
  return GridEstimate::from_function(GridSpec{n, n, Area{120, 120}},
                                     [](double x, double y) { return 100.0 - std::hypot(x - 60.0, y - 60.0); });
}

bool on_boundary(Vec2 p, const Area& a) {
  return std::abs(p.x) < 1e-9 || std::abs(p.y) < 1e-9 || std::abs(p.x - a.width) < 1e-9 ||
         std::abs(p.y - a.height) < 1e-9;
}

GridEstimate random_grid(std::uint64_t seed, bool quantized) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 10.0);
  std::vector<double> v(16 * 16);
  for (auto& x : v) x = quantized ? std::floor(u(rng)) : u(rng);
  return GridEstimate(GridSpec{16, 16, Area{15, 15}}, v);
}

}  // namespace

TEST_SUITE("contour") {
  TEST_CASE("cone contour at 50 is one closed circle of radius 50") {
    const auto g = cone(401);
    const auto pieces = contour::extract_contours(g, 50.0);
    REQUIRE(pieces.size() == 1);
    CHECK(pieces[0].closed);
    CHECK(pieces[0].vertices.front() == pieces[0].vertices.back());
    CHECK(pieces[0].length() == doctest::Approx(2 * std::numbers::pi * 50).epsilon(0.01));
    for (const Vec2& v : pieces[0].vertices) CHECK(distance(v, {60, 60}) == doctest::Approx(50.0).epsilon(0.005));
  }

  TEST_CASE("levels outside the open grid range give nothing") {
    const auto g = cone(51);
    CHECK(contour::extract_contours(g, g.max() + 1).empty());
    CHECK(contour::extract_contours(g, g.max()).empty());
    CHECK(contour::extract_contours(g, g.min()).empty());
    CHECK(contour::extract_contours(g, g.min() - 1).empty());
  }

  TEST_CASE("plane g = x at 30 is a vertical open line") {
    const auto g = GridEstimate::from_function(GridSpec{101, 101, Area{}}, [](double x, double) { return x; });
    const auto pieces = contour::extract_contours(g, 30.5);
    REQUIRE(pieces.size() == 1);
    CHECK_FALSE(pieces[0].closed);
    for (const Vec2& v : pieces[0].vertices) CHECK(v.x == doctest::Approx(30.5));
    CHECK(on_boundary(pieces[0].vertices.front(), g.spec().area));
    CHECK(on_boundary(pieces[0].vertices.back(), g.spec().area));
    CHECK(pieces[0].length() == doctest::Approx(100.0));

    // A level exactly on a grid line still yields one straight piece.
    const auto exact = contour::extract_contours(g, 30.0);
    REQUIRE(exact.size() == 1);
    for (const Vec2& v : exact[0].vertices) CHECK(v.x == doctest::Approx(30.0));
  }

  TEST_CASE("segment sets match brute-force enumeration on random 16 x 16 grids") {
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
      for (bool quantized : {false, true}) {
        const auto g = random_grid(seed, quantized);
        std::mt19937_64 rng(seed * 31 + quantized);
        std::uniform_real_distribution<double> u(g.min(), g.max());
        for (double level : {u(rng), u(rng), std::round(u(rng))}) {
          CAPTURE(seed);
          CAPTURE(level);
          const auto oracle = testsupport::brute_force_segments(g, level);
          CHECK(testsupport::same_segments(testsupport::library_segments(g, level), oracle, 1e-12));

          // Chaining uses every cell segment exactly once.
          std::size_t chained = 0;
          for (const auto& piece : contour::extract_contours(g, level)) {
            chained += piece.vertices.size() - 1;
            if (piece.closed) {
              CHECK(piece.vertices.front() == piece.vertices.back());
            } else {
              CHECK(on_boundary(piece.vertices.front(), g.spec().area));
              CHECK(on_boundary(piece.vertices.back(), g.spec().area));
            }
            for (const Vec2& v : piece.vertices) CHECK(std::abs(g.bilinear(v) - level) < 1e-9);
            for (std::size_t k = 1; k < piece.vertices.size(); ++k)
              CHECK(distance(piece.vertices[k - 1], piece.vertices[k]) <= std::sqrt(2.0) + 1e-12);
          }
          if (level > g.min() && level < g.max()) CHECK(chained == oracle.size());
        }
      }
    }
  }

  TEST_CASE("saddle cells follow the centre average") {
    // Corners (0,0) and (1,1) high, the other two low.
    const GridEstimate high_centre(GridSpec{2, 2, Area{1, 1}}, {10, 0, 0, 10});
    const auto a = contour::cell_segments(high_centre, 4.0);
    REQUIRE(a.size() == 2);
    // Centre 5 >= 4: the high corners connect, so each segment cuts off a low corner.
    for (const auto& s : a) {
      const Vec2 mid = 0.5 * (s.a + s.b);
      CHECK(std::abs(mid.x - mid.y) > 0.3);
    }
    const auto b = contour::cell_segments(high_centre, 6.0);
    REQUIRE(b.size() == 2);
    for (const auto& s : b) {
      const Vec2 mid = 0.5 * (s.a + s.b);
      CHECK(std::abs(mid.x - mid.y) < 1e-12);
    }
  }

  TEST_CASE("start points") {
    CHECK(contour::pick_start_points({}, cone(21)).empty());

    const auto g = cone(201);
    const auto circle = contour::extract_contours(g, 60.0);
    REQUIRE(circle.size() == 1);
    const auto starts = contour::pick_start_points(circle, g);
    REQUIRE(starts.size() == 1);
    CHECK(std::find(circle[0].vertices.begin(), circle[0].vertices.end(), starts[0]) != circle[0].vertices.end());

    // Two bumps give two closed pieces; one start on each.
    const auto two = GridEstimate::from_function(GridSpec{101, 101, Area{}}, [](double x, double y) {
      return std::exp(-(std::pow(x - 25, 2) + std::pow(y - 50, 2)) / 100) +
             std::exp(-(std::pow(x - 75, 2) + std::pow(y - 50, 2)) / 100);
    });
    const auto pieces = contour::extract_contours(two, 0.5);
    REQUIRE(pieces.size() == 2);
    const auto s2 = contour::pick_start_points(pieces, two);
    REQUIRE(s2.size() == 2);
    for (std::size_t k = 0; k < 2; ++k)
      CHECK(std::find(pieces[k].vertices.begin(), pieces[k].vertices.end(), s2[k]) != pieces[k].vertices.end());

    const auto plane = GridEstimate::from_function(GridSpec{11, 11, Area{}}, [](double x, double) { return x; });
    const auto line = contour::extract_contours(plane, 45.0);
    REQUIRE(line.size() == 1);
    CHECK(contour::pick_start_points(line, plane)[0] == line[0].vertices.front());
  }

  TEST_CASE("contour CSV") {
    contour::ContourPiece p{2.5, {{0, 1}, {1, 1}}, false};
    std::ostringstream out;
    contour::write_contours_csv(std::vector{p}, out);
    CHECK(out.str() == "level,piece_id,x,y\n2.5,0,0,1\n2.5,0,1,1\n");
  }
}
