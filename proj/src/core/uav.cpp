#include "contourmon/uav.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "contourmon/error.hpp"

namespace contourmon::uav {

void TraceParams::validate() const {
  if (!(step > 0.0) || !(trace_tol > 0.0) || !(search_radius > 0.0) || max_steps < 1 || !(report_spacing > 0.0)) {
    fail(ErrorCode::Config, "trace: step, trace_tol, search_radius, max_steps and report_spacing must be positive");
  }
  if (report_spacing < step) fail(ErrorCode::Config, "trace: report_spacing must be at least step");
}

const char* to_string(TraceEnd end) noexcept {
  switch (end) {
    case TraceEnd::Closed: return "closed";
    case TraceEnd::ExitedArea: return "exited-area";
    case TraceEnd::MaxSteps: return "max-steps";
    case TraceEnd::FlatSpot: return "flat-spot";
    case TraceEnd::CorrectorFailed: return "corrector-failed";
  }
  return "unknown";
}

std::vector<interp::SamplePoint> initial_survey(const field::SignalField& truth, double spacing) {
  if (!(spacing > 0.0)) fail(ErrorCode::InvalidArgument, "survey: spacing must be positive");
  const Area& a = truth.area();
  const double length = a.diagonal();
  // Relative slack absorbs rounding when spacing divides the diagonal.
  const auto steps = static_cast<std::size_t>(std::floor(length / spacing * (1.0 + 1e-12)));
  const bool add_end = steps * spacing < length * (1.0 - 1e-12);

  std::vector<interp::SamplePoint> out;
  const std::array<std::pair<Vec2, Vec2>, 2> routes{{{{0.0, 0.0}, {a.width, a.height}}, {{0.0, a.height}, {a.width, 0.0}}}};
  for (const auto& [from, to] : routes) {
    auto emit = [&](double t) {
      const Vec2 p = from + t * (to - from);
      out.push_back({p.x, p.y, truth.eval(p)});
    };
    for (std::size_t k = 0; k <= steps; ++k) emit(std::min(1.0, k * spacing / length));
    if (add_end) emit(1.0);
  }
  return out;
}

namespace {

// Bisection on a bracket [lo, hi] of g - level with opposite signs.
Vec2 bisect(const field::SignalField& truth, double level, Vec2 lo, Vec2 hi, double tol) {
  double flo = truth.eval(lo) - level;
  Vec2 mid = lo;
  for (int it = 0; it < 200; ++it) {
    mid = 0.5 * (lo + hi);
    const double fm = truth.eval(mid) - level;
    if (std::abs(fm) <= tol) return mid;
    if ((fm < 0.0) == (flo < 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return mid;
}

}  // namespace

std::optional<Vec2> locate_crossing(const field::SignalField& truth, double level, Vec2 guess,
                                    const TraceParams& params) {
  params.validate();
  const double f0 = truth.eval(guess) - level;
  if (std::abs(f0) <= params.trace_tol) return guess;

  std::optional<Vec2> best;
  double best_dist = 0.0;
  for (int k = 0; k < 8; ++k) {
    const double angle = k * std::numbers::pi / 4.0;
    const Vec2 dir{std::cos(angle), std::sin(angle)};
    Vec2 prev = guess;
    double fprev = f0;
    for (double t = params.step;; t += params.step) {
      const double r = std::min(t, params.search_radius);
      const Vec2 p = guess + r * dir;
      if (!truth.area().contains(p)) break;
      const double f = truth.eval(p) - level;
      if ((f < 0.0) != (fprev < 0.0) || std::abs(f) <= params.trace_tol) {
        const Vec2 hit = std::abs(f) <= params.trace_tol ? p : bisect(truth, level, prev, p, params.trace_tol);
        const double d = distance(hit, guess);
        if (!best || d < best_dist) {
          best = hit;
          best_dist = d;
        }
        break;
      }
      if (r >= params.search_radius) break;
      prev = p;
      fprev = f;
    }
  }
  if (best && std::abs(truth.eval(*best) - level) > params.trace_tol) return std::nullopt;
  return best;
}

namespace {

constexpr double kFlatGradient = 1e-9;

struct Walk {
  std::vector<Vec2> path;
  TraceEnd end = TraceEnd::MaxSteps;
  int steps = 0;
};

std::optional<Vec2> newton_correct(const field::SignalField& truth, double level, Vec2 q, double tol) {
  for (int it = 0; it < 40; ++it) {
    const double f = truth.eval(q) - level;
    if (std::abs(f) <= 1e-3 * tol) return q;
    const Vec2 g = truth.gradient(q);
    const double g2 = g.dot(g);
    if (g2 < kFlatGradient * kFlatGradient) break;
    q = q - (f / g2) * g;
  }
  if (std::abs(truth.eval(q) - level) <= tol) return q;
  return std::nullopt;
}

// Where the segment inside -> outside leaves the area, refined along the
// boundary side to the actual level crossing.
std::optional<Vec2> boundary_exit(const field::SignalField& truth, double level, Vec2 inside, Vec2 outside,
                                  const TraceParams& params) {
  const Area& a = truth.area();
  const Vec2 d = outside - inside;
  double s = 1.0;
  int side = -1;  // 0: x=0, 1: x=W, 2: y=0, 3: y=H
  auto clip = [&](double num, double den, int which) {
    if (den != 0.0) {
      const double t = num / den;
      if (t >= 0.0 && t < s) {
        s = t;
        side = which;
      }
    }
  };
  if (outside.x < 0.0) clip(-inside.x, d.x, 0);
  if (outside.x > a.width) clip(a.width - inside.x, d.x, 1);
  if (outside.y < 0.0) clip(-inside.y, d.y, 2);
  if (outside.y > a.height) clip(a.height - inside.y, d.y, 3);
  if (side < 0) return std::nullopt;

  const Vec2 b = inside + s * d;
  const bool vertical = side <= 1;
  const double u0 = vertical ? b.y : b.x;
  const double umax = vertical ? a.height : a.width;
  auto at = [&](double u) {
    if (vertical) return Vec2{side == 0 ? 0.0 : a.width, u};
    return Vec2{u, side == 2 ? 0.0 : a.height};
  };
  if (std::abs(truth.eval(at(u0)) - level) <= params.trace_tol) return at(u0);

  // Expand symmetrically from the straight-line exit point.
  const int n = 16;
  const double du = params.step / n;
  for (int k = 1; k <= 2 * n; ++k) {
    for (double sign : {1.0, -1.0}) {
      const double u_in = std::clamp(u0 + sign * (k - 1) * du, 0.0, umax);
      const double u_out = std::clamp(u0 + sign * k * du, 0.0, umax);
      const double fi = truth.eval(at(u_in)) - level;
      const double fo = truth.eval(at(u_out)) - level;
      if (std::abs(fo) <= params.trace_tol) return at(u_out);
      if ((fi < 0.0) != (fo < 0.0)) return bisect(truth, level, at(u_in), at(u_out), params.trace_tol);
    }
  }
  return std::nullopt;
}

Walk walk(const field::SignalField& truth, double level, Vec2 start, double orientation, int budget,
          const TraceParams& params) {
  Walk w;
  w.path.push_back(start);
  Vec2 p = start;
  while (w.steps < budget) {
    const Vec2 g = truth.gradient(p);
    const double gn = g.norm();
    if (gn < kFlatGradient) {
      w.end = TraceEnd::FlatSpot;
      return w;
    }
    const Vec2 tangent = (orientation / gn) * g.perp();

    std::optional<Vec2> next;
    for (double h = params.step; h >= params.step / 64.0; h *= 0.5) {
      next = newton_correct(truth, level, p + h * tangent, params.trace_tol);
      // Reject corrections that jumped to another branch or went backwards.
      if (next && distance(*next, p) <= 2.0 * h && (*next - p).dot(tangent) > 0.0) break;
      next.reset();
    }
    if (!next) {
      w.end = TraceEnd::CorrectorFailed;
      return w;
    }
    ++w.steps;
    if (!truth.area().contains(*next)) {
      if (auto exit = boundary_exit(truth, level, p, *next, params)) w.path.push_back(*exit);
      w.end = TraceEnd::ExitedArea;
      return w;
    }
    w.path.push_back(*next);
    p = *next;
    if (w.steps >= 3 && distance(p, start) < params.step) {
      w.path.push_back(start);
      w.end = TraceEnd::Closed;
      return w;
    }
  }
  w.end = TraceEnd::MaxSteps;
  return w;
}

}  // namespace

TracedContour trace_contour(const field::SignalField& truth, double level, Vec2 start, const TraceParams& params) {
  params.validate();
  if (std::abs(truth.eval(start) - level) > params.trace_tol) {
    fail(ErrorCode::InvalidArgument, "trace: start point is not on the requested level");
  }
  TracedContour out;
  out.level = level;

  Walk fwd = walk(truth, level, start, 1.0, params.max_steps, params);
  std::vector<Vec2> path;
  out.end = fwd.end;
  if (fwd.end == TraceEnd::ExitedArea && fwd.steps < params.max_steps) {
    Walk back = walk(truth, level, start, -1.0, params.max_steps - fwd.steps, params);
    path.assign(back.path.rbegin(), back.path.rend());
    path.insert(path.end(), fwd.path.begin() + 1, fwd.path.end());
    if (back.end != TraceEnd::ExitedArea) out.end = back.end;
  } else {
    path = std::move(fwd.path);
  }
  out.closed = out.end == TraceEnd::Closed;

  for (std::size_t k = 1; k < path.size(); ++k) out.path_length += distance(path[k - 1], path[k]);

  // Reports every report_spacing of arc length, plus both ends. Corrected
  // chords run slightly shorter than `step`, hence the quarter-step slack.
  double since = 0.0;
  out.reported.push_back(path.front());
  for (std::size_t k = 1; k < path.size(); ++k) {
    since += distance(path[k - 1], path[k]);
    const bool last = k + 1 == path.size();
    if (since >= params.report_spacing - 0.25 * params.step || last) {
      if (!(last && out.closed)) out.reported.push_back(path[k]);
      since = 0.0;
    }
  }
  out.sample_count = out.reported.size();
  out.pieces.push_back(std::move(path));
  return out;
}

}  // namespace contourmon::uav
