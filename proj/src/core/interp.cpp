#include "contourmon/interp.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <string>

#include "contourmon/error.hpp"

namespace contourmon::interp {

void GridSpec::validate() const {
  if (P < 2 || Q < 2) fail(ErrorCode::InvalidArgument, "grid: P and Q must be at least 2");
  if (!(area.width > 0.0) || !(area.height > 0.0)) fail(ErrorCode::InvalidArgument, "grid: area must have positive extent");
}

GridEstimate::GridEstimate(GridSpec spec, std::vector<double> values) : spec_(spec), values_(std::move(values)) {
  spec_.validate();
  if (values_.size() != static_cast<std::size_t>(spec_.P) * spec_.Q) {
    fail(ErrorCode::Shape, "grid: value count does not match P x Q");
  }
  min_ = std::numeric_limits<double>::infinity();
  max_ = -std::numeric_limits<double>::infinity();
  for (double v : values_) {
    if (!std::isfinite(v)) fail(ErrorCode::Numerical, "grid: non-finite value");
    min_ = std::min(min_, v);
    max_ = std::max(max_, v);
  }
}

namespace {

struct CellCoord {
  int i;
  int j;
  double tx;
  double ty;
};

CellCoord locate(const GridSpec& s, Vec2 p) {
  const double fx = std::clamp(p.x / s.dx(), 0.0, static_cast<double>(s.P - 1));
  const double fy = std::clamp(p.y / s.dy(), 0.0, static_cast<double>(s.Q - 1));
  const int i = std::min(static_cast<int>(fx), s.P - 2);
  const int j = std::min(static_cast<int>(fy), s.Q - 2);
  return {i, j, fx - i, fy - j};
}

}  // namespace

double GridEstimate::bilinear(Vec2 p) const {
  const auto c = locate(spec_, p);
  const double v00 = at(c.i, c.j), v10 = at(c.i + 1, c.j), v01 = at(c.i, c.j + 1), v11 = at(c.i + 1, c.j + 1);
  return (1 - c.tx) * (1 - c.ty) * v00 + c.tx * (1 - c.ty) * v10 + (1 - c.tx) * c.ty * v01 + c.tx * c.ty * v11;
}

Vec2 GridEstimate::gradient(Vec2 p) const {
  auto node_grad = [&](int i, int j) {
    const int i0 = std::max(i - 1, 0), i1 = std::min(i + 1, spec_.P - 1);
    const int j0 = std::max(j - 1, 0), j1 = std::min(j + 1, spec_.Q - 1);
    return Vec2{(at(i1, j) - at(i0, j)) / ((i1 - i0) * spec_.dx()), (at(i, j1) - at(i, j0)) / ((j1 - j0) * spec_.dy())};
  };
  const auto c = locate(spec_, p);
  return (1 - c.tx) * (1 - c.ty) * node_grad(c.i, c.j) + c.tx * (1 - c.ty) * node_grad(c.i + 1, c.j) +
         (1 - c.tx) * c.ty * node_grad(c.i, c.j + 1) + c.tx * c.ty * node_grad(c.i + 1, c.j + 1);
}

double biharmonic_kernel(double r2) {
  if (r2 <= 0.0) return 0.0;
  return r2 * (0.5 * std::log(r2) - 1.0);
}

double InterpModel::operator()(double x, double y) const {
  const double ux = (x - origin_.x) / scale_;
  const double uy = (y - origin_.y) / scale_;
  double sum = trend_[0] + trend_[1] * ux + trend_[2] * uy;
  for (std::size_t k = 0; k < nodes_.size(); ++k) {
    const double dx = ux - nodes_[k].x;
    const double dy = uy - nodes_[k].y;
    sum += weights_[k] * biharmonic_kernel(dx * dx + dy * dy);
  }
  return sum;
}

namespace {

struct Merged {
  Vec2 position;
  double value_sum;
  int count;
};

std::vector<Merged> merge_near_duplicates(std::span<const SamplePoint> samples, double radius) {
  std::vector<Merged> out;
  out.reserve(samples.size());
  if (!(radius > 0.0)) {
    for (const auto& s : samples) out.push_back({s.position(), s.value, 1});
    return out;
  }
  // Hash grid with cell size equal to the merge radius: candidates live in
  // the 3x3 neighbourhood of the sample's cell.
  std::unordered_map<long long, std::vector<std::size_t>> cells;
  auto key = [](long long cx, long long cy) { return cx * 73856093LL ^ cy * 19349663LL; };
  for (const auto& s : samples) {
    const long long cx = static_cast<long long>(std::floor(s.x / radius));
    const long long cy = static_cast<long long>(std::floor(s.y / radius));
    std::size_t hit = out.size();
    for (long long ox = -1; ox <= 1 && hit == out.size(); ++ox) {
      for (long long oy = -1; oy <= 1 && hit == out.size(); ++oy) {
        auto it = cells.find(key(cx + ox, cy + oy));
        if (it == cells.end()) continue;
        for (std::size_t idx : it->second) {
          if (distance(out[idx].position, s.position()) < radius) {
            hit = idx;
            break;
          }
        }
      }
    }
    if (hit == out.size()) {
      out.push_back({s.position(), s.value, 1});
      cells[key(cx, cy)].push_back(hit);
    } else {
      auto& m = out[hit];
      m.value_sum += s.value;
      ++m.count;
      // Lexicographically smallest member represents the cluster.
      if (std::tie(s.x, s.y) < std::tie(m.position.x, m.position.y)) m.position = s.position();
    }
  }
  return out;
}

}  // namespace

InterpModel fit(std::span<const SamplePoint> samples, const FitOptions& options) {
  for (const auto& s : samples) {
    if (!std::isfinite(s.x) || !std::isfinite(s.y) || !std::isfinite(s.value)) {
      fail(ErrorCode::InvalidArgument, "interp: non-finite sample");
    }
  }
  std::vector<Merged> merged = merge_near_duplicates(samples, options.merge_distance);
  if (merged.size() < 3) {
    fail(ErrorCode::InsufficientData,
         "interp: need at least 3 distinct samples, got " + std::to_string(merged.size()));
  }
  std::sort(merged.begin(), merged.end(), [](const Merged& a, const Merged& b) {
    return std::tie(a.position.x, a.position.y) < std::tie(b.position.x, b.position.y);
  });

  double xmin = merged[0].position.x, xmax = xmin, ymin = merged[0].position.y, ymax = ymin;
  for (const auto& m : merged) {
    xmin = std::min(xmin, m.position.x);
    xmax = std::max(xmax, m.position.x);
    ymin = std::min(ymin, m.position.y);
    ymax = std::max(ymax, m.position.y);
  }

  if (options.max_nodes >= 3 && merged.size() > options.max_nodes) {
    const Area box{std::max(xmax - xmin, 1e-9), std::max(ymax - ymin, 1e-9)};
    OccupancyThinner thinner(box, options.max_nodes);
    std::vector<Merged> kept;
    for (const auto& m : merged) {
      if (thinner.offer({m.position.x - xmin, m.position.y - ymin, 0.0})) kept.push_back(m);
    }
    merged = std::move(kept);
  }

  InterpModel model;
  model.origin_ = {0.5 * (xmin + xmax), 0.5 * (ymin + ymax)};
  model.scale_ = std::max({0.5 * (xmax - xmin), 0.5 * (ymax - ymin), 1e-12});

  const auto n = static_cast<Eigen::Index>(merged.size());
  model.nodes_.reserve(merged.size());
  for (const auto& m : merged) model.nodes_.push_back((1.0 / model.scale_) * (m.position - model.origin_));

  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n + 3, n + 3);
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n + 3);
  double kmax = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    const Vec2 ui = model.nodes_[static_cast<std::size_t>(i)];
    for (Eigen::Index j = 0; j < i; ++j) {
      const Vec2 d = ui - model.nodes_[static_cast<std::size_t>(j)];
      const double k = biharmonic_kernel(d.dot(d));
      a(i, j) = k;
      a(j, i) = k;
      kmax = std::max(kmax, std::abs(k));
    }
    a(i, n) = a(n, i) = 1.0;
    a(i, n + 1) = a(n + 1, i) = ui.x;
    a(i, n + 2) = a(n + 2, i) = ui.y;
    rhs(i) = merged[static_cast<std::size_t>(i)].value_sum / merged[static_cast<std::size_t>(i)].count;
  }
  const double ridge = options.ridge * std::max(kmax, 1.0);
  for (Eigen::Index i = 0; i < n; ++i) a(i, i) = ridge;

  Eigen::FullPivLU<Eigen::MatrixXd> rank_probe(a.bottomLeftCorner(3, n).transpose());
  if (rank_probe.rank() < 3) {
    fail(ErrorCode::Numerical, "interp: samples are collinear; the affine trend is singular");
  }

  const Eigen::PartialPivLU<Eigen::MatrixXd> lu(a);
  const Eigen::VectorXd sol = lu.solve(rhs);
  if (!sol.allFinite()) fail(ErrorCode::Numerical, "interp: singular interpolation system");

  model.weights_.assign(sol.data(), sol.data() + n);
  model.trend_[0] = sol(n);
  model.trend_[1] = sol(n + 1);
  model.trend_[2] = sol(n + 2);
  return model;
}

GridEstimate evaluate_grid(const InterpModel& model, const GridSpec& spec) {
  return GridEstimate::from_function(spec, [&](double x, double y) { return model(x, y); });
}

OccupancyThinner::OccupancyThinner(Area area, std::size_t max_cells) : area_(area) {
  const double cells = static_cast<double>(std::max<std::size_t>(max_cells, 1));
  nx_ = std::max(1, static_cast<int>(std::floor(std::sqrt(cells * area.width / area.height))));
  ny_ = std::max(1, static_cast<int>(std::floor(cells / nx_)));
}

bool OccupancyThinner::offer(const SamplePoint& s) {
  const int cx = std::clamp(static_cast<int>(std::floor(s.x / area_.width * nx_)), 0, nx_ - 1);
  const int cy = std::clamp(static_cast<int>(std::floor(s.y / area_.height * ny_)), 0, ny_ - 1);
  const long long key = static_cast<long long>(cx) * ny_ + cy;
  if (occupied_.contains(key)) return false;
  occupied_.emplace(key, kept_.size());
  kept_.push_back(s);
  return true;
}

void write_grid_csv(const GridEstimate& grid, std::ostream& out) {
  char buf[32];
  const auto& s = grid.spec();
  for (int i = 0; i < s.P; ++i) {
    for (int j = 0; j < s.Q; ++j) {
      std::snprintf(buf, sizeof buf, "%.10g", grid.at(i, j));
      if (j) out << ',';
      out << buf;
    }
    out << '\n';
  }
}

}  // namespace contourmon::interp
