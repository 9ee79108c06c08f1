#include "contourmon/field.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <random>
#include <string>

#include "contourmon/error.hpp"

namespace contourmon::field {

void FieldConfig::validate() const {
  if (n1 < 0 || n2 < 0 || n1 + n2 < 1) {
    fail(ErrorCode::Config, "field: component counts must be non-negative with at least one component");
  }
  if (!(sigma1 > 0.0) || !(sigma2 > 0.0)) fail(ErrorCode::Config, "field: sigma1 and sigma2 must be positive");
  if (!(area.width > 0.0) || !(area.height > 0.0)) fail(ErrorCode::Config, "field: area must have positive extent");
  if (!(target_max > 0.0)) fail(ErrorCode::Config, "field: target_max must be positive");
  if (probe_resolution < 2) fail(ErrorCode::Config, "field: probe_resolution must be at least 2");
}

ScalarField::ScalarField(std::vector<GaussianComponent> components, Area area)
    : components_(std::move(components)), area_(area) {
  for (const auto& c : components_) {
    if (!(c.amplitude > 0.0) || !(c.sigma > 0.0)) {
      fail(ErrorCode::InvalidArgument, "field: component amplitude and sigma must be positive");
    }
  }
}

double ScalarField::eval(double x, double y) const {
  double sum = 0.0;
  for (const auto& c : components_) {
    const double dx = x - c.center.x;
    const double dy = y - c.center.y;
    sum += c.amplitude * std::exp(-(dx * dx + dy * dy) / (2.0 * c.sigma * c.sigma));
  }
  return sum;
}

Vec2 ScalarField::gradient(double x, double y) const {
  Vec2 g;
  for (const auto& c : components_) {
    const double dx = x - c.center.x;
    const double dy = y - c.center.y;
    const double s2 = c.sigma * c.sigma;
    const double w = c.amplitude * std::exp(-(dx * dx + dy * dy) / (2.0 * s2)) / s2;
    g.x -= w * dx;
    g.y -= w * dy;
  }
  return g;
}

ScalarField ScalarField::scaled(double factor) const {
  auto comps = components_;
  for (auto& c : comps) c.amplitude *= factor;
  return ScalarField(std::move(comps), area_);
}

namespace {

Vec2 clamp_to(const Area& a, Vec2 p) {
  return {std::clamp(p.x, 0.0, a.width), std::clamp(p.y, 0.0, a.height)};
}

// Projected gradient ascent with backtracking; the value never decreases.
double ascend(const ScalarField& f, Vec2 p) {
  double value = f.eval(p);
  double step = 1.0;
  for (int it = 0; it < 200 && step > 1e-12; ++it) {
    const Vec2 g = f.gradient(p);
    const double gn = g.norm();
    if (gn < 1e-14) break;
    const Vec2 q = clamp_to(f.area(), p + (step / gn) * g);
    const double vq = f.eval(q);
    if (vq > value) {
      p = q;
      value = vq;
      step *= 1.5;
    } else {
      step *= 0.5;
    }
  }
  return value;
}

}  // namespace

double field_maximum(const ScalarField& field, int probe_resolution) {
  const Area& a = field.area();
  const int n = std::max(probe_resolution, 2);
  Vec2 best_probe;
  double best = -1.0;
  for (int i = 0; i < n; ++i) {
    const double x = a.width * i / (n - 1);
    for (int j = 0; j < n; ++j) {
      const double y = a.height * j / (n - 1);
      const double v = field.eval(x, y);
      if (v > best) {
        best = v;
        best_probe = {x, y};
      }
    }
  }
  best = std::max(best, ascend(field, best_probe));
  for (const auto& c : field.components()) {
    if (a.contains(c.center)) best = std::max(best, ascend(field, c.center));
  }
  return best;
}

ScalarField generate_field(const FieldConfig& config) {
  config.validate();
  std::mt19937_64 rng(config.seed);
  std::uniform_real_distribution<double> ux(0.0, config.area.width);
  std::uniform_real_distribution<double> uy(0.0, config.area.height);
  // (0, 1]: draw from [0, 1) and reflect.
  std::uniform_real_distribution<double> ua(0.0, 1.0);

  std::vector<GaussianComponent> comps;
  comps.reserve(static_cast<std::size_t>(config.n1 + config.n2));
  auto draw = [&](int count, double sigma) {
    for (int p = 0; p < count; ++p) {
      GaussianComponent c;
      c.center.x = ux(rng);
      c.center.y = uy(rng);
      c.amplitude = 1.0 - ua(rng);
      c.sigma = sigma;
      comps.push_back(c);
    }
  };
  draw(config.n1, config.sigma1);
  draw(config.n2, config.sigma2);

  ScalarField raw(std::move(comps), config.area);
  const double peak = field_maximum(raw, config.probe_resolution);
  if (!(peak > 0.0)) fail(ErrorCode::Numerical, "field: generated field has no positive maximum");
  return raw.scaled(config.target_max / peak);
}

void write_components_csv(const ScalarField& field, std::ostream& out) {
  out << "index,center_x,center_y,amplitude,sigma\n";
  char buf[160];
  std::size_t index = 0;
  for (const auto& c : field.components()) {
    std::snprintf(buf, sizeof buf, "%zu,%.17g,%.17g,%.17g,%.17g\n", index++, c.center.x, c.center.y, c.amplitude,
                  c.sigma);
    out << buf;
  }
}

}  // namespace contourmon::field
