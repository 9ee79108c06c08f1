#pragma once

// Synthetic ground-truth signal: a superposition of isotropic 2-D Gaussians
// split into two groups with different spreads.

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "contourmon/geometry.hpp"

namespace contourmon::field {

struct GaussianComponent {
  Vec2 center;
  double amplitude = 1.0;
  double sigma = 1.0;

  friend bool operator==(const GaussianComponent&, const GaussianComponent&) = default;
};

struct FieldConfig {
  int n1 = 10;
  int n2 = 10;
  double sigma1 = 10.0;
  double sigma2 = 15.0;
  Area area{};
  double target_max = 100.0;
  std::uint64_t seed = 1;
  /// Resolution of the probe grid used to locate the field maximum.
  int probe_resolution = 512;

  /// Throws Error(Config) on non-positive spreads, negative counts, or an
  /// empty component list.
  void validate() const;
};

/// Any differentiable signal over a rectangular area. The UAV simulator only
/// sees the truth through this interface.
class SignalField {
 public:
  virtual ~SignalField() = default;
  virtual double eval(Vec2 p) const = 0;
  virtual Vec2 gradient(Vec2 p) const = 0;
  virtual const Area& area() const = 0;
};

/// Immutable once constructed; evaluation is thread-safe.
class ScalarField final : public SignalField {
 public:
  ScalarField(std::vector<GaussianComponent> components, Area area);

  double eval(double x, double y) const;
  double eval(Vec2 p) const override { return eval(p.x, p.y); }
  Vec2 gradient(double x, double y) const;
  Vec2 gradient(Vec2 p) const override { return gradient(p.x, p.y); }

  const std::vector<GaussianComponent>& components() const { return components_; }
  const Area& area() const override { return area_; }

  ScalarField scaled(double factor) const;

 private:
  std::vector<GaussianComponent> components_;
  Area area_;
};

/// Maximum of the field over the area: probe grid plus component centres,
/// polished by gradient ascent from the best candidates.
double field_maximum(const ScalarField& field, int probe_resolution = 512);

/// Draws centres uniformly in the area and raw amplitudes uniformly in (0, 1],
/// then rescales every amplitude by one factor so the maximum equals
/// `config.target_max`. Deterministic in `config.seed`.
ScalarField generate_field(const FieldConfig& config);

/// `index,center_x,center_y,amplitude,sigma` rows, full precision.
void write_components_csv(const ScalarField& field, std::ostream& out);

}  // namespace contourmon::field
