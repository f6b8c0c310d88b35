#pragma once

#include <vector>

#include "mfg/rng.hpp"
#include "mfg/xi.hpp"

namespace mfg {

/// State distribution of the "atom at 0 plus density on (0,1]" class,
/// discretized on the uniform state grid. Node values are per-cell averages
/// of the density (cells centered on the nodes), so
/// atom0 + trapezoid(density) reproduces the total mass to rounding error
/// even when the density blows up near 1.
struct GridMeasure {
  double atom0 = 0.0;
  std::vector<double> density;

  int n() const { return static_cast<int>(density.size()); }
  double step() const { return 1.0 / (n() - 1); }

  double mass() const;
  double mean() const;
  /// Density mass on [r, 1] for r in (0,1); the atom at 0 never counts.
  double tail_mass(double r) const;

  static GridMeasure unit_atom0(int n);
  static GridMeasure uniform_density(int n);
  /// Mass 1 at x: the atom for x = 0, otherwise a one-node density spike.
  static GridMeasure point_mass(int n, double x);

  /// Throws unless mass is 1 within tol and the density is nonnegative.
  void validate(double tol = 1e-8) const;
};

/// One-step transfer under the passive action: the law of x + (1-x)ξ with
/// x ~ mu. The output has no atom.
GridMeasure push_a0(const GridMeasure& mu, const XiSpec& xi);

/// One-step transfer under the threshold policy with parameter r in (0,1):
/// mass at or above r resets to the atom at 0, the rest drifts as under a_0.
GridMeasure push_threshold(const GridMeasure& mu, const XiSpec& xi, double r);

/// Total variation distance: (|atom difference| + ∫|density difference|)/2.
double tv_distance(const GridMeasure& a, const GridMeasure& b);

/// Inverse-CDF draw from mu; consumes exactly one uniform.
double sample_state(const GridMeasure& mu, RngStream& rng);

}  // namespace mfg
