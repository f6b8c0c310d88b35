#pragma once

#include <span>
#include <stdexcept>
#include <vector>

namespace mfg {

/// Uniform grid of n nodes on [0,1]; node i sits at i/(n-1).
struct Grid {
  int n;

  explicit Grid(int n_nodes) : n(n_nodes) {
    if (n < 2) throw std::invalid_argument("Grid: need at least 2 nodes");
  }

  double step() const { return 1.0 / (n - 1); }
  double node(int i) const { return static_cast<double>(i) / (n - 1); }

  std::vector<double> nodes() const {
    std::vector<double> xs(n);
    for (int i = 0; i < n; ++i) xs[i] = node(i);
    return xs;
  }

  /// Trapezoid weights: h/2 at the ends, h inside.
  std::vector<double> trapezoid_weights() const {
    std::vector<double> w(n, step());
    w.front() *= 0.5;
    w.back() *= 0.5;
    return w;
  }
};

/// Linear interpolation of a grid function at y; y is clamped to [0,1].
inline double lerp_grid(std::span<const double> table, double y) {
  const int n = static_cast<int>(table.size());
  if (y <= 0.0) return table[0];
  if (y >= 1.0) return table[n - 1];
  const double pos = y * (n - 1);
  int i = static_cast<int>(pos);
  if (i > n - 2) i = n - 2;
  const double frac = pos - i;
  return table[i] + frac * (table[i + 1] - table[i]);
}

inline double trapezoid(std::span<const double> values, double step) {
  double s = 0.5 * (values.front() + values.back());
  for (std::size_t i = 1; i + 1 < values.size(); ++i) s += values[i];
  return s * step;
}

}  // namespace mfg
