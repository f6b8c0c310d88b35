#include "mfg/measure.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "mfg/grid.hpp"
#include "mfg/kernels.hpp"
#include "mfg/parallel.hpp"

namespace mfg {

namespace {

constexpr double kSourceClip = 1.0 - 1e-9;  // keeps 1/(1-x) finite at the top node

// Source representation of the density part restricted to [0, r]:
// quadrature abscissae, combined weights (trapezoid weight times density),
// and 1/(1-x) factors. head_mass = sum of weights = ∫_0^r density.
struct SourceSet {
  std::vector<double> xs, coef, inv1mx;
  double head_mass = 0.0;
};

SourceSet build_sources(const GridMeasure& mu, double r_limit) {
  const int n = mu.n();
  const Grid g(n);
  const double h = g.step();
  SourceSet s;
  s.xs.reserve(n + 1);
  s.coef.reserve(n + 1);

  int k = static_cast<int>(std::floor(r_limit / h));  // last node at or below the limit
  if (k > n - 1) k = n - 1;
  const bool partial = g.node(k) < r_limit && k < n - 1;

  for (int i = 0; i <= k; ++i) {
    double w = (i == 0 || i == k) ? 0.5 * h : h;
    if (k == 0) w = 0.0;
    s.xs.push_back(g.node(i));
    s.coef.push_back(w * mu.density[i]);
  }
  if (partial) {
    // trapezoid over the fractional cell [x_k, r]
    const double e = r_limit - g.node(k);
    const double dens_r = lerp_grid(mu.density, r_limit);
    s.coef[k] += 0.5 * e * mu.density[k];
    s.xs.push_back(r_limit);
    s.coef.push_back(0.5 * e * dens_r);
  }
  for (double& x : s.xs) x = std::min(x, kSourceClip);
  s.inv1mx.resize(s.xs.size());
  for (std::size_t i = 0; i < s.xs.size(); ++i) s.inv1mx[i] = 1.0 / (1.0 - s.xs[i]);
  for (double c : s.coef) s.head_mass += c;
  return s;
}

// Pushed CDF H evaluated on the half-step lattice {0, h/2, 3h/2, ..., 1-h/2, 1},
// then differenced into per-cell masses and divided by the cell widths.
GridMeasure transfer(const GridMeasure& mu, const XiSpec& xi, const SourceSet& src,
                     double out_atom) {
  const int n = mu.n();
  const double h = mu.step();
  const CdfCtx cdf = xi.cdf_ctx();
  const auto& kern = simd::active_kernels();
  const int m = static_cast<int>(src.xs.size());

  std::vector<double> H(n + 1);
  parallel_for(0, n + 1, [&](int k) {
    double p;
    if (k == 0) p = 0.0;
    else if (k == n) p = 1.0;
    else p = (k - 0.5) * h;
    // only sources strictly below p can contribute
    const int mp = static_cast<int>(
        std::upper_bound(src.xs.begin(), src.xs.end(), p) - src.xs.begin());
    double acc = kern.cdf_row(cdf, src.xs.data(), src.coef.data(), src.inv1mx.data(),
                              std::min(mp, m), p);
    acc += mu.atom0 * cdf_ctx_eval(cdf, p);
    H[k] = acc;
  });

  GridMeasure out;
  out.atom0 = out_atom;
  out.density.resize(n);
  out.density[0] = std::max(0.0, (H[1] - H[0]) / (0.5 * h));
  for (int j = 1; j < n - 1; ++j) out.density[j] = std::max(0.0, (H[j + 1] - H[j]) / h);
  out.density[n - 1] = std::max(0.0, (H[n] - H[n - 1]) / (0.5 * h));
  if (std::abs(out.mass() - mu.mass()) > 1e-8)
    throw std::runtime_error("measure transfer lost mass (quadrature bug)");
  return out;
}

}  // namespace

double GridMeasure::mass() const {
  return atom0 + trapezoid(density, step());
}

double GridMeasure::mean() const {
  const int nn = n();
  const Grid g(nn);
  const auto tw = g.trapezoid_weights();
  std::vector<double> wx(nn);
  for (int i = 0; i < nn; ++i) wx[i] = tw[i] * g.node(i);
  return simd::active_kernels().weighted_sum(wx.data(), density.data(), nn);
}

double GridMeasure::tail_mass(double r) const {
  if (!(r > 0.0 && r < 1.0)) throw std::domain_error("GridMeasure::tail_mass: r outside (0,1)");
  const int nn = n();
  const Grid g(nn);
  const double h = g.step();
  int k = static_cast<int>(std::floor(r / h));
  if (k > nn - 2) k = nn - 2;
  // partial cell [r, x_{k+1}] then full cells above
  const double dens_r = lerp_grid(density, r);
  double total = 0.5 * (g.node(k + 1) - r) * (dens_r + density[k + 1]);
  for (int i = k + 1; i < nn - 1; ++i) total += 0.5 * h * (density[i] + density[i + 1]);
  return total;
}

GridMeasure GridMeasure::unit_atom0(int n) {
  GridMeasure mu;
  mu.atom0 = 1.0;
  mu.density.assign(n, 0.0);
  return mu;
}

GridMeasure GridMeasure::uniform_density(int n) {
  GridMeasure mu;
  mu.atom0 = 0.0;
  mu.density.assign(n, 1.0);
  return mu;
}

GridMeasure GridMeasure::point_mass(int n, double x) {
  if (!(x >= 0.0 && x <= 1.0)) throw std::domain_error("GridMeasure::point_mass: x outside [0,1]");
  if (x == 0.0) return unit_atom0(n);
  GridMeasure mu;
  mu.atom0 = 0.0;
  mu.density.assign(n, 0.0);
  const Grid g(n);
  const int k = static_cast<int>(std::lround(x * (n - 1)));
  const double w = (k == 0 || k == n - 1) ? 0.5 * g.step() : g.step();
  mu.density[k] = 1.0 / w;
  return mu;
}

void GridMeasure::validate(double tol) const {
  if (n() < 2) throw std::invalid_argument("GridMeasure: density grid too small");
  if (atom0 < -1e-12 || atom0 > 1.0 + 1e-12)
    throw std::invalid_argument("GridMeasure: atom mass outside [0,1]");
  for (double d : density)
    if (d < -1e-12) throw std::invalid_argument("GridMeasure: negative density value");
  const double m = mass();
  if (std::abs(m - 1.0) > tol)
    throw std::invalid_argument("GridMeasure: total mass " + std::to_string(m) + " not 1");
}

GridMeasure push_a0(const GridMeasure& mu, const XiSpec& xi) {
  const auto src = build_sources(mu, 1.0);
  return transfer(mu, xi, src, 0.0);
}

GridMeasure push_threshold(const GridMeasure& mu, const XiSpec& xi, double r) {
  if (!(r > 0.0 && r < 1.0)) throw std::domain_error("push_threshold: r outside (0,1)");
  const auto src = build_sources(mu, r);
  const double dens_mass = trapezoid(mu.density, mu.step());
  const double reset_mass = std::max(0.0, dens_mass - src.head_mass);
  return transfer(mu, xi, src, reset_mass);
}

double tv_distance(const GridMeasure& a, const GridMeasure& b) {
  if (a.n() != b.n()) throw std::invalid_argument("tv_distance: grids differ");
  const Grid g(a.n());
  const auto tw = g.trapezoid_weights();
  const double dens_part = simd::active_kernels().weighted_abs_diff(
      tw.data(), a.density.data(), b.density.data(), a.n());
  return 0.5 * (std::abs(a.atom0 - b.atom0) + dens_part);
}

double sample_state(const GridMeasure& mu, RngStream& rng) {
  const double u = rng.uniform01();
  if (u < mu.atom0) return 0.0;
  double target = u - mu.atom0;
  const int n = mu.n();
  const double h = mu.step();
  for (int j = 0; j + 1 < n; ++j) {
    const double d0 = mu.density[j], d1 = mu.density[j + 1];
    const double cell = 0.5 * h * (d0 + d1);
    if (target <= cell || j == n - 2) {
      if (cell <= 0.0) return (j + 1) * h;
      // invert the quadratic CDF of the linear density on the cell
      const double s = (d1 - d0) / h;
      double xi_off;
      if (std::abs(s) < 1e-14 * std::max(1.0, d0)) {
        xi_off = target / std::max(d0, 1e-300);
      } else {
        const double disc = d0 * d0 + 2.0 * s * target;
        xi_off = (-d0 + std::sqrt(std::max(0.0, disc))) / s;
      }
      xi_off = std::clamp(xi_off, 0.0, h);
      return j * h + xi_off;
    }
    target -= cell;
  }
  return 1.0;
}

}  // namespace mfg
