#pragma once

#include <span>
#include <vector>

#include "mfg/dp.hpp"

namespace mfg {

/// Stationary equilibrium triple plus diagnostics.
struct StationarySolution {
  double z_hat = 0.0;
  ThresholdDescriptor theta_hat;
  GridMeasure pi_hat;
  std::vector<double> v;       // stationary value function on the grid
  double residual = 0.0;       // |z(theta(z_hat)) - z_hat|
  bool converged = false;
  int evaluations = 0;
};

/// Empirical mixing record: TV distance to pi_theta per step from several
/// initial points, plus a geometric fit TV ~ K r^t on the sup series.
struct ErgodicityReport {
  std::vector<double> initials;
  std::vector<std::vector<double>> tv_series;  // tv_series[i][t]
  double fitted_k = 0.0;
  double fitted_r = 1.0;
  bool fit_ok = false;
};

/// Sign-change scan of h(z) = z(theta(z)) - z.
struct UniquenessReport {
  std::vector<double> z_grid;
  std::vector<ThresholdDescriptor> thetas;
  std::vector<double> h_values;
  std::vector<double> near_roots;
  int sign_changes = 0;
  bool positive_externalities = true;
};

/// One application of the stationary dynamic-programming operator at
/// population mean z. Exposed for the contraction checks.
std::vector<double> stationary_bellman_apply(std::span<const double> g, double z,
                                             const ModelParams& params, const XiSpec& xi);

/// Value iteration from 0 until the sup-norm step is below tol*(1-rho).
/// `warm` can seed the iteration; the fixed point does not depend on it.
std::vector<double> solve_stationary_value(double z, const ModelParams& params, const XiSpec& xi,
                                           double tol = 1e-10,
                                           std::span<const double> warm = {});

/// Threshold classification of the best response at population mean z.
ThresholdDescriptor threshold_of_z(double z, const ModelParams& params, const XiSpec& xi,
                                   double vi_tol = 1e-10);

/// Stationary law of the threshold-controlled chain. Interior thresholds use
/// power iteration of the transfer operator from the atom at 0; theta = 0
/// gives the unit atom at 0; boundary and 1+ give the point mass at 1.
GridMeasure stationary_distribution(const ThresholdDescriptor& theta, const XiSpec& xi,
                                    int grid_n, double tol = 1e-10,
                                    const GridMeasure* warm_start = nullptr,
                                    int max_iter = 20000);

double z_of_theta(const ThresholdDescriptor& theta, const XiSpec& xi, int grid_n,
                  double tol = 1e-10);

/// Root of h(z) = z(theta(z)) - z by bisection on [bracket_lo, bracket_hi].
StationarySolution solve_stationary_equilibrium(const ModelParams& params, const XiSpec& xi,
                                                double tol = 1e-6, double bracket_lo = 0.0,
                                                double bracket_hi = 1.0);

/// Scans h on n_scan points. Multiple sign changes under a positive-
/// externality cost throw; otherwise the report only flags the assumption.
UniquenessReport uniqueness_probe(const ModelParams& params, const XiSpec& xi, int n_scan = 101);

ErgodicityReport ergodicity_report(const ThresholdDescriptor& theta, const XiSpec& xi,
                                   int grid_n, int horizon, std::span<const double> initials,
                                   double pi_tol = 1e-10);

}  // namespace mfg
