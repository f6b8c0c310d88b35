#pragma once

#include <span>
#include <vector>

#include "mfg/dp.hpp"

namespace mfg {

/// Equilibrium candidate for the finite-horizon game.
struct MeanFieldSolution {
  std::vector<double> z_hat;          // T+1 entries, z_hat[0] = m0
  PolicySchedule schedule;
  std::vector<GridMeasure> mu_path;   // T+1 distributions under the schedule
  double residual = 0.0;              // sup_t |Phi(z_hat)_t - z_hat_t|
  int iterations = 0;
  bool converged = false;
  bool positive_thresholds = true;    // no step of the final schedule resets near 0
  std::vector<double> residual_history;
};

/// Distribution path induced by a schedule from mu0 (length T+1).
std::vector<GridMeasure> propagate_schedule(const PolicySchedule& schedule,
                                            const GridMeasure& mu0, const XiSpec& xi);

/// The consistency map: best respond to z_path, propagate the state law and
/// read off the mean path. Output entry 0 is the mean of mu0.
std::vector<double> phi_map(std::span<const double> z_path, const GridMeasure& mu0,
                            const ModelParams& params, const XiSpec& xi);

/// Damped Picard iteration z <- (1-damping) z + damping Phi(z) started from
/// the constant path at m0. Non-convergence is reported, not thrown.
MeanFieldSolution solve_fixed_point(const GridMeasure& mu0, const ModelParams& params,
                                    const XiSpec& xi, double damping = 0.5,
                                    double tol = 1e-6, int max_iter = 200);

}  // namespace mfg
