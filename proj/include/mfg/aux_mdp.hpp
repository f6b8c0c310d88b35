#pragma once

#include "mfg/cost.hpp"
#include "mfg/dp.hpp"

namespace mfg {

/// Effort-cost interval on which the threshold map r -> theta(r) is interior:
/// below r_low the best response always resets, above r_high it never does.
/// c_r1 = ∫ R1(y) Q0(dy|0) - R1(0) feeds the analytic lower bound on r_low.
struct RBounds {
  double r_low = 0.0;
  double r_high = 0.0;
  double c_r1 = 0.0;
};

/// Threshold of the infinite-horizon MDP with stage cost R1(x) + r 1{reset}.
ThresholdDescriptor theta_of_r(double r, const ScalarFn& r1, const XiSpec& xi, double rho,
                               int grid_n, double vi_tol = 1e-10);

/// Bisection for the edges of the interior region; each residual evaluation
/// re-solves the value function, warm-started from the previous one.
RBounds r_bounds(const ScalarFn& r1, const XiSpec& xi, double rho, int grid_n,
                 double tol = 1e-9);

}  // namespace mfg
