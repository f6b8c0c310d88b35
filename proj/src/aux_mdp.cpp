#include "mfg/aux_mdp.hpp"

#include <cmath>
#include <stdexcept>

#include "mfg/grid.hpp"
#include "mfg/kernel.hpp"
#include "mfg/reset_mdp.hpp"

namespace mfg {

namespace {

std::vector<double> r1_grid(const ScalarFn& r1, int n) {
  const Grid g(n);
  std::vector<double> out(n);
  for (int i = 0; i < n; ++i) out[i] = r1(g.node(i));
  return out;
}

// rho * ∫ v_r dQ0(.|x0) - rho * v_r(0) - r; positive in the always-reset
// region when probed at x0 = 0, positive in the interior region at x0 = 1.
double residual_at(double r, double x0, std::span<const double> stage, double rho,
                   const XiSpec& xi, double vi_tol, std::vector<double>& v_warm) {
  v_warm = reset_value_iteration(stage, r, rho, xi, vi_tol, v_warm);
  const double g = q0_expectation(xi, x0, v_warm);
  return rho * g - rho * v_warm[0] - r;
}

double bisect_r(double x0, std::span<const double> stage, double rho, const XiSpec& xi,
                double lo, double hi, double tol, double vi_tol) {
  std::vector<double> v_warm;
  double flo = residual_at(lo, x0, stage, rho, xi, vi_tol, v_warm);
  double fhi = residual_at(hi, x0, stage, rho, xi, vi_tol, v_warm);
  if (!(flo > 0.0) || !(fhi < 0.0))
    throw std::invalid_argument("r_bounds: residual does not bracket (R1 not strictly increasing?)");
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    const double fm = residual_at(mid, x0, stage, rho, xi, vi_tol, v_warm);
    if (fm > 0.0) lo = mid;
    else hi = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

ThresholdDescriptor theta_of_r(double r, const ScalarFn& r1, const XiSpec& xi, double rho,
                               int grid_n, double vi_tol) {
  if (!(r > 0.0)) throw std::domain_error("theta_of_r: r must be positive");
  const auto stage = r1_grid(r1, grid_n);
  const auto v = reset_value_iteration(stage, r, rho, xi, vi_tol);
  return classify_threshold(v, r, rho, xi);
}

RBounds r_bounds(const ScalarFn& r1, const XiSpec& xi, double rho, int grid_n, double tol) {
  const auto stage = r1_grid(r1, grid_n);

  RBounds rb;
  rb.c_r1 = q0_expectation(xi, 0.0, stage) - stage[0];
  if (!(rb.c_r1 > 0.0))
    throw std::invalid_argument("r_bounds: C_R1 <= 0 (R1 not strictly increasing)");

  const double lo_seed = 0.5 * rho * (1.0 - rho) * rb.c_r1;       // inside the reset region
  const double hi_seed = rho * stage.back() / (1.0 - rho) + 1.0;  // beyond the drift region
  rb.r_low = bisect_r(0.0, stage, rho, xi, lo_seed, hi_seed, tol, tol * 0.1);
  rb.r_high = bisect_r(1.0, stage, rho, xi, lo_seed, hi_seed, tol, tol * 0.1);
  return rb;
}

}  // namespace mfg
