#include "mfg/mean_field.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace mfg {

std::vector<GridMeasure> propagate_schedule(const PolicySchedule& schedule,
                                            const GridMeasure& mu0, const XiSpec& xi) {
  std::vector<GridMeasure> path;
  path.reserve(schedule.horizon() + 1);
  path.push_back(mu0);
  for (const auto& d : schedule.steps) {
    const GridMeasure& cur = path.back();
    switch (d.kind) {
      case ThresholdKind::always_a1:
        path.push_back(GridMeasure::unit_atom0(cur.n()));
        break;
      case ThresholdKind::interior:
        path.push_back(push_threshold(cur, xi, d.value));
        break;
      case ThresholdKind::boundary:
      case ThresholdKind::always_a0:
        // the reset set {1} carries no mass under a density innovation
        path.push_back(push_a0(cur, xi));
        break;
    }
  }
  return path;
}

std::vector<double> phi_map(std::span<const double> z_path, const GridMeasure& mu0,
                            const ModelParams& params, const XiSpec& xi) {
  const auto dp = solve_dp(z_path, params, xi);
  const auto mu_path = propagate_schedule(dp.schedule, mu0, xi);
  std::vector<double> w(z_path.size());
  w[0] = mu0.mean();
  for (std::size_t t = 1; t < mu_path.size(); ++t) w[t] = mu_path[t].mean();
  return w;
}

MeanFieldSolution solve_fixed_point(const GridMeasure& mu0, const ModelParams& params,
                                    const XiSpec& xi, double damping, double tol,
                                    int max_iter) {
  if (!(damping > 0.0 && damping <= 1.0))
    throw std::invalid_argument("solve_fixed_point: damping outside (0,1]");
  if (!(tol > 0.0)) throw std::invalid_argument("solve_fixed_point: tol must be positive");

  const int T = params.horizon;
  std::vector<double> z(T + 1, params.m0);
  z[0] = params.m0;

  double best_residual = std::numeric_limits<double>::infinity();
  std::vector<double> z_best = z;
  std::vector<double> history;
  int it = 0;
  for (; it < max_iter; ++it) {
    const auto w = phi_map(z, mu0, params, xi);
    double res = 0.0;
    for (int t = 0; t <= T; ++t) res = std::max(res, std::abs(w[t] - z[t]));
    history.push_back(res);
    if (res < best_residual) {
      best_residual = res;
      z_best = z;
    }
    if (res <= tol) break;
    for (int t = 1; t <= T; ++t) z[t] = (1.0 - damping) * z[t] + damping * w[t];
  }

  MeanFieldSolution out;
  out.z_hat = z_best;
  out.residual = best_residual;
  out.iterations = std::min(it + 1, max_iter);
  out.converged = best_residual <= tol;
  out.residual_history = std::move(history);
  const auto dp = solve_dp(out.z_hat, params, xi);
  out.schedule = dp.schedule;
  out.mu_path = propagate_schedule(out.schedule, mu0, xi);
  out.positive_thresholds = out.schedule.uniformly_positive();
  return out;
}

}  // namespace mfg
