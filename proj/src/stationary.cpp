#include "mfg/stationary.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "mfg/grid.hpp"
#include "mfg/kernel.hpp"
#include "mfg/kernels.hpp"
#include "mfg/reset_mdp.hpp"

namespace mfg {

std::vector<double> reset_bellman_apply(std::span<const double> g,
                                        std::span<const double> stage_cost,
                                        double gamma_eff, double rho, const XiSpec& xi) {
  const int n = static_cast<int>(g.size());
  auto G = q0_expectation_grid(xi, g);
  const double reset = rho * g[0] + gamma_eff;
  std::vector<double> out(n);
  for (int i = 0; i < n; ++i) out[i] = stage_cost[i] + std::min(rho * G[i], reset);
  return out;
}

std::vector<double> reset_value_iteration(std::span<const double> stage_cost, double gamma_eff,
                                          double rho, const XiSpec& xi, double tol,
                                          std::span<const double> warm, int max_iter) {
  const int n = static_cast<int>(stage_cost.size());
  std::vector<double> g;
  if (warm.empty()) g.assign(n, 0.0);
  else g.assign(warm.begin(), warm.end());

  const auto& kern = simd::active_kernels();
  const double stop = tol * (1.0 - rho);
  for (int it = 0; it < max_iter; ++it) {
    auto next = reset_bellman_apply(g, stage_cost, gamma_eff, rho, xi);
    const double diff = kern.sup_abs_diff(next.data(), g.data(), n);
    g.swap(next);
    if (diff <= stop) return g;
  }
  throw std::runtime_error("reset_value_iteration: contraction failed to settle (cap hit)");
}

std::vector<double> stationary_bellman_apply(std::span<const double> g, double z,
                                             const ModelParams& params, const XiSpec& xi) {
  const auto stage = params.cost.grid_slice(z, static_cast<int>(g.size()));
  return reset_bellman_apply(g, stage, params.gamma, params.rho, xi);
}

std::vector<double> solve_stationary_value(double z, const ModelParams& params, const XiSpec& xi,
                                           double tol, std::span<const double> warm) {
  if (!(z >= 0.0 && z <= 1.0)) throw std::domain_error("solve_stationary_value: z outside [0,1]");
  const auto stage = params.cost.grid_slice(z, params.grid_n);
  return reset_value_iteration(stage, params.gamma, params.rho, xi, tol, warm);
}

ThresholdDescriptor threshold_of_z(double z, const ModelParams& params, const XiSpec& xi,
                                   double vi_tol) {
  const auto v = solve_stationary_value(z, params, xi, vi_tol);
  return classify_threshold(v, params.gamma, params.rho, xi);
}

namespace {

struct PowerIterationResult {
  GridMeasure pi;
  int iterations = 0;
};

PowerIterationResult power_iterate(double theta, const XiSpec& xi, int grid_n, double tol,
                                   const GridMeasure* warm_start, int max_iter) {
  GridMeasure mu = warm_start ? *warm_start : GridMeasure::unit_atom0(grid_n);
  for (int it = 1; it <= max_iter; ++it) {
    GridMeasure next = push_threshold(mu, xi, theta);
    const double d = tv_distance(next, mu);
    mu = std::move(next);
    if (d <= tol) return {std::move(mu), it};
  }
  throw std::runtime_error("stationary_distribution: power iteration hit the cap");
}

}  // namespace

GridMeasure stationary_distribution(const ThresholdDescriptor& theta, const XiSpec& xi,
                                    int grid_n, double tol, const GridMeasure* warm_start,
                                    int max_iter) {
  switch (theta.kind) {
    case ThresholdKind::always_a1:
      return GridMeasure::unit_atom0(grid_n);
    case ThresholdKind::boundary:
    case ThresholdKind::always_a0:
      // pure drift absorbs at 1; the reset at exactly 1 never fires
      return GridMeasure::point_mass(grid_n, 1.0);
    case ThresholdKind::interior:
      return power_iterate(theta.value, xi, grid_n, tol, warm_start, max_iter).pi;
  }
  throw std::logic_error("stationary_distribution: bad descriptor");
}

double z_of_theta(const ThresholdDescriptor& theta, const XiSpec& xi, int grid_n, double tol) {
  if (theta.kind == ThresholdKind::always_a1) return 0.0;
  if (theta.kind != ThresholdKind::interior) return 1.0;
  return stationary_distribution(theta, xi, grid_n, tol).mean();
}

StationarySolution solve_stationary_equilibrium(const ModelParams& params, const XiSpec& xi,
                                                double tol, double bracket_lo,
                                                double bracket_hi) {
  if (!(bracket_lo >= 0.0 && bracket_hi <= 1.0 && bracket_lo < bracket_hi))
    throw std::invalid_argument("solve_stationary_equilibrium: bad bracket");

  std::vector<double> v_warm;
  GridMeasure pi_warm;
  bool have_pi_warm = false;
  int evals = 0;

  struct Eval {
    double h;
    ThresholdDescriptor theta;
  };
  const auto eval_h = [&](double z) -> Eval {
    v_warm = solve_stationary_value(z, params, xi, 1e-10, v_warm);
    const auto theta = classify_threshold(v_warm, params.gamma, params.rho, xi);
    double zt;
    if (theta.kind == ThresholdKind::interior) {
      auto r = power_iterate(theta.value, xi, params.grid_n, 1e-10,
                             have_pi_warm ? &pi_warm : nullptr, 20000);
      pi_warm = std::move(r.pi);
      have_pi_warm = true;
      zt = pi_warm.mean();
    } else {
      zt = z_of_theta(theta, xi, params.grid_n);
    }
    ++evals;
    return {zt - z, theta};
  };

  double lo = bracket_lo, hi = bracket_hi;
  Eval elo = eval_h(lo), ehi = eval_h(hi);

  StationarySolution sol;
  if (elo.h < 0.0 || ehi.h > 0.0) {
    // no sign change on the bracket: report the better endpoint, unconverged
    const bool pick_lo = std::abs(elo.h) <= std::abs(ehi.h);
    sol.z_hat = pick_lo ? lo : hi;
    sol.theta_hat = pick_lo ? elo.theta : ehi.theta;
    sol.residual = std::abs(pick_lo ? elo.h : ehi.h);
    sol.converged = sol.residual <= tol;
    sol.v = solve_stationary_value(sol.z_hat, params, xi, 1e-10, v_warm);
    sol.pi_hat = stationary_distribution(sol.theta_hat, xi, params.grid_n, 1e-10,
                                         have_pi_warm ? &pi_warm : nullptr);
    sol.evaluations = evals;
    return sol;
  }

  double z_best = std::abs(elo.h) <= std::abs(ehi.h) ? lo : hi;
  double h_best = std::abs(elo.h) <= std::abs(ehi.h) ? elo.h : ehi.h;
  ThresholdDescriptor theta_best = std::abs(elo.h) <= std::abs(ehi.h) ? elo.theta : ehi.theta;

  while (hi - lo > 1e-10) {
    const double mid = 0.5 * (lo + hi);
    const Eval em = eval_h(mid);
    if (std::abs(em.h) < std::abs(h_best)) {
      h_best = em.h;
      z_best = mid;
      theta_best = em.theta;
    }
    if (em.h >= 0.0) lo = mid;
    else hi = mid;
    if (std::abs(em.h) <= tol * 1e-3) break;  // already far below the target
  }

  sol.z_hat = z_best;
  sol.theta_hat = theta_best;
  sol.residual = std::abs(h_best);
  sol.converged = sol.residual <= tol;
  sol.v = solve_stationary_value(sol.z_hat, params, xi, 1e-10, v_warm);
  sol.pi_hat = stationary_distribution(sol.theta_hat, xi, params.grid_n, 1e-10,
                                       have_pi_warm ? &pi_warm : nullptr);
  sol.evaluations = evals;
  return sol;
}

UniquenessReport uniqueness_probe(const ModelParams& params, const XiSpec& xi, int n_scan) {
  if (n_scan < 3) throw std::invalid_argument("uniqueness_probe: n_scan too small");
  UniquenessReport rep;
  rep.positive_externalities = params.cost.is_product() &&
                               params.cost.r2().strictly_positive() &&
                               params.cost.r2().strictly_increasing();

  std::vector<double> v_warm;
  GridMeasure pi_warm;
  bool have_pi_warm = false;
  rep.z_grid.resize(n_scan);
  rep.h_values.resize(n_scan);
  rep.thetas.resize(n_scan);
  for (int k = 0; k < n_scan; ++k) {
    const double z = static_cast<double>(k) / (n_scan - 1);
    v_warm = solve_stationary_value(z, params, xi, 1e-10, v_warm);
    const auto theta = classify_threshold(v_warm, params.gamma, params.rho, xi);
    rep.z_grid[k] = z;
    rep.thetas[k] = theta;
    if (theta.kind == ThresholdKind::interior) {
      auto r = power_iterate(theta.value, xi, params.grid_n, 1e-10,
                             have_pi_warm ? &pi_warm : nullptr, 20000);
      pi_warm = std::move(r.pi);
      have_pi_warm = true;
      rep.h_values[k] = pi_warm.mean() - z;
    } else {
      rep.h_values[k] = z_of_theta(theta, xi, params.grid_n) - z;
    }
  }

  constexpr double kZeroTol = 1e-9;
  int prev_sign = 0;
  for (int k = 0; k < n_scan; ++k) {
    const double h = rep.h_values[k];
    if (std::abs(h) <= kZeroTol) {
      rep.near_roots.push_back(rep.z_grid[k]);
      continue;
    }
    const int s = h > 0.0 ? 1 : -1;
    if (prev_sign != 0 && s != prev_sign) {
      ++rep.sign_changes;
      rep.near_roots.push_back(0.5 * (rep.z_grid[k - 1] + rep.z_grid[k]));
    }
    prev_sign = s;
  }

  if (rep.sign_changes > 1 && rep.positive_externalities)
    throw std::logic_error(
        "uniqueness_probe: multiple sign changes despite positive externalities");
  return rep;
}

ErgodicityReport ergodicity_report(const ThresholdDescriptor& theta, const XiSpec& xi,
                                   int grid_n, int horizon, std::span<const double> initials,
                                   double pi_tol) {
  if (theta.kind != ThresholdKind::interior)
    throw std::invalid_argument("ergodicity_report: interior threshold required");
  if (horizon < 3) throw std::invalid_argument("ergodicity_report: horizon too short");

  const GridMeasure pi = stationary_distribution(theta, xi, grid_n, pi_tol);
  ErgodicityReport rep;
  rep.initials.assign(initials.begin(), initials.end());
  rep.tv_series.resize(initials.size());

  for (std::size_t i = 0; i < initials.size(); ++i) {
    GridMeasure mu = GridMeasure::point_mass(grid_n, initials[i]);
    auto& series = rep.tv_series[i];
    series.reserve(horizon + 1);
    series.push_back(tv_distance(mu, pi));
    for (int t = 1; t <= horizon; ++t) {
      mu = push_threshold(mu, xi, theta.value);
      series.push_back(tv_distance(mu, pi));
    }
  }

  // least squares of log(sup_i TV_i(t)) on t, past a short burn-in
  constexpr int kBurnIn = 2;
  constexpr double kFloor = 1e-13;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int npts = 0;
  for (int t = kBurnIn; t <= horizon; ++t) {
    double sup = 0.0;
    for (const auto& s : rep.tv_series) sup = std::max(sup, s[t]);
    if (sup <= kFloor) break;
    const double y = std::log(sup);
    sx += t; sy += y; sxx += static_cast<double>(t) * t; sxy += t * y;
    ++npts;
  }
  if (npts >= 3) {
    const double denom = npts * sxx - sx * sx;
    if (denom > 0.0) {
      const double slope = (npts * sxy - sx * sy) / denom;
      const double intercept = (sy - slope * sx) / npts;
      rep.fitted_r = std::exp(slope);
      rep.fitted_k = std::exp(intercept);
      rep.fit_ok = rep.fitted_r < 1.0 && rep.fitted_r > 0.0;
    }
  }
  return rep;
}

}  // namespace mfg
