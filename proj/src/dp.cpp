#include "mfg/dp.hpp"

#include <cmath>
#include <stdexcept>

#include "mfg/grid.hpp"
#include "mfg/kernel.hpp"
#include "mfg/kernels.hpp"

namespace mfg {

namespace {
constexpr double kClassifyTol = 1e-12;   // relative slack at the case boundaries
constexpr double kBisectTolX = 1e-10;
}

const char* to_string(ThresholdKind k) {
  switch (k) {
    case ThresholdKind::always_a1: return "always_a1";
    case ThresholdKind::interior: return "interior";
    case ThresholdKind::boundary: return "boundary";
    case ThresholdKind::always_a0: return "always_a0";
  }
  return "?";
}

bool descriptor_leq(const ThresholdDescriptor& a, const ThresholdDescriptor& b) {
  const auto key = [](const ThresholdDescriptor& d) {
    return std::pair<double, int>(d.kind == ThresholdKind::always_a1 ? 0.0 : d.value,
                                  d.kind == ThresholdKind::always_a0 ? 1 : 0);
  };
  return key(a) <= key(b);
}

bool PolicySchedule::uniformly_positive(double c) const {
  for (const auto& d : steps) {
    if (d.kind == ThresholdKind::always_a1) return false;
    if (d.kind == ThresholdKind::interior && d.value <= c) return false;
  }
  return true;
}

std::vector<double> g_function(std::span<const double> v_next, const XiSpec& xi) {
  return q0_expectation_grid(xi, v_next);
}

ThresholdDescriptor classify_threshold(std::span<const double> v_next, double gamma_eff,
                                       double rho, const XiSpec& xi) {
  const double reset_rhs = rho * v_next[0] + gamma_eff;
  const double g0 = rho * q0_expectation(xi, 0.0, v_next);
  const double g1 = rho * q0_expectation(xi, 1.0, v_next);
  const double scale = std::max({1.0, std::abs(reset_rhs), std::abs(g1)});

  if (reset_rhs <= g0 + kClassifyTol * scale) return ThresholdDescriptor::always_a1();
  if (std::abs(reset_rhs - g1) <= kClassifyTol * scale) return ThresholdDescriptor::boundary();
  if (reset_rhs > g1) return ThresholdDescriptor::always_a0();

  // interior root of rho*G(x) = reset_rhs; G is strictly increasing
  if (!(g0 - reset_rhs < 0.0))
    throw std::logic_error("classify_threshold: lost bracketing at 0");
  double lo = 0.0, hi = 1.0;
  while (hi - lo > kBisectTolX) {
    const double mid = 0.5 * (lo + hi);
    const double fm = rho * q0_expectation(xi, mid, v_next) - reset_rhs;
    if (fm < 0.0) lo = mid;
    else hi = mid;
  }
  return ThresholdDescriptor::interior(0.5 * (lo + hi));
}

BackstepResult backstep(std::span<const double> v_next, double z_t,
                        const ModelParams& params, const XiSpec& xi) {
  const int n = static_cast<int>(v_next.size());
  BackstepResult out;
  out.g_next = g_function(v_next, xi);
  const auto stage = params.cost.grid_slice(z_t, n);
  const double reset_rhs = params.rho * v_next[0] + params.gamma;
  out.v.resize(n);
  for (int i = 0; i < n; ++i)
    out.v[i] = stage[i] + std::min(params.rho * out.g_next[i], reset_rhs);
  out.desc = classify_threshold(v_next, params.gamma, params.rho, xi);
  return out;
}

DpSolution solve_dp(std::span<const double> z_path, const ModelParams& params, const XiSpec& xi) {
  const int T = static_cast<int>(z_path.size()) - 1;
  if (T < 0) throw std::invalid_argument("solve_dp: empty mean-field path");
  if (T != params.horizon)
    throw std::invalid_argument("solve_dp: z_path length does not match params.horizon + 1");
  const int n = params.grid_n;

  DpSolution sol;
  sol.table.grid_n = n;
  sol.table.horizon = T;
  sol.table.values.assign(T + 1, {});
  sol.table.g_values.assign(T + 1, {});
  sol.schedule.steps.assign(std::max(T, 0), ThresholdDescriptor::always_a0());

  sol.table.values[T] = params.cost.grid_slice(z_path[T], n);
  for (int t = T - 1; t >= 0; --t) {
    auto step = backstep(sol.table.values[t + 1], z_path[t], params, xi);
    sol.table.values[t] = std::move(step.v);
    sol.table.g_values[t + 1] = std::move(step.g_next);
    sol.schedule.steps[t] = step.desc;
  }
  sol.table.g_values[0] = g_function(sol.table.values[0], xi);
  return sol;
}

double evaluate_policy_cost(const PolicySchedule& schedule, std::span<const double> z_path,
                            const GridMeasure& mu0, const ModelParams& params, const XiSpec& xi) {
  const int T = static_cast<int>(z_path.size()) - 1;
  if (schedule.horizon() != T)
    throw std::invalid_argument("evaluate_policy_cost: schedule length must be T");

  const auto& kern = simd::active_kernels();
  GridMeasure mu = mu0;
  const Grid g(mu.n());
  const auto tw = g.trapezoid_weights();

  double total = 0.0;
  double disc = 1.0;
  for (int t = 0; t <= T; ++t) {
    // ∫ R(x, z_t) dmu: atom at 0 plus the density part
    const auto stage = params.cost.grid_slice(z_path[t], mu.n());
    std::vector<double> weighted(mu.n());
    for (int i = 0; i < mu.n(); ++i) weighted[i] = tw[i] * stage[i];
    const double c = mu.atom0 * stage[0] +
                     kern.weighted_sum(weighted.data(), mu.density.data(), mu.n());

    if (t < T) {
      const auto& d = schedule.steps[t];
      double reset_mass = 0.0;
      switch (d.kind) {
        case ThresholdKind::always_a1: reset_mass = mu.mass(); break;
        case ThresholdKind::interior: reset_mass = mu.tail_mass(d.value); break;
        case ThresholdKind::boundary:
        case ThresholdKind::always_a0: reset_mass = 0.0; break;
      }
      total += disc * (c + params.gamma * reset_mass);
      switch (d.kind) {
        case ThresholdKind::always_a1: mu = GridMeasure::unit_atom0(mu.n()); break;
        case ThresholdKind::interior: mu = push_threshold(mu, xi, d.value); break;
        case ThresholdKind::boundary:
        case ThresholdKind::always_a0: mu = push_a0(mu, xi); break;
      }
    } else {
      total += disc * c;
    }
    disc *= params.rho;
  }
  return total;
}

}  // namespace mfg
