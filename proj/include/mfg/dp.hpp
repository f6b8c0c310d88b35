#pragma once

#include <span>
#include <vector>

#include "mfg/cost.hpp"
#include "mfg/measure.hpp"
#include "mfg/xi.hpp"

namespace mfg {

enum class ThresholdKind { always_a1, interior, boundary, always_a0 };

const char* to_string(ThresholdKind k);

/// Per-time policy descriptor. `value` is 0 for always_a1, the root for
/// interior, and 1 for boundary; always_a0 stands for the formal 1+ and its
/// value field is 1.
struct ThresholdDescriptor {
  ThresholdKind kind = ThresholdKind::always_a0;
  double value = 1.0;

  static ThresholdDescriptor always_a1() { return {ThresholdKind::always_a1, 0.0}; }
  static ThresholdDescriptor interior(double theta) { return {ThresholdKind::interior, theta}; }
  static ThresholdDescriptor boundary() { return {ThresholdKind::boundary, 1.0}; }
  static ThresholdDescriptor always_a0() { return {ThresholdKind::always_a0, 1.0}; }

  /// True when the policy takes the resetting action at state x.
  bool acts(double x) const {
    switch (kind) {
      case ThresholdKind::always_a1: return true;
      case ThresholdKind::interior:
      case ThresholdKind::boundary: return x >= value;
      case ThresholdKind::always_a0: return false;
    }
    return false;
  }
};

/// Scenario order on policies: 0 < interior thresholds < 1 < 1+.
bool descriptor_leq(const ThresholdDescriptor& a, const ThresholdDescriptor& b);

/// Thresholds for t = 0..T-1; the terminal action is pinned to a_0.
struct PolicySchedule {
  std::vector<ThresholdDescriptor> steps;

  int horizon() const { return static_cast<int>(steps.size()); }
  /// True when no pre-terminal step resets at arbitrarily small states
  /// (no always_a1 step and no interior threshold at or below c).
  bool uniformly_positive(double c = 0.0) const;
};

/// Value function and kernel averages on the grid, t = 0..T.
struct ValueTable {
  int grid_n = 0;
  int horizon = 0;
  std::vector<std::vector<double>> values;    // values[t] = V(t, .)
  std::vector<std::vector<double>> g_values;  // g_values[t] = ∫ V(t,y) Q0(dy|.)
};

/// G(x) = ∫ v_next(y) Q0(dy|x) at every grid node of v_next.
std::vector<double> g_function(std::span<const double> v_next, const XiSpec& xi);

struct BackstepResult {
  std::vector<double> v;        // V(t, .)
  std::vector<double> g_next;   // G built from v_next
  ThresholdDescriptor desc;
};

/// One backward step of the dynamic program at mean-field value z_t.
BackstepResult backstep(std::span<const double> v_next, double z_t,
                        const ModelParams& params, const XiSpec& xi);

/// Policy classification from a continuation value function: compares
/// rho*G(x) against rho*v_next(0) + gamma_eff across the state range and
/// locates the interior root by bisection when both actions are live.
ThresholdDescriptor classify_threshold(std::span<const double> v_next, double gamma_eff,
                                       double rho, const XiSpec& xi);

struct DpSolution {
  ValueTable table;
  PolicySchedule schedule;
};

/// Backward recursion for a fixed mean-field path (z_path has T+1 entries).
DpSolution solve_dp(std::span<const double> z_path, const ModelParams& params, const XiSpec& xi);

/// Expected discounted cost of running `schedule` from mu0 against z_path.
double evaluate_policy_cost(const PolicySchedule& schedule, std::span<const double> z_path,
                            const GridMeasure& mu0, const ModelParams& params, const XiSpec& xi);

}  // namespace mfg
