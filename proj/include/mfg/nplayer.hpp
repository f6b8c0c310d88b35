#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "mfg/mean_field.hpp"

namespace mfg {

/// Finite-population game run under a common threshold schedule.
/// Paths, the empirical mean and realized costs come from replication 0
/// (the mean is the exact average of the stored paths); mean_sup_dev
/// aggregates max_t |x^(N)_t - z_ref_t| over all replications when a
/// reference path is supplied.
struct NPlayerRun {
  int n_players = 0;
  std::uint64_t seed = 0;
  int replications = 0;
  std::vector<std::vector<double>> paths;   // [player][t]
  std::vector<double> empirical_mean;       // [t]
  std::vector<double> realized_costs;       // [player]
  double mean_sup_dev = 0.0;
};

NPlayerRun simulate_game(int n_players, const PolicySchedule& schedule, const GridMeasure& mu0,
                         const XiSpec& xi, const ModelParams& params, std::uint64_t seed,
                         int replications = 1, std::span<const double> z_ref = {});

struct NashGapEstimate {
  double eps = 0.0;
  double se = 0.0;
  std::vector<double> j_equilibrium;  // per replication
  std::vector<double> j_deviation;
  std::vector<double> gap;
};

/// Empirical one-sided equilibrium gap: player 1 keeps the equilibrium
/// schedule in one arm and, in the other, best-responds (by a fresh dynamic
/// program) to the realized empirical-mean path of the other N-1 players,
/// with common innovations across both arms. The reported eps lower-bounds
/// the improvement available to the strongest Markov deviation.
NashGapEstimate epsilon_nash_gap(int n_players, const MeanFieldSolution& solution,
                                 const GridMeasure& mu0, const XiSpec& xi,
                                 const ModelParams& params, std::uint64_t seed,
                                 int replications);

}  // namespace mfg
