#pragma once

#include <cstdint>

#include "mfg/xi.hpp"

namespace mfg {

/// Cycle-based estimate of the stationary mean under an interior threshold.
/// One cycle runs the margin chain Y from 1 down to the first time it is at
/// most lambda = 1 - theta; the stationary mean of the state is
/// 1 - E[S_tau] / (1 + E[tau]).
struct RegenEstimate {
  double theta = 0.0;
  double lambda = 0.0;
  long n_cycles = 0;
  double mean_tau = 0.0;
  double mean_s = 0.0;
  double z_est = 0.0;
  double se_z = 0.0;     // batch means over 100 batches
  double se_tau = 0.0;
  double alpha = 0.0;    // 1 - (sample mean of the ξ draws)
};

RegenEstimate regen_estimate(double theta, const XiSpec& xi, long n_cycles, std::uint64_t seed);

struct PathEstimate {
  double mean = 0.0;
  double se = 0.0;       // batch means over 100 batches
};

/// Time average of one long trajectory of the threshold-controlled chain;
/// an estimate of the stationary mean independent of the cycle route.
PathEstimate path_average(double theta, const XiSpec& xi, long horizon, std::uint64_t seed,
                          double x0 = 0.0);

double long_run_mean_by_path(double theta, const XiSpec& xi, long horizon, std::uint64_t seed,
                             double x0 = 0.0);

}  // namespace mfg
