#include "mfg/regen.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "mfg/rng.hpp"

namespace mfg {

namespace {
constexpr long kCycleCap = 10000000;  // P(tau < infinity) = 1; a hit means ξ is broken
constexpr int kBatches = 100;

double batch_se(const std::vector<double>& batch_values) {
  const int b = static_cast<int>(batch_values.size());
  double mean = 0.0;
  for (double v : batch_values) mean += v;
  mean /= b;
  double ss = 0.0;
  for (double v : batch_values) ss += (v - mean) * (v - mean);
  return std::sqrt(ss / (b - 1.0) / b);
}
}  // namespace

RegenEstimate regen_estimate(double theta, const XiSpec& xi, long n_cycles, std::uint64_t seed) {
  if (!(theta > 0.0 && theta < 1.0))
    throw std::domain_error("regen_estimate: interior theta required");
  if (n_cycles < kBatches) throw std::invalid_argument("regen_estimate: too few cycles");

  const double lambda = 1.0 - theta;
  RngStream rng(seed);

  double sum_tau = 0.0, sum_s = 0.0, sum_xi = 0.0;
  long n_xi = 0;
  std::vector<double> batch_z(kBatches), batch_tau(kBatches);
  const long per_batch = n_cycles / kBatches;
  long cycle = 0;

  for (int b = 0; b < kBatches; ++b) {
    double b_tau = 0.0, b_s = 0.0;
    const long b_count = (b == kBatches - 1) ? n_cycles - per_batch * (kBatches - 1) : per_batch;
    for (long c = 0; c < b_count; ++c, ++cycle) {
      double y = 1.0;
      double s = 1.0;  // Y_0
      long tau = 0;
      do {
        const double draw = xi.sample(rng);
        sum_xi += draw;
        ++n_xi;
        y *= (1.0 - draw);
        s += y;
        ++tau;
        if (tau > kCycleCap) throw std::runtime_error("regen_estimate: cycle cap exceeded");
      } while (y > lambda);
      b_tau += tau;
      b_s += s;
    }
    batch_tau[b] = b_tau / b_count;
    batch_z[b] = 1.0 - (b_s / b_count) / (1.0 + b_tau / b_count);
    sum_tau += b_tau;
    sum_s += b_s;
  }

  RegenEstimate est;
  est.theta = theta;
  est.lambda = lambda;
  est.n_cycles = n_cycles;
  est.mean_tau = sum_tau / n_cycles;
  est.mean_s = sum_s / n_cycles;
  est.z_est = 1.0 - est.mean_s / (1.0 + est.mean_tau);
  est.se_z = batch_se(batch_z);
  est.se_tau = batch_se(batch_tau);
  est.alpha = 1.0 - sum_xi / n_xi;
  return est;
}

PathEstimate path_average(double theta, const XiSpec& xi, long horizon, std::uint64_t seed,
                          double x0) {
  if (!(theta > 0.0 && theta < 1.0))
    throw std::domain_error("path_average: interior theta required");
  if (horizon < kBatches) throw std::invalid_argument("path_average: horizon too short");

  RngStream rng(seed);
  double x = x0;
  std::vector<double> batch_mean(kBatches);
  const long per_batch = horizon / kBatches;
  long t = 0;
  for (int b = 0; b < kBatches; ++b) {
    const long b_count = (b == kBatches - 1) ? horizon - per_batch * (kBatches - 1) : per_batch;
    double acc = 0.0;
    for (long k = 0; k < b_count; ++k, ++t) {
      acc += x;
      if (x >= theta) x = 0.0;
      else x = x + (1.0 - x) * xi.sample(rng);
    }
    batch_mean[b] = acc / b_count;
  }
  double total = 0.0;
  for (int b = 0; b < kBatches; ++b) total += batch_mean[b] * ((b == kBatches - 1)
      ? horizon - per_batch * (kBatches - 1) : per_batch);
  PathEstimate est;
  est.mean = total / horizon;
  est.se = batch_se(batch_mean);
  return est;
}

double long_run_mean_by_path(double theta, const XiSpec& xi, long horizon, std::uint64_t seed,
                             double x0) {
  return path_average(theta, xi, horizon, seed, x0).mean;
}

}  // namespace mfg
