#include "mfg/kernel.hpp"

#include <stdexcept>

#include "mfg/kernels.hpp"
#include "mfg/parallel.hpp"

namespace mfg {

double q0_next(double x, double u) {
  if (!(x >= 0.0 && x <= 1.0)) throw std::domain_error("q0_next: state outside [0,1]");
  if (!(u >= 0.0 && u <= 1.0)) throw std::domain_error("q0_next: innovation outside [0,1]");
  return x + (1.0 - x) * u;
}

double q0_expectation(const XiSpec& xi, double x, std::span<const double> h) {
  if (!(x >= 0.0 && x <= 1.0)) throw std::domain_error("q0_expectation: state outside [0,1]");
  if (h.size() < 2) throw std::invalid_argument("q0_expectation: grid function too small");
  const auto u = xi.quad_nodes();
  const auto w = xi.quad_weights();
  return simd::active_kernels().expectation(h.data(), static_cast<int>(h.size()), x,
                                            u.data(), w.data(), static_cast<int>(u.size()));
}

std::vector<double> q0_expectation_grid(const XiSpec& xi, std::span<const double> h) {
  const int n = static_cast<int>(h.size());
  if (n < 2) throw std::invalid_argument("q0_expectation_grid: grid function too small");
  const auto u = xi.quad_nodes();
  const auto w = xi.quad_weights();
  const auto& kern = simd::active_kernels();
  const int m = static_cast<int>(u.size());
  std::vector<double> out(n);
  parallel_for(0, n, [&](int i) {
    const double x = static_cast<double>(i) / (n - 1);
    out[i] = kern.expectation(h.data(), n, x, u.data(), w.data(), m);
  });
  return out;
}

}  // namespace mfg
