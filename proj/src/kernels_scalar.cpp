#include <cmath>

#include "mfg/kernels.hpp"

namespace mfg::simd {

namespace {

double expectation_scalar(const double* table, int n, double x,
                          const double* u, const double* wf, int m) {
  const double margin = 1.0 - x;
  const double scale = n - 1;
  double acc = 0.0;
  for (int j = 0; j < m; ++j) {
    double y = x + u[j] * margin;
    double pos = y * scale;
    if (pos < 0.0) pos = 0.0;
    if (pos > scale) pos = scale;
    int i = static_cast<int>(pos);
    if (i > n - 2) i = n - 2;
    const double frac = pos - i;
    const double val = table[i] + frac * (table[i + 1] - table[i]);
    acc += wf[j] * val;
  }
  return acc;
}

double cdf_row_scalar(const CdfCtx& cdf, const double* xs, const double* coef,
                      const double* inv1mx, int m, double p) {
  double acc = 0.0;
  for (int i = 0; i < m; ++i) {
    const double t = (p - xs[i]) * inv1mx[i];
    acc += coef[i] * cdf_ctx_eval(cdf, t);
  }
  return acc;
}

double sup_abs_diff_scalar(const double* a, const double* b, int n) {
  double best = 0.0;
  for (int i = 0; i < n; ++i) {
    const double d = std::abs(a[i] - b[i]);
    if (d > best) best = d;
  }
  return best;
}

double weighted_sum_scalar(const double* w, const double* v, int n) {
  double acc = 0.0;
  for (int i = 0; i < n; ++i) acc += w[i] * v[i];
  return acc;
}

double weighted_abs_diff_scalar(const double* w, const double* a, const double* b, int n) {
  double acc = 0.0;
  for (int i = 0; i < n; ++i) acc += w[i] * std::abs(a[i] - b[i]);
  return acc;
}

}  // namespace

const Kernels& scalar_kernels() {
  static const Kernels k{
      "scalar",
      &expectation_scalar,
      &cdf_row_scalar,
      &sup_abs_diff_scalar,
      &weighted_sum_scalar,
      &weighted_abs_diff_scalar,
  };
  return k;
}

}  // namespace mfg::simd
