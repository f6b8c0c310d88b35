#pragma once

#include "mfg/xi.hpp"

namespace mfg::simd {

/// Inner-loop kernels behind the quadrature and measure-transfer operators.
/// `scalar` is the reference; the AVX2 variant is selected at runtime when
/// the CPU supports it and must agree with the reference to rounding noise
/// (the equivalence suite pins the tolerance).
struct Kernels {
  const char* name;

  /// sum_j wf[j] * lerp(table[0..n), x + u[j]*(1-x))
  double (*expectation)(const double* table, int n, double x,
                        const double* u, const double* wf, int m);

  /// sum_i coef[i] * F((p - xs[i]) * inv1mx[i]) over i in [0, m)
  double (*cdf_row)(const CdfCtx& cdf, const double* xs, const double* coef,
                    const double* inv1mx, int m, double p);

  /// max_i |a[i] - b[i]|
  double (*sup_abs_diff)(const double* a, const double* b, int n);

  /// sum_i w[i] * v[i]
  double (*weighted_sum)(const double* w, const double* v, int n);

  /// sum_i w[i] * |a[i] - b[i]|
  double (*weighted_abs_diff)(const double* w, const double* a, const double* b, int n);
};

const Kernels& scalar_kernels();

/// AVX2+FMA kernels, or nullptr when the build or the CPU lacks support.
const Kernels* avx2_kernels();

/// Runtime selection: AVX2 when available, else scalar. The MFG_KERNELS
/// environment variable ("scalar" or "avx2") overrides.
const Kernels& active_kernels();

}  // namespace mfg::simd
