#include <immintrin.h>

#include <cmath>

#include "mfg/kernels.hpp"

// Compiled with -mavx2 -mfma; callers reach this TU only after the runtime
// CPU check in kernels_dispatch.cpp.

namespace mfg::simd {

namespace {

inline double hsum(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(lo, _mm_unpackhi_pd(lo, lo)));
}

inline double hmax(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_max_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_max_sd(lo, _mm_unpackhi_pd(lo, lo)));
}

double expectation_avx2(const double* table, int n, double x,
                        const double* u, const double* wf, int m) {
  const double margin = 1.0 - x;
  const double scale = n - 1;
  const __m256d vx = _mm256_set1_pd(x);
  const __m256d vmargin = _mm256_set1_pd(margin);
  const __m256d vscale = _mm256_set1_pd(scale);
  const __m256d vzero = _mm256_setzero_pd();
  const __m128i vimax = _mm_set1_epi32(n - 2);
  __m256d acc = _mm256_setzero_pd();
  int j = 0;
  for (; j + 4 <= m; j += 4) {
    const __m256d vu = _mm256_loadu_pd(u + j);
    const __m256d y = _mm256_fmadd_pd(vu, vmargin, vx);
    __m256d pos = _mm256_mul_pd(y, vscale);
    pos = _mm256_max_pd(pos, vzero);
    pos = _mm256_min_pd(pos, vscale);
    __m128i idx = _mm256_cvttpd_epi32(pos);
    idx = _mm_min_epi32(idx, vimax);
    const __m256d frac = _mm256_sub_pd(pos, _mm256_cvtepi32_pd(idx));
    const __m256d t0 = _mm256_i32gather_pd(table, idx, 8);
    const __m256d t1 = _mm256_i32gather_pd(table + 1, idx, 8);
    const __m256d val = _mm256_fmadd_pd(frac, _mm256_sub_pd(t1, t0), t0);
    acc = _mm256_fmadd_pd(_mm256_loadu_pd(wf + j), val, acc);
  }
  double total = hsum(acc);
  for (; j < m; ++j) {
    double pos = (x + u[j] * margin) * scale;
    if (pos < 0.0) pos = 0.0;
    if (pos > scale) pos = scale;
    int i = static_cast<int>(pos);
    if (i > n - 2) i = n - 2;
    const double frac = pos - i;
    total += wf[j] * (table[i] + frac * (table[i + 1] - table[i]));
  }
  return total;
}

double cdf_row_linear(const double* xs, const double* coef, const double* inv1mx,
                      int m, double p) {
  const __m256d vp = _mm256_set1_pd(p);
  const __m256d vzero = _mm256_setzero_pd();
  const __m256d vone = _mm256_set1_pd(1.0);
  __m256d acc = _mm256_setzero_pd();
  int i = 0;
  for (; i + 4 <= m; i += 4) {
    __m256d t = _mm256_mul_pd(_mm256_sub_pd(vp, _mm256_loadu_pd(xs + i)),
                              _mm256_loadu_pd(inv1mx + i));
    t = _mm256_min_pd(_mm256_max_pd(t, vzero), vone);
    acc = _mm256_fmadd_pd(_mm256_loadu_pd(coef + i), t, acc);
  }
  double total = hsum(acc);
  for (; i < m; ++i) {
    double t = (p - xs[i]) * inv1mx[i];
    if (t < 0.0) t = 0.0;
    if (t > 1.0) t = 1.0;
    total += coef[i] * t;
  }
  return total;
}

double cdf_row_poly(const CdfCtx& cdf, const double* xs, const double* coef,
                    const double* inv1mx, int m, double p) {
  const __m256d vp = _mm256_set1_pd(p);
  const __m256d vzero = _mm256_setzero_pd();
  const __m256d vone = _mm256_set1_pd(1.0);
  __m256d acc = _mm256_setzero_pd();
  int i = 0;
  for (; i + 4 <= m; i += 4) {
    const __m256d traw = _mm256_mul_pd(_mm256_sub_pd(vp, _mm256_loadu_pd(xs + i)),
                                       _mm256_loadu_pd(inv1mx + i));
    const __m256d t = _mm256_min_pd(_mm256_max_pd(traw, vzero), vone);
    __m256d f = _mm256_set1_pd(cdf.coeffs[0]);
    for (int k = 1; k < cdf.ncoeff; ++k)
      f = _mm256_fmadd_pd(f, t, _mm256_set1_pd(cdf.coeffs[k]));
    // exact endpoint values, as in the scalar reference
    f = _mm256_blendv_pd(f, vzero, _mm256_cmp_pd(traw, vzero, _CMP_LE_OQ));
    f = _mm256_blendv_pd(f, vone, _mm256_cmp_pd(traw, vone, _CMP_GE_OQ));
    acc = _mm256_fmadd_pd(_mm256_loadu_pd(coef + i), f, acc);
  }
  double total = hsum(acc);
  for (; i < m; ++i) {
    const double t = (p - xs[i]) * inv1mx[i];
    total += coef[i] * cdf_ctx_eval(cdf, t);
  }
  return total;
}

double cdf_row_avx2(const CdfCtx& cdf, const double* xs, const double* coef,
                    const double* inv1mx, int m, double p) {
  switch (cdf.kind) {
    case CdfCtx::Kind::linear:
      return cdf_row_linear(xs, coef, inv1mx, m, p);
    case CdfCtx::Kind::poly:
      return cdf_row_poly(cdf, xs, coef, inv1mx, m, p);
    case CdfCtx::Kind::generic:
      break;
  }
  // No vector form for the generic callback; match the reference exactly.
  double acc = 0.0;
  for (int i = 0; i < m; ++i) {
    const double t = (p - xs[i]) * inv1mx[i];
    acc += coef[i] * cdf_ctx_eval(cdf, t);
  }
  return acc;
}

double sup_abs_diff_avx2(const double* a, const double* b, int n) {
  const __m256d signmask = _mm256_set1_pd(-0.0);
  __m256d best = _mm256_setzero_pd();
  int i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i));
    best = _mm256_max_pd(best, _mm256_andnot_pd(signmask, d));
  }
  double m = hmax(best);
  for (; i < n; ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

double weighted_sum_avx2(const double* w, const double* v, int n) {
  __m256d acc = _mm256_setzero_pd();
  int i = 0;
  for (; i + 4 <= n; i += 4)
    acc = _mm256_fmadd_pd(_mm256_loadu_pd(w + i), _mm256_loadu_pd(v + i), acc);
  double total = hsum(acc);
  for (; i < n; ++i) total += w[i] * v[i];
  return total;
}

double weighted_abs_diff_avx2(const double* w, const double* a, const double* b, int n) {
  const __m256d signmask = _mm256_set1_pd(-0.0);
  __m256d acc = _mm256_setzero_pd();
  int i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i));
    acc = _mm256_fmadd_pd(_mm256_loadu_pd(w + i), _mm256_andnot_pd(signmask, d), acc);
  }
  double total = hsum(acc);
  for (; i < n; ++i) total += w[i] * std::abs(a[i] - b[i]);
  return total;
}

}  // namespace

const Kernels& avx2_kernels_impl() {
  static const Kernels k{
      "avx2",
      &expectation_avx2,
      &cdf_row_avx2,
      &sup_abs_diff_avx2,
      &weighted_sum_avx2,
      &weighted_abs_diff_avx2,
  };
  return k;
}

}  // namespace mfg::simd
