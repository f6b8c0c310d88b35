#pragma once

#include <span>
#include <string>
#include <vector>

#include "mfg/rng.hpp"

namespace mfg {

enum class XiFamily { uniform, beta, truncated_exp };

/// Batched-CDF descriptor consumed by the measure-transfer kernels.
/// `poly` evaluates a monomial polynomial by Horner (coefficients highest
/// degree first); `generic` goes through a scalar callback. Arguments are
/// clamped: F(t) = 0 for t <= 0 and 1 for t >= 1.
struct CdfCtx {
  enum class Kind { linear, poly, generic };
  Kind kind = Kind::linear;
  const double* coeffs = nullptr;
  int ncoeff = 0;
  double (*fn)(const void*, double) = nullptr;
  const void* fn_ctx = nullptr;
};

inline double cdf_ctx_eval(const CdfCtx& c, double t) {
  if (t <= 0.0) return 0.0;
  if (t >= 1.0) return 1.0;
  switch (c.kind) {
    case CdfCtx::Kind::linear:
      return t;
    case CdfCtx::Kind::poly: {
      double acc = c.coeffs[0];
      for (int k = 1; k < c.ncoeff; ++k) acc = acc * t + c.coeffs[k];
      return acc;
    }
    case CdfCtx::Kind::generic:
      return c.fn(c.fn_ctx, t);
  }
  return 0.0;
}

/// The innovation distribution ξ on [0,1]. Families are restricted to ones
/// with a closed-form density and CDF; the density must be bounded, so beta
/// shapes below 1 are rejected. Construction validates parameters; the
/// evaluation functions assume a valid spec.
///
/// Every spec carries a quadrature table (trapezoid against the density on a
/// dedicated ξ-grid, weights normalized so the constant 1 integrates to 1
/// exactly) used for kernel expectations.
class XiSpec {
 public:
  static constexpr int kDefaultQuadN = 2001;

  static XiSpec uniform(int quad_n = kDefaultQuadN);
  static XiSpec beta(double a, double b, int quad_n = kDefaultQuadN);
  static XiSpec truncated_exp(double rate, int quad_n = kDefaultQuadN);

  XiFamily family() const { return family_; }
  double param_a() const { return a_; }
  double param_b() const { return b_; }
  double rate() const { return rate_; }
  int quad_n() const { return static_cast<int>(quad_u_.size()); }

  double density(double u) const;
  double cdf(double u) const;
  double mean() const;

  /// One draw; deterministic given the stream state.
  double sample(RngStream& rng) const;

  /// Quadrature nodes on [0,1] and matching normalized weights.
  std::span<const double> quad_nodes() const { return quad_u_; }
  std::span<const double> quad_weights() const { return quad_w_; }

  /// Fast-path CDF descriptor; valid while this spec is alive.
  CdfCtx cdf_ctx() const;

  std::string describe() const;

 private:
  XiSpec() = default;
  void build_tables(int quad_n);

  XiFamily family_ = XiFamily::uniform;
  double a_ = 0.0, b_ = 0.0;   // beta shapes
  double rate_ = 0.0;          // truncated exponential rate
  std::vector<double> quad_u_, quad_w_;
  std::vector<double> cdf_poly_;  // highest degree first; empty if not poly
};

/// Regularized incomplete beta function I_x(a, b).
double incomplete_beta(double a, double b, double x);

}  // namespace mfg
