#include "mfg/xi.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "mfg/grid.hpp"

namespace mfg {

namespace {

bool near_integer(double x) { return std::abs(x - std::round(x)) < 1e-12; }

double binom(int n, int k) {
  double r = 1.0;
  for (int j = 1; j <= k; ++j) r *= static_cast<double>(n - k + j) / j;
  return r;
}

// Continued fraction for the incomplete beta (Lentz's method).
double betacf(double a, double b, double x) {
  constexpr int kMaxIter = 300;
  constexpr double kEps = 3e-16;
  constexpr double kFpMin = 1e-300;
  const double qab = a + b, qap = a + 1.0, qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::abs(d) < kFpMin) d = kFpMin;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIter; ++m) {
    const int m2 = 2 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kFpMin) d = kFpMin;
    c = 1.0 + aa / c;
    if (std::abs(c) < kFpMin) c = kFpMin;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kFpMin) d = kFpMin;
    c = 1.0 + aa / c;
    if (std::abs(c) < kFpMin) c = kFpMin;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < kEps) break;
  }
  return h;
}

double generic_cdf_thunk(const void* ctx, double t) {
  return static_cast<const XiSpec*>(ctx)->cdf(t);
}

double sample_gamma(double shape, RngStream& rng) {
  if (shape < 1.0) {
    const double g = sample_gamma(shape + 1.0, rng);
    double u;
    do {
      u = rng.uniform01();
    } while (u == 0.0);
    return g * std::pow(u, 1.0 / shape);
  }
  // Marsaglia-Tsang squeeze
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double x, v;
    do {
      x = rng.normal();
      v = 1.0 + c * x;
    } while (v <= 0.0);
    v = v * v * v;
    const double u = rng.uniform01();
    if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
    if (u > 0.0 && std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
  }
}

}  // namespace

double incomplete_beta(double a, double b, double x) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const double ln_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                          a * std::log(x) + b * std::log1p(-x);
  const double front = std::exp(ln_front);
  if (x < (a + 1.0) / (a + b + 2.0)) return front * betacf(a, b, x) / a;
  return 1.0 - front * betacf(b, a, 1.0 - x) / b;
}

XiSpec XiSpec::uniform(int quad_n) {
  XiSpec s;
  s.family_ = XiFamily::uniform;
  s.build_tables(quad_n);
  return s;
}

XiSpec XiSpec::beta(double a, double b, int quad_n) {
  if (!(a > 0.0) || !(b > 0.0)) throw std::invalid_argument("XiSpec::beta: shapes must be positive");
  if (a < 1.0 || b < 1.0)
    throw std::invalid_argument("XiSpec::beta: shapes below 1 give an unbounded density");
  XiSpec s;
  s.family_ = XiFamily::beta;
  s.a_ = a;
  s.b_ = b;
  if (near_integer(a) && near_integer(b) && a <= 16 && b <= 16) {
    // Monomial CDF coefficients: F(t) = sum_j K*C(b-1,j)*(-1)^j t^(a+j)/(a+j).
    const int ia = static_cast<int>(std::round(a));
    const int ib = static_cast<int>(std::round(b));
    const double lnB = std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b);
    const double K = std::exp(-lnB);
    const int deg = ia + ib - 1;
    std::vector<double> mono(deg + 1, 0.0);  // mono[k] multiplies t^k
    for (int j = 0; j <= ib - 1; ++j) {
      const double cj = K * binom(ib - 1, j) * ((j % 2) ? -1.0 : 1.0) / (ia + j);
      mono[ia + j] += cj;
    }
    s.cdf_poly_.assign(mono.rbegin(), mono.rend());  // highest degree first
    double f1 = 0.0;
    for (double c : s.cdf_poly_) f1 = f1 + c;  // F(1)
    if (std::abs(f1 - 1.0) > 1e-9) throw std::logic_error("XiSpec::beta: CDF polynomial failed sanity check");
  }
  s.build_tables(quad_n);
  return s;
}

XiSpec XiSpec::truncated_exp(double rate, int quad_n) {
  if (!(rate > 0.0)) throw std::invalid_argument("XiSpec::truncated_exp: rate must be positive");
  XiSpec s;
  s.family_ = XiFamily::truncated_exp;
  s.rate_ = rate;
  s.build_tables(quad_n);
  return s;
}

void XiSpec::build_tables(int quad_n) {
  if (quad_n < 2) throw std::invalid_argument("XiSpec: quadrature grid needs at least 2 nodes");
  const Grid g(quad_n);
  quad_u_ = g.nodes();
  quad_w_.resize(quad_n);
  const auto tw = g.trapezoid_weights();
  double total = 0.0;
  for (int j = 0; j < quad_n; ++j) {
    quad_w_[j] = tw[j] * density(quad_u_[j]);
    total += quad_w_[j];
  }
  // Normalize so the constant function integrates to exactly 1.
  for (double& w : quad_w_) w /= total;
}

double XiSpec::density(double u) const {
  if (u < 0.0 || u > 1.0) throw std::domain_error("XiSpec::density: argument outside [0,1]");
  switch (family_) {
    case XiFamily::uniform:
      return 1.0;
    case XiFamily::beta: {
      const double lnB = std::lgamma(a_) + std::lgamma(b_) - std::lgamma(a_ + b_);
      double p = 1.0;
      if (a_ != 1.0) p *= std::pow(u, a_ - 1.0);
      if (b_ != 1.0) p *= std::pow(1.0 - u, b_ - 1.0);
      return p * std::exp(-lnB);
    }
    case XiFamily::truncated_exp:
      return rate_ * std::exp(-rate_ * u) / (1.0 - std::exp(-rate_));
  }
  return 0.0;
}

double XiSpec::cdf(double u) const {
  if (u <= 0.0) return 0.0;
  if (u >= 1.0) return 1.0;
  switch (family_) {
    case XiFamily::uniform:
      return u;
    case XiFamily::beta: {
      if (!cdf_poly_.empty()) {
        double acc = cdf_poly_[0];
        for (std::size_t k = 1; k < cdf_poly_.size(); ++k) acc = acc * u + cdf_poly_[k];
        return acc;
      }
      return incomplete_beta(a_, b_, u);
    }
    case XiFamily::truncated_exp:
      return (1.0 - std::exp(-rate_ * u)) / (1.0 - std::exp(-rate_));
  }
  return 0.0;
}

double XiSpec::mean() const {
  switch (family_) {
    case XiFamily::uniform:
      return 0.5;
    case XiFamily::beta:
      return a_ / (a_ + b_);
    case XiFamily::truncated_exp: {
      const double e = std::exp(-rate_);
      return ((1.0 - e) / rate_ - e) / (1.0 - e);
    }
  }
  return 0.0;
}

double XiSpec::sample(RngStream& rng) const {
  switch (family_) {
    case XiFamily::uniform:
      return rng.uniform01();
    case XiFamily::beta: {
      const double g1 = sample_gamma(a_, rng);
      const double g2 = sample_gamma(b_, rng);
      return g1 / (g1 + g2);
    }
    case XiFamily::truncated_exp: {
      const double u = rng.uniform01();
      return -std::log1p(-u * (1.0 - std::exp(-rate_))) / rate_;
    }
  }
  return 0.0;
}

CdfCtx XiSpec::cdf_ctx() const {
  CdfCtx c;
  switch (family_) {
    case XiFamily::uniform:
      c.kind = CdfCtx::Kind::linear;
      break;
    case XiFamily::beta:
      if (!cdf_poly_.empty()) {
        c.kind = CdfCtx::Kind::poly;
        c.coeffs = cdf_poly_.data();
        c.ncoeff = static_cast<int>(cdf_poly_.size());
        break;
      }
      [[fallthrough]];
    case XiFamily::truncated_exp:
      c.kind = CdfCtx::Kind::generic;
      c.fn = &generic_cdf_thunk;
      c.fn_ctx = this;
      break;
  }
  return c;
}

std::string XiSpec::describe() const {
  char buf[64];
  switch (family_) {
    case XiFamily::uniform:
      return "uniform";
    case XiFamily::beta:
      std::snprintf(buf, sizeof buf, "beta(%g,%g)", a_, b_);
      return buf;
    case XiFamily::truncated_exp:
      std::snprintf(buf, sizeof buf, "truncated_exp(%g)", rate_);
      return buf;
  }
  return "?";
}

}  // namespace mfg
