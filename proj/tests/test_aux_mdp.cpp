#include <doctest.h>

#include <cmath>

#include "mfg/aux_mdp.hpp"
#include "mfg/grid.hpp"
#include "mfg/kernel.hpp"
#include "mfg/kernels.hpp"
#include "mfg/reset_mdp.hpp"
#include "mfg/stationary.hpp"
#include "test_support.hpp"

using namespace mfg;

namespace {
constexpr int kN = 501;
const double kRho = 0.9;
}  // namespace

TEST_CASE("theta_of_r: analytic regimes at the extremes") {
  const auto xi = XiSpec::uniform(kN);
  const auto r1 = ScalarFn::affine(0.0, 1.0);
  const double c_r1 = 0.5;  // E xi - R1(0)

  // above rho R1(1)/(1-rho): never reset
  CHECK(theta_of_r(kRho / (1.0 - kRho) + 0.5, r1, xi, kRho, kN).kind ==
        ThresholdKind::always_a0);
  // below rho (1-rho) C_R1: always reset
  CHECK(theta_of_r(0.5 * kRho * (1.0 - kRho) * c_r1, r1, xi, kRho, kN).kind ==
        ThresholdKind::always_a1);
  CHECK_THROWS_AS(theta_of_r(0.0, r1, xi, kRho, kN), std::domain_error);
}

TEST_CASE("r_bounds: ordering, analytic envelopes and edge classifications") {
  const auto xi = XiSpec::uniform(kN);
  const auto r1 = ScalarFn::affine(0.0, 1.0);
  const auto rb = r_bounds(r1, xi, kRho, kN, 1e-9);

  CHECK(rb.c_r1 == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(rb.r_low > 0.0);
  CHECK(rb.r_low < rb.r_high);
  CHECK(rb.r_low >= kRho * (1.0 - kRho) * rb.c_r1 - 1e-8);
  CHECK(rb.r_high <= kRho * 1.0 / (1.0 - kRho) + 1e-8);

  // for this family the reset-region algebra gives r_low = rho E xi exactly
  CHECK(rb.r_low == doctest::Approx(kRho * 0.5).epsilon(1e-6));

  const auto d_lo = theta_of_r(rb.r_low, r1, xi, kRho, kN);
  const double v_lo = d_lo.kind == ThresholdKind::always_a1 ? 0.0 : d_lo.value;
  CHECK(v_lo <= 1e-6);
  const auto d_hi = theta_of_r(rb.r_high, r1, xi, kRho, kN);
  const double v_hi = d_hi.kind == ThresholdKind::always_a1 ? 0.0 : d_hi.value;
  CHECK(v_hi >= 1.0 - 1e-6);
}

TEST_CASE("theta(r): region structure and strict growth on the interior interval") {
  const auto xi = XiSpec::beta(2, 2, kN);
  const auto r1 = ScalarFn::power(0.8, 2.0, 0.2);
  const auto rb = r_bounds(r1, xi, kRho, kN, 1e-9);

  for (double f : {0.15, 0.5, 0.85}) {
    CHECK(theta_of_r(f * rb.r_low, r1, xi, kRho, kN).kind == ThresholdKind::always_a1);
    CHECK(theta_of_r(rb.r_high * (1.0 + f), r1, xi, kRho, kN).kind == ThresholdKind::always_a0);
  }

  double prev = 0.0;
  for (int k = 1; k <= 9; ++k) {
    const double r = rb.r_low + (rb.r_high - rb.r_low) * k / 10.0;
    const auto d = theta_of_r(r, r1, xi, kRho, kN);
    CAPTURE(r);
    REQUIRE(d.kind == ThresholdKind::interior);
    CHECK(d.value > prev);
    prev = d.value;
  }
  CHECK(prev < 1.0);
}

TEST_CASE("value iteration is warm-start independent") {
  const auto xi = XiSpec::uniform(kN);
  const Grid g(kN);
  std::vector<double> stage(kN);
  for (int i = 0; i < kN; ++i) stage[i] = 0.3 + 0.7 * g.node(i);
  const double r = 0.8;
  const auto cold = reset_value_iteration(stage, r, kRho, xi, 1e-11);
  std::vector<double> junk(kN);
  for (int i = 0; i < kN; ++i) junk[i] = 5.0 * std::sin(0.1 * i) + 3.0;
  const auto warm = reset_value_iteration(stage, r, kRho, xi, 1e-11, junk);
  const double diff = simd::scalar_kernels().sup_abs_diff(cold.data(), warm.data(), kN);
  CHECK(diff <= 5e-11);
}

TEST_CASE("threshold_of_z reduces to theta_of_r through gamma / R2(z)") {
  const auto xi = XiSpec::uniform(kN);
  ModelParams p;
  p.rho = kRho;
  p.gamma = 1.0;
  p.grid_n = kN;
  p.cost = CostFn::product(ScalarFn::affine(0.0, 1.0), ScalarFn::affine(1.0, 1.0));
  for (double z : {0.0, 0.3, 0.8}) {
    CAPTURE(z);
    const auto via_z = threshold_of_z(z, p, xi);
    const auto via_r = theta_of_r(p.gamma / p.cost.r2()(z), p.cost.r1(), xi, kRho, kN);
    CHECK(via_z.kind == via_r.kind);
    if (via_z.kind == ThresholdKind::interior)
      CHECK(via_z.value == doctest::Approx(via_r.value).epsilon(1e-6));
  }
}
