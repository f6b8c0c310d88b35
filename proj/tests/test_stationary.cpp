#include <doctest.h>

#include <cmath>

#include "mfg/kernel.hpp"
#include "mfg/kernels.hpp"
#include "mfg/stationary.hpp"
#include "test_support.hpp"

using namespace mfg;

namespace {

ModelParams demo_params(int n = 501, double gamma = 0.25, double rho = 0.9) {
  ModelParams p;
  p.rho = rho;
  p.gamma = gamma;
  p.grid_n = n;
  p.cost = CostFn::product(ScalarFn::affine(0.0, 1.0), ScalarFn::affine(1.0, 1.0));
  return p;
}

}  // namespace

TEST_CASE("stationary value: zero cost fixed point is zero") {
  auto p = demo_params(301);
  p.cost = CostFn::closure([](double, double) { return 0.0; });
  const auto v = solve_stationary_value(0.5, p, XiSpec::uniform(301));
  for (double x : v) CHECK(std::abs(x) < 1e-9);
}

TEST_CASE("stationary value: prior bounds and monotonicity") {
  const auto xi = XiSpec::beta(2, 2, 501);
  const auto p = demo_params(501, 0.4);
  for (double z : {0.0, 0.45, 1.0}) {
    CAPTURE(z);
    const auto v = solve_stationary_value(z, p, xi, 1e-10);
    const auto stage = p.cost.grid_slice(z, p.grid_n);
    const double max_r = stage.back();
    for (int i = 0; i < p.grid_n; ++i) {
      CHECK(v[i] >= stage[i] + p.rho * stage[0] / (1.0 - p.rho) - 1e-8);
      const double cap = std::min(max_r / (1.0 - p.rho),
                                  stage[i] + (p.gamma + p.rho * stage[0]) / (1.0 - p.rho));
      CHECK(v[i] <= cap + 1e-8);
      if (i) CHECK(v[i] >= v[i - 1] - 1e-12);
    }
    // Bellman residual at the returned fixed point
    const auto lv = stationary_bellman_apply(v, z, p, xi);
    for (int i = 0; i < p.grid_n; ++i) CHECK(std::abs(lv[i] - v[i]) <= 1e-10);
  }
}

TEST_CASE("the stationary operator is a rho-contraction on random pairs") {
  const auto xi = XiSpec::uniform(257);
  const auto p = demo_params(257, 0.3, 0.87);
  RngStream rng(17);
  const auto& kern = simd::scalar_kernels();
  for (int pair = 0; pair < 20; ++pair) {
    std::vector<double> g1(p.grid_n), g2(p.grid_n);
    for (int i = 0; i < p.grid_n; ++i) {
      g1[i] = 10.0 * rng.uniform01() - 5.0;
      g2[i] = 10.0 * rng.uniform01() - 5.0;
    }
    const auto l1 = stationary_bellman_apply(g1, 0.4, p, xi);
    const auto l2 = stationary_bellman_apply(g2, 0.4, p, xi);
    const double num = kern.sup_abs_diff(l1.data(), l2.data(), p.grid_n);
    const double den = kern.sup_abs_diff(g1.data(), g2.data(), p.grid_n);
    CHECK(num <= p.rho * den + 1e-12);
  }
}

TEST_CASE("threshold_of_z: analytic effort-cost regimes") {
  const auto xi = XiSpec::uniform(501);
  // product cost x * (1+z); C_R1 = E xi = 0.5
  SUBCASE("huge effort cost never resets") {
    auto p = demo_params(501);
    p.gamma = 0.9 * 1.0 / 0.1 * 2.0 + 1.0;  // gamma/R2(z) > rho R1(1)/(1-rho) for all z
    for (double z : {0.0, 0.5, 1.0})
      CHECK(threshold_of_z(z, p, xi).kind == ThresholdKind::always_a0);
  }
  SUBCASE("tiny effort cost always resets") {
    auto p = demo_params(501);
    p.gamma = 0.5 * 0.9 * 0.1 * 0.5;  // gamma/R2(z) < rho(1-rho) C_R1 for all z
    for (double z : {0.0, 0.5, 1.0})
      CHECK(threshold_of_z(z, p, xi).kind == ThresholdKind::always_a1);
  }
  SUBCASE("scenario ordering in z") {
    const auto p = demo_params(501, 0.6);
    const double zs[] = {0.0, 0.25, 0.5, 0.75, 1.0};
    for (int i = 0; i + 1 < 5; ++i) {
      const auto hi = threshold_of_z(zs[i + 1], p, xi);   // z1 = larger
      const auto lo = threshold_of_z(zs[i], p, xi);       // z2 = smaller
      CHECK(descriptor_leq(hi, lo));
    }
  }
}

TEST_CASE("stationary distribution: degenerate thresholds") {
  const auto xi = XiSpec::uniform(501);
  const auto at0 = stationary_distribution(ThresholdDescriptor::always_a1(), xi, 501);
  CHECK(at0.atom0 == 1.0);
  CHECK(z_of_theta(ThresholdDescriptor::always_a1(), xi, 501) == 0.0);

  const auto at1 = stationary_distribution(ThresholdDescriptor::always_a0(), xi, 501);
  CHECK(at1.mean() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(z_of_theta(ThresholdDescriptor::always_a0(), xi, 501) == 1.0);
  CHECK(z_of_theta(ThresholdDescriptor::boundary(), xi, 501) == 1.0);
}

TEST_CASE("pure drift absorbs at one: Monte Carlo confirmation") {
  // the never-act stationary law is the point mass at 1
  const auto xi = XiSpec::uniform(101);
  RngStream rng(314);
  double worst = 1.0;
  for (int path = 0; path < 200; ++path) {
    double x = 0.0;
    for (int t = 0; t < 80; ++t) x = x + (1.0 - x) * xi.sample(rng);
    worst = std::min(worst, x);
  }
  CHECK(worst > 1.0 - 1e-6);
}

TEST_CASE("stationary distribution: renewal atom oracle at theta = 1 - 1/e") {
  const double theta = 1.0 - std::exp(-1.0);
  const auto xi = XiSpec::uniform(2001);
  const auto pi = stationary_distribution(ThresholdDescriptor::interior(theta), xi, 2001, 1e-10);
  // E tau = 1 - log(lambda) = 2 for the uniform family, so pi({0}) = 1/3
  CHECK(pi.atom0 == doctest::Approx(1.0 / 3.0).epsilon(2e-3));
  // stationarity of the fixed point
  const auto pushed = push_threshold(pi, xi, theta);
  CHECK(tv_distance(pushed, pi) <= 2e-10);
  pi.validate(1e-9);
}

TEST_CASE("z_of_theta is monotone on a coarse sweep") {
  const auto xi = XiSpec::beta(2, 2, 501);
  double prev = -1.0;
  for (double th : {0.15, 0.35, 0.55, 0.75, 0.95}) {
    const double z = z_of_theta(ThresholdDescriptor::interior(th), xi, 501, 1e-9);
    CHECK(z >= prev - 1e-8);
    CHECK(z >= 0.0);
    CHECK(z <= 1.0);
    prev = z;
  }
}

TEST_CASE("stationary equilibrium: degenerate coupling equals one evaluation") {
  const auto xi = XiSpec::uniform(501);
  auto p = demo_params(501, 0.5);
  p.cost = CostFn::product(ScalarFn::affine(0.0, 1.0), ScalarFn::affine(1.0, 0.0));  // R2 = 1
  const auto sol = solve_stationary_equilibrium(p, xi, 1e-6);
  CHECK(sol.converged);
  const auto theta = threshold_of_z(0.37, p, xi);  // any z gives the same policy
  const double z_star = z_of_theta(theta, xi, p.grid_n);
  CHECK(sol.z_hat == doctest::Approx(z_star).epsilon(1e-5));
  CHECK(sol.residual <= 1e-6);
}

TEST_CASE("stationary equilibrium: interior demo and huge-gamma corner") {
  const auto xi = XiSpec::uniform(501);
  SUBCASE("interior") {
    const auto p = demo_params(501, 1.0);
    const auto sol = solve_stationary_equilibrium(p, xi, 1e-6);
    CHECK(sol.converged);
    CHECK(sol.residual <= 1e-6);
    CHECK(sol.theta_hat.kind == ThresholdKind::interior);
    CHECK(std::abs(sol.pi_hat.mean() - sol.z_hat) <= 1e-6);
    // consistency of the triple
    const auto theta2 = threshold_of_z(sol.z_hat, p, xi);
    CHECK(theta2.kind == ThresholdKind::interior);
    CHECK(theta2.value == doctest::Approx(sol.theta_hat.value).epsilon(1e-6));
  }
  SUBCASE("huge gamma: composition of boundary cases") {
    auto p = demo_params(501);
    p.gamma = 25.0;
    const auto sol = solve_stationary_equilibrium(p, xi, 1e-6);
    CHECK(sol.converged);
    CHECK(sol.theta_hat.kind == ThresholdKind::always_a0);
    CHECK(sol.z_hat == doctest::Approx(1.0).epsilon(1e-9));
  }
}

TEST_CASE("uniqueness probe: one sign change under positive externalities, flag without") {
  const auto xi = XiSpec::uniform(501);
  SUBCASE("valid externalities") {
    const auto p = demo_params(501, 1.0);
    const auto rep = uniqueness_probe(p, xi, 101);
    CHECK(rep.positive_externalities);
    CHECK(rep.sign_changes == 1);
    REQUIRE(!rep.near_roots.empty());
  }
  SUBCASE("gamma huge: no interior sign change, root pinned at one") {
    auto p = demo_params(501);
    p.gamma = 25.0;
    const auto rep = uniqueness_probe(p, xi, 51);
    CHECK(rep.sign_changes == 0);
    REQUIRE(!rep.near_roots.empty());
    CHECK(rep.near_roots.back() == doctest::Approx(1.0));
  }
  SUBCASE("decreasing R2 is reported, not solved") {
    auto p = demo_params(501, 1.0);
    p.cost = CostFn::product(ScalarFn::affine(0.0, 1.0), ScalarFn::affine(2.0, -1.0));
    const auto rep = uniqueness_probe(p, xi, 51);
    CHECK(!rep.positive_externalities);
  }
}

TEST_CASE("ergodicity report: geometric mixing from three initials") {
  const auto xi = XiSpec::uniform(501);
  const double initials[] = {0.0, 0.5, 1.0};
  const auto rep = ergodicity_report(ThresholdDescriptor::interior(0.5), xi, 501, 120, initials,
                                     1e-10);
  REQUIRE(rep.tv_series.size() == 3);
  const auto pi = stationary_distribution(ThresholdDescriptor::interior(0.5), xi, 501, 1e-10);
  for (std::size_t i = 0; i < 3; ++i) {
    // t = 0 entry is the TV between the initial point mass and pi
    const auto mu0 = GridMeasure::point_mass(501, initials[i]);
    CHECK(rep.tv_series[i][0] == doctest::Approx(tv_distance(mu0, pi)).epsilon(1e-12));
    CHECK(rep.tv_series[i].back() < 1e-6);
  }
  CHECK(rep.fit_ok);
  CHECK(rep.fitted_r < 1.0);
  CHECK(rep.fitted_k > 0.0);
  CHECK_THROWS_AS(
      ergodicity_report(ThresholdDescriptor::always_a0(), xi, 501, 50, initials, 1e-8),
      std::invalid_argument);
}
