#include <doctest.h>

#include <cmath>

#include "mfg/grid.hpp"
#include "mfg/measure.hpp"
#include "test_support.hpp"

using namespace mfg;

namespace {
constexpr int kN = 2001;
}

TEST_CASE("mean: atoms, uniform and mixtures") {
  CHECK(GridMeasure::unit_atom0(kN).mean() == 0.0);
  CHECK(GridMeasure::uniform_density(kN).mean() == doctest::Approx(0.5).epsilon(1e-12));
  GridMeasure mix;
  mix.atom0 = 0.5;
  mix.density.assign(kN, 0.5);
  CHECK(mix.mean() == doctest::Approx(0.25).epsilon(1e-12));
  mix.validate();
}

TEST_CASE("tv distance: identity, singular pair, triangular oracle") {
  const auto uni = GridMeasure::uniform_density(kN);
  CHECK(tv_distance(uni, uni) == 0.0);
  CHECK(tv_distance(GridMeasure::unit_atom0(kN), uni) == doctest::Approx(1.0).epsilon(1e-12));

  GridMeasure tri;
  tri.atom0 = 0.0;
  tri.density.resize(kN);
  const Grid g(kN);
  for (int i = 0; i < kN; ++i) tri.density[i] = 2.0 * g.node(i);
  // exact piecewise integral: 1/2 ∫ |1 - 2y| dy = 1/4
  CHECK(tv_distance(uni, tri) == doctest::Approx(0.25).epsilon(1e-9));
}

TEST_CASE("push_a0 from the atom reproduces the innovation density") {
  SUBCASE("uniform") {
    const auto out = push_a0(GridMeasure::unit_atom0(kN), XiSpec::uniform());
    CHECK(out.atom0 == 0.0);
    out.validate(1e-12);
    for (int i : {0, 1, 500, 1000, 1999, 2000})
      CHECK(out.density[i] == doctest::Approx(1.0).epsilon(1e-10));
  }
  SUBCASE("beta22") {
    const auto out = push_a0(GridMeasure::unit_atom0(kN), XiSpec::beta(2, 2));
    CHECK(out.atom0 == 0.0);
    out.validate(1e-12);
    const Grid g(kN);
    for (int i : {3, 500, 1000, 1500, 1998}) {
      const double y = g.node(i);
      CHECK(out.density[i] == doctest::Approx(6.0 * y * (1.0 - y)).epsilon(5e-5));
    }
  }
}

TEST_CASE("push_a0 of the uniform density under uniform xi: -log(1-y) oracle") {
  const auto out = push_a0(GridMeasure::uniform_density(kN), XiSpec::uniform());
  CHECK(out.atom0 == 0.0);
  CHECK(out.mass() == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(out.density[1000] == doctest::Approx(std::log(2.0)).epsilon(1e-5));
  for (double y : {0.25, 0.75, 0.9}) {
    const int i = static_cast<int>(y * (kN - 1));
    CHECK(out.density[i] == doctest::Approx(-std::log1p(-y)).epsilon(1e-5));
  }
}

TEST_CASE("push_threshold: atom input below the threshold matches push_a0") {
  const auto xi = XiSpec::beta(2, 2);
  const auto mu = GridMeasure::unit_atom0(kN);
  const auto a = push_a0(mu, xi);
  const auto b = push_threshold(mu, xi, 0.5);
  CHECK(b.atom0 == 0.0);
  CHECK(tv_distance(a, b) == doctest::Approx(0.0).epsilon(1e-14));
}

TEST_CASE("push_threshold of the uniform density: tail mass and plateau oracle") {
  const auto xi = XiSpec::uniform();
  const auto mu = GridMeasure::uniform_density(kN);
  const auto out = push_threshold(mu, xi, 0.5);
  CHECK(out.atom0 == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(out.mass() == doctest::Approx(1.0).epsilon(1e-13));

  // brute-force quadrature of g(y) = ∫_0^{min(y,1/2)} dx/(1-x)
  for (double y : {0.3, 0.6, 0.95, 0.9995}) {
    const double lim = std::min(y, 0.5);
    const double oracle =
        testing::simpson([&](double x) { return 1.0 / (1.0 - x); }, 0.0, lim, 20000);
    const int i = static_cast<int>(std::lround(y * (kN - 1)));
    CHECK(out.density[i] == doctest::Approx(oracle).epsilon(2e-4));
  }
  // the density is flat at log(2) on (1/2, 1]
  CHECK(out.density[1600] == doctest::Approx(std::log(2.0)).epsilon(1e-6));
  CHECK(out.density[2000] == doctest::Approx(std::log(2.0)).epsilon(1e-6));
}

TEST_CASE("mass conservation under both pushes") {
  const XiSpec specs[] = {XiSpec::uniform(), XiSpec::beta(2, 2), XiSpec::beta(2.5, 1.5),
                          XiSpec::truncated_exp(1.7)};
  GridMeasure mu;
  mu.atom0 = 0.3;
  mu.density.resize(kN);
  const Grid g(kN);
  for (int i = 0; i < kN; ++i) mu.density[i] = 0.7 * 2.0 * g.node(i);
  for (const auto& xi : specs) {
    CAPTURE(xi.describe());
    const auto a = push_a0(mu, xi);
    CHECK(a.mass() == doctest::Approx(mu.mass()).epsilon(1e-10));
    for (double r : {0.17, 0.5, 0.93}) {
      const auto b = push_threshold(mu, xi, r);
      CHECK(b.mass() == doctest::Approx(mu.mass()).epsilon(1e-10));
      CHECK(b.atom0 == doctest::Approx(mu.tail_mass(r)).epsilon(1e-9));
    }
  }
}

TEST_CASE("random measures and thresholds keep mass and positivity") {
  RngStream rng(321);
  const XiSpec specs[] = {XiSpec::uniform(), XiSpec::beta(3, 2), XiSpec::truncated_exp(0.8)};
  const Grid g(kN);
  for (int trial = 0; trial < 25; ++trial) {
    GridMeasure mu;
    mu.atom0 = 0.6 * rng.uniform01();
    mu.density.resize(kN);
    const double a = rng.uniform01(), b = 4.0 * rng.uniform01();
    for (int i = 0; i < kN; ++i) {
      const double x = g.node(i);
      mu.density[i] = 0.05 + a + b * x * x;
    }
    const double scale = (1.0 - mu.atom0) / trapezoid(mu.density, g.step());
    for (double& d : mu.density) d *= scale;
    mu.validate(1e-12);

    const auto& xi = specs[trial % 3];
    const double r = 0.02 + 0.96 * rng.uniform01();
    const auto out = push_threshold(mu, xi, r);
    CHECK(out.mass() == doctest::Approx(1.0).epsilon(1e-10));
    out.validate(1e-8);
    const auto drift = push_a0(mu, xi);
    CHECK(drift.mass() == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(drift.atom0 == 0.0);
  }
}

TEST_CASE("push_a0 vanishes below the input support") {
  const auto xi = XiSpec::uniform();
  const auto mu = GridMeasure::point_mass(kN, 0.5);
  const auto out = push_a0(mu, xi);
  for (int i = 0; i < 990; ++i) CHECK(out.density[i] == 0.0);
  CHECK(out.mass() == doctest::Approx(1.0).epsilon(1e-12));
  // pushed point mass has density f((y-x)/(1-x))/(1-x) = 2 on (1/2, 1]
  CHECK(out.density[1600] == doctest::Approx(2.0).epsilon(1e-9));
}

TEST_CASE("threshold inside the first or last cell stays conservative") {
  const auto xi = XiSpec::uniform();
  const auto mu = GridMeasure::uniform_density(kN);
  for (double r : {1e-5, 1.0 - 1e-5}) {
    const auto out = push_threshold(mu, xi, r);
    CHECK(out.mass() == doctest::Approx(1.0).epsilon(1e-10));
  }
}

TEST_CASE("sample_state matches the measure it draws from") {
  GridMeasure mu;
  mu.atom0 = 0.25;
  mu.density.resize(kN);
  const Grid g(kN);
  for (int i = 0; i < kN; ++i) mu.density[i] = 0.75 * 2.0 * g.node(i);
  RngStream rng(5);
  const long n = 400000;
  long zeros = 0;
  double sum = 0.0;
  long below_half = 0;
  for (long k = 0; k < n; ++k) {
    const double x = sample_state(mu, rng);
    if (x == 0.0) ++zeros;
    else if (x < 0.5) ++below_half;
    sum += x;
  }
  // atom frequency, mean, and one interior quantile, all at ~4 sigma
  CHECK(std::abs(zeros / double(n) - 0.25) < 4.0 * std::sqrt(0.25 * 0.75 / n));
  const double true_mean = 0.75 * 2.0 / 3.0;
  CHECK(std::abs(sum / n - true_mean) < 0.002);
  const double p_below = 0.75 * 0.25;  // density part below 1/2
  CHECK(std::abs(below_half / double(n) - p_below) < 4.0 * std::sqrt(p_below / n));
}

TEST_CASE("validate rejects broken measures") {
  GridMeasure bad;
  bad.atom0 = 0.0;
  bad.density.assign(kN, 0.5);
  CHECK_THROWS_AS(bad.validate(1e-8), std::invalid_argument);
  GridMeasure neg = GridMeasure::uniform_density(kN);
  neg.density[7] = -0.1;
  CHECK_THROWS_AS(neg.validate(1.0), std::invalid_argument);
  CHECK_THROWS_AS(push_threshold(GridMeasure::uniform_density(kN), XiSpec::uniform(), 1.0),
                  std::domain_error);
}
