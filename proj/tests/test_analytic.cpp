#include "doctest.h"

#include <cmath>

#include "gme/analytic.hpp"
#include "gme/random.hpp"
#include "gme/seesaw.hpp"
#include "oracles.hpp"

using namespace gme;

namespace {

OmegaParams randomOmega(Rng& rng, std::size_t d) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double x = u(rng), y = u(rng);
  if (x + y > 1.0) {
    x = 1.0 - x;
    y = 1.0 - y;
  }
  return {x, y, d};
}

}  // namespace

TEST_CASE("gmeOmega closed form") {
  const GmeValue anti = gmeOmega({0.0, 1.0, 3});
  CHECK(anti.value == 1.0 / 6.0);
  CHECK(gmeOmega({0.0, 0.0, 3}).value == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  const GmeValue mid = gmeOmega({0.2, 0.3, 3});
  CHECK(mid.value == doctest::Approx(0.2233333333333333).epsilon(1e-14));
  CHECK(mid.branch == "conjugate");
  // Ties go to the first listed branch: at x = y = 0 conjugate and parallel-real both give 1/d.
  CHECK(gmeOmega({0.0, 0.0, 3}).branch == "conjugate");
  CHECK(gmeOmega({1.0, 0.0, 3}).branch == "parallel-complex");
  CHECK(gmeOmega({0.0, 1.0, 3}).branch == "orthogonal");
  CHECK_THROWS_AS(gmeOmega({0.6, 0.6, 3}), std::invalid_argument);
}

TEST_CASE("gmeOmega is a true maximum and its hint attains it") {
  Rng rng(101);
  for (int sample = 0; sample < 500; ++sample) {
    const std::size_t d = sample < 400 ? 3 : 4;
    const OmegaParams p = randomOmega(rng, d);
    const GmeValue g = gmeOmega(p);
    const auto rho = omegaState(p);
    REQUIRE(g.maximizer_hint.has_value());
    CHECK(std::abs(productExpectation(rho, *g.maximizer_hint) - g.value) <= 1e-12);
    for (int t = 0; t < 100; ++t) {
      const ProductAnsatz ab({randomUnitVector(d, Field::Complex, rng), randomUnitVector(d, Field::Complex, rng)});
      CHECK(productExpectation(rho, ab) <= g.value + 1e-12);
    }
  }
}

TEST_CASE("gmeOmega matches a search over the overlap parameters") {
  // The pairs (s, t) = (|<a|b>|^2, |<a*|b>|^2) lie in the unit square and reach its four
  // corners (d >= 3). The product value is affine in (s, t), so a grid over the square is an
  // oracle for the maximum.
  Rng rng(103);
  for (int sample = 0; sample < 50; ++sample) {
    const OmegaParams p = randomOmega(rng, 3 + static_cast<std::size_t>(sample % 3));
    double best = 0.0;
    const int n = 200;
    for (int i = 0; i <= n; ++i)
      for (int j = 0; j <= n; ++j)
        best = std::max(best, oracle::omegaProductValue(p.x, p.y, static_cast<double>(p.d), double(i) / n, double(j) / n));
    CHECK(std::abs(gmeOmega(p).value - best) <= 1e-12);
  }
}

TEST_CASE("gmeOmegaReal") {
  CHECK(gmeOmegaReal({0.0, 1.0, 3}).value == doctest::Approx(1.0 / 6.0).epsilon(1e-15));
  CHECK(gmeOmegaReal({0.0, 0.0, 3}).value == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  CHECK(gmeOmegaReal({0.2, 0.3, 3}).value == doctest::Approx(29.0 / 150.0).epsilon(1e-14));

  Rng rng(107);
  for (int sample = 0; sample < 500; ++sample) {
    const OmegaParams p = randomOmega(rng, 3);
    const GmeValue r = gmeOmegaReal(p);
    CHECK(r.value <= gmeOmega(p).value + 1e-12);
    REQUIRE(r.maximizer_hint.has_value());
    CHECK(r.maximizer_hint->field() == Field::Real);
    CHECK(std::abs(productExpectation(omegaState(p), *r.maximizer_hint) - r.value) <= 1e-12);
  }
}

TEST_CASE("gmeOmegaReal agrees with real-restricted seesaw for d = 3, 4, 5") {
  OptimizerConfig config;
  config.field = Field::Real;
  config.seed = 5;
  for (std::size_t d : {3, 4, 5})
    for (auto [x, y] : {std::pair{0.2, 0.3}, {0.5, 0.1}, {0.9, 0.05}, {0.1, 0.1}, {0.0, 1.0}, {0.3, 0.6}}) {
      const OmegaParams p{x, y, d};
      const GmeEstimate est = seesawMaximize(omegaState(p).op(), trivialGrouping(2), config);
      INFO("d=" << d << " x=" << x << " y=" << y);
      CHECK(std::abs(est.best_value - gmeOmegaReal(p).value) <= 1e-8);
    }
}

TEST_CASE("gmeTau") {
  const GmeValue uniform = gmeTau(TauParams::uniform(3));
  CHECK(uniform.value == 1.0 / 6.0);
  CHECK(gmeTau(TauParams::fromWeights({1.0, 0.0, 0.0})).value == 0.5);
  const GmeValue biased = gmeTau(TauParams::fromXY(0.475, 0.475));
  CHECK(biased.value == doctest::Approx(0.2375).epsilon(1e-15));
  CHECK(biased.branch == "p01");
  CHECK(gmeTau(TauParams::fromXY(0.2, 0.5)).branch == "p02");
  CHECK(gmeTau(TauParams::fromXY(0.2, 0.1)).branch == "p12");

  SUBCASE("hint attains the value") {
    Rng rng(109);
    for (int t = 0; t < 20; ++t) {
      std::vector<double> w(6);
      double total = 0.0;
      for (auto& p : w) total += (p = std::exponential_distribution<double>(1.0)(rng));
      for (auto& p : w) p /= total;
      const TauParams p = TauParams::fromWeights(w);
      const GmeValue g = gmeTau(p);
      REQUIRE(g.maximizer_hint.has_value());
      CHECK(std::abs(productExpectation(tauState(p), *g.maximizer_hint) - g.value) <= 1e-14);
    }
  }
}

TEST_CASE("gmeTau against a brute-force grid over real product vectors") {
  // Spherical-angle grid (step pi/32) on both real unit vectors of R^3.
  const int n_theta = 32, n_phi = 64;
  std::vector<std::array<double, 3>> sphere;
  for (int i = 0; i <= n_theta; ++i)
    for (int j = 0; j < n_phi; ++j) {
      const double th = M_PI * i / n_theta, ph = 2.0 * M_PI * j / n_phi;
      sphere.push_back({std::sin(th) * std::cos(ph), std::sin(th) * std::sin(ph), std::cos(th)});
    }
  Rng rng(113);
  for (int t = 0; t < 20; ++t) {
    std::array<double, 3> p{};
    double total = 0.0;
    for (auto& w : p) total += (w = std::exponential_distribution<double>(1.0)(rng));
    for (auto& w : p) w /= total;
    double best = 0.0;
    for (const auto& a : sphere)
      for (const auto& b : sphere) best = std::max(best, oracle::tauRealProductValue(p.data(), a.data(), b.data()));
    CHECK(std::abs(gmeTau(TauParams::fromWeights({p[0], p[1], p[2]})).value - best) <= 1e-4);
  }
}

TEST_CASE("phiPlusTwoCopyLowerBound") {
  CHECK(phiPlusTwoCopyLowerBound({0.0, 1.0, 3}) == doctest::Approx(1.0 / 27.0).epsilon(1e-15));
  CHECK(phiPlusTwoCopyLowerBound({0.0, 0.0, 3}) == doctest::Approx(1.0 / 9.0).epsilon(1e-15));
  CHECK(phiPlusTwoCopyLowerBound({0.2, 0.3, 3}) == doctest::Approx(0.032).epsilon(1e-14));
  CHECK(phiPlusTwoCopyLowerBound({0.0, 1.0, 3}) > std::pow(gmeOmega({0.0, 1.0, 3}).value, 2) + 9.2e-3);

  SUBCASE("equals the Phi+ (x) Phi+ expectation") {
    Rng rng(127);
    for (int t = 0; t < 20; ++t) {
      const OmegaParams p = randomOmega(rng, 3 + static_cast<std::size_t>(t % 2));
      const auto rho = omegaState(p);
      const UnitVector phi(phiPlusVector(p.d), Field::Real);
      const double direct = productExpectation(kron(rho, rho), ProductAnsatz({phi, phi}, twoCopyGrouping()));
      CHECK(std::abs(direct - phiPlusTwoCopyLowerBound(p)) <= 1e-13);
      CHECK(phiPlusTwoCopyLowerBound(p) >= 0.0);
    }
  }
}

TEST_CASE("crossover") {
  const Crossover c3 = crossover(3);
  CHECK(std::abs(c3.y - 12.0 / 13.0) <= 1e-9);
  CHECK(std::abs(c3.y_closed_form - 12.0 / 13.0) <= 1e-15);
  CHECK(crossoverY(3) == c3.y);

  double previous = 0.0;
  for (std::size_t d = 3; d <= 15; ++d) {
    const Crossover c = crossover(d);
    INFO("d=" << d);
    CHECK(c.residual <= 1e-12);
    CHECK(std::abs(crossoverGap(c.y, d)) <= 1e-12);
    CHECK(std::abs(c.y - oracle::crossoverClosedForm(static_cast<double>(d))) <= 1e-12);
    CHECK(std::abs(c.y - c.y_closed_form) <= 1e-12);
    CHECK(c.y > 0.0);
    CHECK(c.y <= 1.0);
    // Non-decreasing; the first two values coincide exactly (12/13).
    if (d == 4) CHECK(std::abs(c.y - previous) <= 1e-12);
    if (d > 4) CHECK(c.y > previous + 1e-6);
    previous = c.y;

    const OmegaParams above{0.0, std::min(1.0, c.y + 0.01), d};
    CHECK(phiPlusTwoCopyLowerBound(above) > std::pow(gmeOmega(above).value, 2));
    const OmegaParams below{0.0, c.y - 0.01, d};
    CHECK(phiPlusTwoCopyLowerBound(below) < std::pow(gmeOmega(below).value, 2));
  }
  CHECK(crossoverY(200) > 0.995);
  CHECK_THROWS_AS(crossover(2), std::invalid_argument);
}
