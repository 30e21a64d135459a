#include "doctest.h"

#include <cmath>

#include "gme/lab.hpp"

using namespace gme;

namespace {

ScanConfig smallConfig(Family family, ScanMode mode) {
  ScanConfig c;
  c.family = family;
  c.mode = mode;
  c.threads = 1;
  return c;
}

void checkRecordInvariants(const ScanRecord& r, const ScanConfig& c) {
  CHECK(r.error.empty());
  CHECK(r.gap == r.two_copy_gme - r.local_gme_squared);
  CHECK(r.local_gme_squared == r.local_gme * r.local_gme);
  if (r.violation) CHECK(r.gap > c.threshold * r.local_gme_squared);
  REQUIRE(r.witness.has_value());
  const auto rho = familyState(c.family, r.x, r.y, c.d);
  CHECK(std::abs(productExpectation(kron(rho, rho), *r.witness) - r.two_copy_gme) <= 1e-12);
}

}  // namespace

TEST_CASE("grid bookkeeping") {
  CHECK(simplexGridSize(40) == 861);
  CHECK(simplexGridSize(1) == 3);
  ScanConfig c;
  CHECK(c.intervals() == 40);
  CHECK(c.optimizer.restarts == 256);
  CHECK(c.optimizer.max_iterations == 1000);
  c.step = 0.03;
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  c.step = 0.1;
  c.threshold = 0.0;
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  c.threshold = 1e-5;
  c.family = Family::Tau;
  c.d = 4;
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  CHECK_THROWS_AS(scanPoint(ScanConfig{}, 30, 20), std::invalid_argument);
}

TEST_CASE("violation rule") {
  CHECK(isViolation(0.1, 2e-6, 1e-5));
  CHECK_FALSE(isViolation(0.1, 5e-7, 1e-5));
  CHECK_FALSE(isViolation(1e-8, 5e-10, 1e-5));
  CHECK_FALSE(isViolation(0.1, -1e-3, 1e-5));
}

TEST_CASE("family state conventions") {
  CHECK(maxAbsDiff(familyState(Family::Tau, 0.2, 0.3, 3).matrix(),
                   tauState(TauParams::fromWeights({0.2, 0.3, 0.5})).matrix()) == 0.0);
  CHECK(maxAbsDiff(familyState(Family::Omega, 0.2, 0.3, 3).matrix(), omegaState({0.2, 0.3, 3}).matrix()) == 0.0);
  CHECK(parseFamily("tau") == Family::Tau);
  CHECK(parseScanMode("mixed") == ScanMode::Mixed);
  CHECK_THROWS_AS(parseScanMode("quaternion"), std::invalid_argument);
}

TEST_CASE("omega witness points") {
  const ScanConfig c = smallConfig(Family::Omega, ScanMode::Complex);
  const ScanRecord top = scanPoint(c, 0, 40);
  CHECK(top.x == 0.0);
  CHECK(top.y == 1.0);
  CHECK(top.violation);
  CHECK(top.gap >= 1.0 / 27.0 - 1.0 / 36.0 - 1e-8);
  CHECK(top.separable == false);
  CHECK(top.branch == "orthogonal");
  checkRecordInvariants(top, c);

  const ScanRecord sep = scanPoint(c, 20, 12);  // (0.5, 0.3)
  CHECK(sep.separable == true);
  CHECK_FALSE(sep.violation);
  checkRecordInvariants(sep, c);

  const ScanRecord mixed = scanPoint(smallConfig(Family::Omega, ScanMode::Mixed), 0, 40);
  CHECK(mixed.violation);
  CHECK(mixed.local_gme == top.local_gme);
  CHECK(mixed.witness->field() == Field::Real);
}

TEST_CASE("real mode flags a separable omega point") {
  const ScanConfig c = smallConfig(Family::Omega, ScanMode::Real);
  const ScanRecord r = scanPoint(c, 8, 20);  // (0.2, 0.5)
  CHECK(r.separable == true);
  CHECK(r.local_gme == gmeOmegaReal({0.2, 0.5, 3}).value);
  CHECK(r.violation);
  checkRecordInvariants(r, c);
}

TEST_CASE("tau witness point") {
  const ScanConfig c = smallConfig(Family::Tau, ScanMode::Complex);
  const ScanRecord r = scanPoint(c, 19, 19);
  CHECK(r.x == doctest::Approx(0.475));
  CHECK(r.local_gme == doctest::Approx(0.2375));
  CHECK_FALSE(r.separable.has_value());
  CHECK(r.violation);
  checkRecordInvariants(r, c);
}

TEST_CASE("scanFamily is deterministic, ordered and cancellable") {
  ScanConfig c = smallConfig(Family::Omega, ScanMode::Complex);
  c.step = 0.5;
  c.optimizer.restarts = 16;
  const auto a = scanFamily(c);
  REQUIRE(a.size() == 6);
  c.threads = 3;
  const auto b = scanFamily(c);
  REQUIRE(b.size() == 6);
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].two_copy_gme == b[i].two_copy_gme);
    CHECK(a[i].violation == b[i].violation);
    if (i > 0) CHECK(std::pair(a[i - 1].ix, a[i - 1].iy) < std::pair(a[i].ix, a[i].iy));
  }

  std::atomic<bool> cancel{true};
  ScanHooks hooks;
  hooks.cancel = &cancel;
  CHECK(scanFamily(c, hooks).empty());

  int seen = 0;
  hooks.cancel = nullptr;
  hooks.on_record = [&](const ScanRecord&) { ++seen; };
  c.threads = 1;
  CHECK(mixedModeScan(c, hooks).front().mode == ScanMode::Mixed);
  CHECK(seen == 6);
}

TEST_CASE("separable multiplicativity harness") {
  OptimizerConfig opt = ScanConfig::defaultTwoCopyOptimizer();
  opt.restarts = 64;
  const SeparableReport report = verifySeparableMultiplicativity(5, 17, opt);
  CHECK(report.trials == 5);
  CHECK(report.results.size() == 5);
  CHECK(report.passed());
  CHECK(report.max_deviation <= 1e-6);
  for (const auto& t : report.results) {
    CHECK(t.terms >= 2);
    CHECK(t.terms <= 9);
  }
  CHECK_THROWS_AS(verifySeparableMultiplicativity(0, 1), std::invalid_argument);

  SUBCASE("pure product state") {
    Matrix p = Matrix::Zero(9, 9);
    p(0, 0) = 1.0;
    const DensityMatrix rho(p, {3, 3});
    Rng rng(5);
    const auto sigma = randomDensityMatrix({3, 3}, rng);
    const TwoCopyEstimate est = twoCopyGme(rho, sigma, opt);
    CHECK(std::abs(est.first.best_value - 1.0) <= 1e-12);
    CHECK(std::abs(est.joint.best_value - est.second.best_value) <= 1e-9);
  }
}

TEST_CASE("real two-qubit counterexample") {
  const RealCounterexampleReport r = realCounterexampleCheck();
  CHECK(r.local_ok);
  CHECK(r.two_copy_ok);
  CHECK(r.gap_ok);
  CHECK(r.witness_ok);
  CHECK(r.complex_multiplicative);
  CHECK(r.passed());
  CHECK(r.local_real == doctest::Approx(0.3125).epsilon(1e-12));
  CHECK(r.witness_value == doctest::Approx(0.1015625).epsilon(1e-14));
  CHECK(r.local_complex == doctest::Approx(0.4375).epsilon(1e-9));
  CHECK(r.two_copy_complex == doctest::Approx(0.19140625).epsilon(1e-9));

  // The real optimum is |01>, not |00>.
  const auto rho = realTwoQubitExample();
  CHECK(productExpectation(rho, ProductAnsatz({UnitVector::basis(2, 0), UnitVector::basis(2, 1)})) ==
        doctest::Approx(5.0 / 16.0).epsilon(1e-15));
  CHECK(productExpectation(rho, ProductAnsatz({UnitVector::basis(2, 0), UnitVector::basis(2, 0)})) ==
        doctest::Approx(3.0 / 16.0).epsilon(1e-15));
}

TEST_CASE("evaluatePoint off the grid") {
  const ScanConfig c = smallConfig(Family::Tau, ScanMode::Complex);
  const ScanRecord r = evaluatePoint(c, 1.0 / 3.0, 1.0 / 3.0);
  CHECK(r.local_gme == doctest::Approx(1.0 / 6.0).epsilon(1e-14));
  CHECK(r.two_copy_gme >= 1.0 / 27.0 - 1e-8);
  CHECK(r.violation);
  checkRecordInvariants(r, c);
  CHECK_THROWS_AS(evaluatePoint(c, 0.7, 0.7), std::invalid_argument);

  const ScanRecord grid = scanPoint(c, 19, 19);
  const ScanRecord same = evaluatePoint(c, grid.x, grid.y);
  CHECK(same.local_gme == grid.local_gme);
  CHECK(same.two_copy_gme >= grid.local_gme_squared);
}
