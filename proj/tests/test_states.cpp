#include "doctest.h"

#include <cmath>

#include "gme/linalg.hpp"
#include "gme/random.hpp"
#include "gme/states.hpp"

using namespace gme;

namespace {

// (U (x) U) rho (U (x) U)^H
Matrix conjugateBoth(const Matrix& rho, const Matrix& u) {
  const auto d = u.rows();
  Matrix uxu(d * d, d * d);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j) uxu.block(i * d, j * d, d, d) = u(i, j) * u;
  return uxu * rho * uxu.adjoint();
}

void checkDensity(const DensityMatrix& rho) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(rho.matrix());
  CHECK(es.eigenvalues().minCoeff() >= -1e-10);
  CHECK(std::abs(rho.matrix().trace().real() - 1.0) <= 1e-12);
}

}  // namespace

TEST_CASE("parameter validation rejects rather than clamps") {
  CHECK_THROWS_AS(OmegaParams({-0.1, 0.5, 3}).validate(), std::invalid_argument);
  CHECK_THROWS_AS(OmegaParams({0.6, 0.5, 3}).validate(), std::invalid_argument);
  CHECK_THROWS_AS(OmegaParams({0.1, 0.1, 2}).validate(), std::invalid_argument);
  CHECK_NOTHROW(OmegaParams({0.5, 0.5, 3}).validate());
  CHECK_THROWS_AS(WernerParams({1.1, 3}).validate(), std::invalid_argument);
  CHECK_THROWS_AS(WernerParams({0.5, 1}).validate(), std::invalid_argument);
  CHECK_THROWS_AS(TauParams::fromWeights({0.5, 0.6, -0.1}).validate(), std::invalid_argument);
  CHECK_THROWS_AS(TauParams::fromWeights({0.5, 0.4, 0.2}).validate(), std::invalid_argument);
  CHECK_THROWS_AS(TauParams::fromWeights({0.5, 0.5}), std::invalid_argument);
  CHECK_THROWS_AS(omegaState({0.7, 0.7, 3}), std::invalid_argument);
  CHECK_THROWS_AS(tauState(TauParams::fromXY(0.7, 0.7)), std::invalid_argument);
}

TEST_CASE("wernerState") {
  const Matrix pi_minus = antisymProjector(3).matrix() / 3.0;
  const Matrix pi_plus = symProjector(3).matrix() / 6.0;
  CHECK(maxAbsDiff(wernerState({1.0, 3}).matrix(), pi_minus) <= 1e-15);
  CHECK(maxAbsDiff(wernerState({0.0, 3}).matrix(), pi_plus) <= 1e-15);

  const Matrix f = swapOperator(3).matrix();
  for (double lambda : {0.0, 0.1, 0.37, 0.5, 0.9, 1.0}) {
    const auto w = wernerState({lambda, 3});
    checkDensity(w);
    CHECK(std::abs((f * w.matrix()).trace().real() - (1.0 - 2.0 * lambda)) <= 1e-12);
  }

  SUBCASE("U (x) U invariance") {
    Rng rng(31);
    for (std::size_t d : {2, 3, 4}) {
      const auto w = wernerState({0.3, d});
      for (int t = 0; t < 20; ++t) {
        const Matrix u = randomUnitary(d, rng);
        CHECK(maxAbsDiff(conjugateBoth(w.matrix(), u), w.matrix()) <= 1e-10);
      }
    }
  }
  SUBCASE("as omega") {
    for (double lambda : {0.0, 0.25, 0.8}) {
      for (std::size_t d : {3, 4}) {
        const WernerParams w{lambda, d};
        CHECK(maxAbsDiff(wernerState(w).matrix(), omegaState(w.asOmega()).matrix()) <= 1e-14);
      }
    }
  }
}

TEST_CASE("omegaState") {
  CHECK(maxAbsDiff(omegaState({0.0, 1.0, 3}).matrix(), antisymProjector(3).matrix() / 3.0) <= 1e-15);
  CHECK(maxAbsDiff(omegaState({0.0, 0.0, 3}).matrix(), phiPlusState(3).matrix()) <= 1e-15);
  const Matrix expected = (symProjector(3).matrix() - phiPlusState(3).matrix()) / 5.0;
  CHECK(maxAbsDiff(omegaState({1.0, 0.0, 3}).matrix(), expected) <= 1e-15);

  SUBCASE("O (x) O invariance") {
    Rng rng(37);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int sample = 0; sample < 10; ++sample) {
      double x = u(rng), y = u(rng);
      if (x + y > 1.0) {
        x = 1.0 - x;
        y = 1.0 - y;
      }
      const std::size_t d = 3 + static_cast<std::size_t>(sample % 2);
      const auto w = omegaState({x, y, d});
      checkDensity(w);
      for (int t = 0; t < 20; ++t) {
        const Matrix o = randomOrthogonal(d, rng).cast<cplx>();
        CHECK(maxAbsDiff(conjugateBoth(w.matrix(), o), w.matrix()) <= 1e-10);
      }
    }
  }
  SUBCASE("not U (x) U invariant in general") {
    Rng rng(41);
    const auto w = omegaState({0.2, 0.3, 3});
    CHECK(maxAbsDiff(conjugateBoth(w.matrix(), randomUnitary(3, rng)), w.matrix()) > 1e-3);
  }
}

TEST_CASE("tauState") {
  const auto uniform = tauState(TauParams::uniform(3));
  CHECK(maxAbsDiff(uniform.matrix(), antisymProjector(3).matrix() / 3.0) <= 1e-15);

  const auto single = tauState(TauParams::fromWeights({1.0, 0.0, 0.0}));
  const Vector s = singletVector(3, 0, 1);
  CHECK(maxAbsDiff(single.matrix(), s * s.adjoint()) <= 1e-15);

  const auto biased = tauState(TauParams::fromXY(0.475, 0.475));
  const double purity = (biased.matrix() * biased.matrix()).trace().real();
  CHECK(purity == doctest::Approx(2 * 0.475 * 0.475 + 0.05 * 0.05).epsilon(1e-13));

  SUBCASE("supported on the antisymmetric subspace") {
    Rng rng(43);
    for (std::size_t d : {3, 4}) {
      const std::size_t pairs = d * (d - 1) / 2;
      for (int t = 0; t < 10; ++t) {
        std::vector<double> w(pairs);
        double total = 0.0;
        for (auto& p : w) total += (p = std::exponential_distribution<double>(1.0)(rng));
        for (auto& p : w) p /= total;
        const auto tau = tauState(TauParams::fromWeights(w));
        checkDensity(tau);
        const Matrix pa = antisymProjector(d).matrix();
        CHECK(maxAbsDiff(pa * tau.matrix() * pa, tau.matrix()) <= 1e-12);
      }
    }
  }
  SUBCASE("pair order") {
    const auto p = TauParams::uniform(4);
    CHECK(p.pair(0) == std::pair<std::size_t, std::size_t>{0, 1});
    CHECK(p.pair(2) == std::pair<std::size_t, std::size_t>{0, 3});
    CHECK(p.pair(3) == std::pair<std::size_t, std::size_t>{1, 2});
    CHECK(p.pair(5) == std::pair<std::size_t, std::size_t>{2, 3});
  }
}

TEST_CASE("the antisymmetric state has three equal descriptions") {
  const Matrix a = omegaState({0.0, 1.0, 3}).matrix();
  CHECK(maxAbsDiff(a, tauState(TauParams::uniform(3)).matrix()) <= 1e-12);
  CHECK(maxAbsDiff(a, wernerState({1.0, 3}).matrix()) <= 1e-12);
}

TEST_CASE("isOmegaSeparable") {
  CHECK(isOmegaSeparable({0.5, 0.3, 3}));
  CHECK_FALSE(isOmegaSeparable({0.0, 1.0, 3}));
  CHECK(isOmegaSeparable({2.0 / 3.0, 0.0, 3}));
  CHECK(isOmegaSeparable({0.5, 0.5, 3}));
  CHECK_FALSE(isOmegaSeparable({0.45, 0.55, 3}));
  CHECK_FALSE(isOmegaSeparable({0.3, 0.3, 3}));
  CHECK_THROWS_AS(isOmegaSeparable({0.5, 0.3, 4}), std::invalid_argument);
}

TEST_CASE("realTwoQubitExample") {
  const auto rho = realTwoQubitExample();
  CHECK(rho.matrix().imag().cwiseAbs().maxCoeff() == 0.0);
  CHECK(rho.matrix().trace().real() == doctest::Approx(1.0).epsilon(1e-15));
  Eigen::SelfAdjointEigenSolver<Matrix> es(rho.matrix());
  const Eigen::Vector4d expected(0.0, 0.125, 0.375, 0.5);
  CHECK((es.eigenvalues() - expected).cwiseAbs().maxCoeff() <= 1e-14);
}
