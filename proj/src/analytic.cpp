#include "gme/analytic.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

namespace gme {

namespace {

struct Branch {
  const char* name;
  double value;
};

template <std::size_t N>
std::size_t argmaxFirst(const std::array<Branch, N>& b) {
  std::size_t best = 0;
  for (std::size_t k = 1; k < N; ++k)
    if (b[k].value > b[best].value) best = k;
  return best;
}

UnitVector planeVector(std::size_t d, cplx second) {
  Vector v = Vector::Zero(static_cast<Eigen::Index>(d));
  v(0) = 1.0;
  v(1) = second;
  return UnitVector::normalize(std::move(v), second.imag() == 0.0 ? Field::Real : Field::Complex);
}

ProductAnsatz pairHint(UnitVector a, UnitVector b) { return ProductAnsatz({std::move(a), std::move(b)}); }

// Product vectors realising each extreme point of (|<a|b>|^2, |<a*|b>|^2).
ProductAnsatz omegaHint(const std::string& branch, std::size_t d) {
  const cplx i(0.0, 1.0);
  if (branch == "orthogonal") return pairHint(UnitVector::basis(d, 0), UnitVector::basis(d, 1));
  if (branch == "parallel-complex") return pairHint(planeVector(d, i), planeVector(d, i));
  if (branch == "conjugate") return pairHint(planeVector(d, i), planeVector(d, -i));
  return pairHint(UnitVector::basis(d, 0), UnitVector::basis(d, 0));
}

}  // namespace

GmeValue gmeOmega(const OmegaParams& p) {
  p.validate();
  const double d = static_cast<double>(p.d);
  const double x = p.x, y = p.y;
  const std::array<Branch, 4> b{{
      {"orthogonal", (2.0 * y + d * (x + y)) / (d * (d - 1.0) * (d + 2.0))},
      {"parallel-complex", 2.0 * x / ((d - 1.0) * (d + 2.0))},
      {"conjugate", 1.0 / d - x * d / ((d - 1.0) * (d + 2.0)) - y * (d - 2.0) / (d * (d - 1.0))},
      {"parallel-real", (1.0 - y) / d - x / (d + 2.0)},
  }};
  const auto k = argmaxFirst(b);
  return {b[k].value, b[k].name, omegaHint(b[k].name, p.d)};
}

GmeValue gmeOmegaReal(const OmegaParams& p) {
  p.validate();
  const double d = static_cast<double>(p.d);
  const double x = p.x, y = p.y;
  // Real vectors have <a*|b> = <a|b>, so only the two diagonal extreme points remain.
  const std::array<Branch, 2> b{{
      {"orthogonal", (2.0 * y + d * (x + y)) / (d * (d - 1.0) * (d + 2.0))},
      {"parallel-real", (1.0 - y) / d - x / (d + 2.0)},
  }};
  const auto k = argmaxFirst(b);
  return {b[k].value, b[k].name, omegaHint(b[k].name, p.d)};
}

GmeValue gmeTau(const TauParams& p) {
  p.validate();
  std::size_t best = 0;
  for (std::size_t k = 1; k < p.weights.size(); ++k)
    if (p.weights[k] > p.weights[best]) best = k;
  const auto [i, j] = p.pair(best);
  return {0.5 * p.weights[best], "p" + std::to_string(i) + std::to_string(j),
          pairHint(UnitVector::basis(p.d, i), UnitVector::basis(p.d, j))};
}

double phiPlusTwoCopyLowerBound(const OmegaParams& p) {
  p.validate();
  const double d = static_cast<double>(p.d);
  const double x = p.x, y = p.y, z = 1.0 - p.x - p.y;
  return 2.0 * x * x / (d * d * (d - 1.0) * (d + 2.0)) + 2.0 * y * y / (d * d * d * (d - 1.0)) + z * z / (d * d);
}

double crossoverGap(double y, std::size_t d) {
  const double dd = static_cast<double>(d);
  const double local = 1.0 / dd - y * (dd - 2.0) / (dd * (dd - 1.0));
  const double bound = 2.0 * y * y / (dd * dd * dd * (dd - 1.0)) + (1.0 - y) * (1.0 - y) / (dd * dd);
  return local * local - bound;
}

Crossover crossover(std::size_t d) {
  if (d < 3) throw std::invalid_argument("crossover requires d >= 3");
  double lo = 1e-6, hi = 1.0;
  if (!(crossoverGap(lo, d) > 0.0 && crossoverGap(hi, d) < 0.0))
    throw std::runtime_error("crossover: no sign change on [1e-6, 1]");
  while (hi - lo > 0.0) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (crossoverGap(mid, d) > 0.0 ? lo : hi) = mid;
  }
  const double y = std::abs(crossoverGap(lo, d)) <= std::abs(crossoverGap(hi, d)) ? lo : hi;

  // d^2 * gap = y [ 2(1-k) - y (1 + 2/(d(d-1)) - k^2) ] with k = (d-2)/(d-1).
  const double dd = static_cast<double>(d);
  const double k = (dd - 2.0) / (dd - 1.0);
  const double closed = 2.0 * (1.0 - k) / (1.0 + 2.0 / (dd * (dd - 1.0)) - k * k);
  return {d, y, closed, std::abs(crossoverGap(y, d))};
}

double crossoverY(std::size_t d) { return crossover(d).y; }

}  // namespace gme
