#include "gme/states.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace gme {

namespace {
// Grid coordinates such as x = 0.975, y = 0.025 may sum to 1 + ulp.
constexpr double kSimplexSlack = 1e-12;

bool finite(double v) { return std::isfinite(v); }
}  // namespace

void OmegaParams::validate() const {
  if (!finite(x) || !finite(y)) throw std::invalid_argument("omega parameters must be finite");
  if (d < 3) throw std::invalid_argument("omega family requires d >= 3");
  if (x < 0.0 || y < 0.0 || x + y > 1.0 + kSimplexSlack)
    throw std::invalid_argument("omega parameters out of range: need x, y >= 0 and x + y <= 1 (x=" + std::to_string(x) +
                                ", y=" + std::to_string(y) + ")");
}

TauParams TauParams::fromXY(double x, double y) { return TauParams{{x, y, 1.0 - x - y}, 3}; }

TauParams TauParams::fromWeights(std::vector<double> weights) {
  const std::size_t n = weights.size();
  std::size_t d = 2;
  while (d * (d - 1) / 2 < n) ++d;
  if (d * (d - 1) / 2 != n) throw std::invalid_argument("number of tau weights must be d(d-1)/2");
  return TauParams{std::move(weights), d};
}

TauParams TauParams::uniform(std::size_t d) {
  const std::size_t n = d * (d - 1) / 2;
  return TauParams{std::vector<double>(n, 1.0 / static_cast<double>(n)), d};
}

std::pair<std::size_t, std::size_t> TauParams::pair(std::size_t k) const {
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i + 1; j < d; ++j)
      if (k-- == 0) return {i, j};
  throw std::out_of_range("tau pair index out of range");
}

void TauParams::validate() const {
  if (d < 3) throw std::invalid_argument("tau family requires d >= 3");
  if (weights.size() != d * (d - 1) / 2) throw std::invalid_argument("tau weights must have d(d-1)/2 entries");
  for (double p : weights)
    if (!finite(p) || p < -Tolerances::distribution) throw std::invalid_argument("tau weights must be nonnegative");
  const double sum = std::accumulate(weights.begin(), weights.end(), 0.0);
  if (std::abs(sum - 1.0) > Tolerances::distribution) throw std::invalid_argument("tau weights must sum to 1");
}

void WernerParams::validate() const {
  if (!finite(lambda) || lambda < 0.0 || lambda > 1.0) throw std::invalid_argument("Werner lambda must lie in [0, 1]");
  if (d < 2) throw std::invalid_argument("Werner family requires d >= 2");
}

OmegaParams WernerParams::asOmega() const {
  const double dd = static_cast<double>(d);
  return OmegaParams{(1.0 - lambda) * (dd - 1.0) * (dd + 2.0) / (dd * (dd + 1.0)), lambda, d};
}

DensityMatrix wernerState(const WernerParams& p) {
  p.validate();
  const double d = static_cast<double>(p.d);
  const Matrix m = 2.0 * (1.0 - p.lambda) / (d * (d + 1.0)) * symProjector(p.d).matrix() +
                   2.0 * p.lambda / (d * (d - 1.0)) * antisymProjector(p.d).matrix();
  return DensityMatrix(m, {p.d, p.d});
}

DensityMatrix omegaState(const OmegaParams& p) {
  p.validate();
  const double d = static_cast<double>(p.d);
  const Matrix phi = phiPlusState(p.d).matrix();
  const Matrix m = 2.0 * p.x / ((d - 1.0) * (d + 2.0)) * (symProjector(p.d).matrix() - phi) +
                   2.0 * p.y / (d * (d - 1.0)) * antisymProjector(p.d).matrix() + (1.0 - p.x - p.y) * phi;
  return DensityMatrix(m, {p.d, p.d});
}

Vector singletVector(std::size_t d, std::size_t i, std::size_t j) {
  if (i >= d || j >= d || i == j) throw std::invalid_argument("singlet needs two distinct levels");
  const auto n = static_cast<Eigen::Index>(d);
  Vector v = Vector::Zero(n * n);
  const auto a = static_cast<Eigen::Index>(i);
  const auto b = static_cast<Eigen::Index>(j);
  v(a * n + b) = M_SQRT1_2;
  v(b * n + a) = -M_SQRT1_2;
  return v;
}

DensityMatrix tauState(const TauParams& p) {
  p.validate();
  const auto n = static_cast<Eigen::Index>(p.d * p.d);
  Matrix m = Matrix::Zero(n, n);
  for (std::size_t k = 0; k < p.weights.size(); ++k) {
    const auto [i, j] = p.pair(k);
    const Vector s = singletVector(p.d, i, j);
    m += p.weights[k] * s * s.adjoint();
  }
  return DensityMatrix(m, {p.d, p.d});
}

bool isOmegaSeparable(const OmegaParams& p) {
  p.validate();
  if (p.d != 3) throw std::invalid_argument("omega separability region is only available for d = 3");
  return p.x + p.y >= 2.0 / 3.0 - kSimplexSlack && p.y <= 0.5 + kSimplexSlack;
}

DensityMatrix realTwoQubitExample() {
  Matrix yy = Matrix::Zero(4, 4);
  yy(0, 3) = -1.0;
  yy(1, 2) = 1.0;
  yy(2, 1) = 1.0;
  yy(3, 0) = -1.0;
  const Matrix zz = Eigen::Vector4cd(1.0, -1.0, -1.0, 1.0).asDiagonal();
  const Matrix m = 0.25 * (Matrix::Identity(4, 4) - 0.75 * yy - 0.25 * zz);
  return DensityMatrix(m, {2, 2});
}

}  // namespace gme
