#include "gme/random.hpp"

#include <cmath>

namespace gme {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

Matrix ginibre(Eigen::Index rows, Eigen::Index cols, Rng& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  Matrix g(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j)
    for (Eigen::Index i = 0; i < rows; ++i) {
      const double re = n(rng);
      const double im = n(rng);
      g(i, j) = cplx(re, im);
    }
  return g;
}

}  // namespace

std::uint64_t deriveSeed(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
  return splitmix64(splitmix64(splitmix64(seed) ^ a) ^ (b * 0x632be59bd9b4e019ULL));
}

UnitVector randomUnitVector(std::size_t dim, Field field, Rng& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  const auto d = static_cast<Eigen::Index>(dim);
  Vector v(d);
  for (Eigen::Index i = 0; i < d; ++i) {
    const double re = n(rng);
    const double im = field == Field::Complex ? n(rng) : 0.0;
    v(i) = cplx(re, im);
  }
  return UnitVector::normalize(std::move(v), field);
}

Matrix randomUnitary(std::size_t d, Rng& rng) {
  const auto n = static_cast<Eigen::Index>(d);
  Eigen::HouseholderQR<Matrix> qr(ginibre(n, n, rng));
  Matrix q = qr.householderQ() * Matrix::Identity(n, n);
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index i = 0; i < n; ++i) {
    const double a = std::abs(r(i, i));
    if (a > 0.0) q.col(i) *= r(i, i) / a;
  }
  return q;
}

RealMatrix randomOrthogonal(std::size_t d, Rng& rng) {
  const auto n = static_cast<Eigen::Index>(d);
  std::normal_distribution<double> nd(0.0, 1.0);
  RealMatrix g(n, n);
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index i = 0; i < n; ++i) g(i, j) = nd(rng);
  Eigen::HouseholderQR<RealMatrix> qr(g);
  RealMatrix q = qr.householderQ() * RealMatrix::Identity(n, n);
  const RealMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index i = 0; i < n; ++i)
    if (r(i, i) < 0.0) q.col(i) *= -1.0;
  return q;
}

DensityMatrix randomDensityMatrix(const Dims& dims, Rng& rng) {
  const auto n = static_cast<Eigen::Index>(product(dims));
  const Matrix g = ginibre(n, n, rng);
  Matrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  rho = (rho + rho.adjoint()).eval() * 0.5;
  return DensityMatrix(std::move(rho), dims);
}

HermitianOperator randomHermitian(const Dims& dims, Rng& rng) {
  const auto n = static_cast<Eigen::Index>(product(dims));
  const Matrix g = ginibre(n, n, rng);
  return HermitianOperator((g + g.adjoint()) * 0.5, dims);
}

}  // namespace gme
