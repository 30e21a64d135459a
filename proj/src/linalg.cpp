#include "gme/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace gme {

namespace {

void requireSquare(const Matrix& m) {
  if (m.rows() != m.cols() || m.rows() == 0) throw std::invalid_argument("operator must be a non-empty square matrix");
}

bool allFinite(const Matrix& m) {
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < m.rows(); ++i)
      if (!std::isfinite(m(i, j).real()) || !std::isfinite(m(i, j).imag())) return false;
  return true;
}

// Row-major multi-index strides for a list of dimensions.
std::vector<std::size_t> strides(const Dims& dims) {
  std::vector<std::size_t> s(dims.size(), 1);
  for (std::size_t k = dims.size(); k-- > 1;) s[k - 1] = s[k] * dims[k];
  return s;
}

// For each index of the permuted space, the index in the original space.
std::vector<Eigen::Index> permutationMap(const Dims& old_dims, std::span<const std::size_t> perm) {
  const std::size_t n = old_dims.size();
  Dims new_dims(n);
  for (std::size_t k = 0; k < n; ++k) new_dims[k] = old_dims[perm[k]];
  const auto old_strides = strides(old_dims);
  const std::size_t total = product(old_dims);

  std::vector<Eigen::Index> map(total);
  std::vector<std::size_t> digits(n, 0);
  for (std::size_t idx = 0; idx < total; ++idx) {
    std::size_t old_idx = 0;
    for (std::size_t k = 0; k < n; ++k) old_idx += digits[k] * old_strides[perm[k]];
    map[idx] = static_cast<Eigen::Index>(old_idx);
    for (std::size_t k = n; k-- > 0;) {
      if (++digits[k] < new_dims[k]) break;
      digits[k] = 0;
    }
  }
  return map;
}

void requirePermutation(std::span<const std::size_t> perm, std::size_t n) {
  if (perm.size() != n) throw std::invalid_argument("permutation length does not match number of subsystems");
  std::vector<bool> seen(n, false);
  for (auto p : perm) {
    if (p >= n || seen[p]) throw std::invalid_argument("not a permutation of subsystem indices");
    seen[p] = true;
  }
}

}  // namespace

std::size_t product(std::span<const std::size_t> dims) {
  return std::accumulate(dims.begin(), dims.end(), std::size_t{1}, std::multiplies<>());
}

double maxAbsDiff(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw std::invalid_argument("shape mismatch");
  return (a - b).cwiseAbs().maxCoeff();
}

// ---------------------------------------------------------------------------

HermitianOperator::HermitianOperator(Matrix entries, Dims subsystem_dims)
    : entries_(std::move(entries)), dims_(std::move(subsystem_dims)) {
  requireSquare(entries_);
  if (dims_.empty() || std::find(dims_.begin(), dims_.end(), 0u) != dims_.end())
    throw std::invalid_argument("subsystem dimensions must be positive");
  if (product(dims_) != dim())
    throw std::invalid_argument("product of subsystem dimensions (" + std::to_string(product(dims_)) +
                                ") does not equal operator dimension (" + std::to_string(dim()) + ")");
  if (!allFinite(entries_)) throw std::invalid_argument("operator has non-finite entries");
  const Matrix adj = entries_.adjoint();
  if (maxAbsDiff(entries_, adj) > Tolerances::hermiticity) throw std::invalid_argument("operator is not Hermitian");
  entries_ = (entries_ + adj) * 0.5;
}

HermitianOperator::HermitianOperator(Matrix entries)
    : HermitianOperator(entries, Dims{static_cast<std::size_t>(entries.rows())}) {}

DensityMatrix::DensityMatrix(HermitianOperator op) : op_(std::move(op)) {
  if (std::abs(op_.trace() - 1.0) > Tolerances::trace) throw std::invalid_argument("density matrix must have unit trace");
  Eigen::SelfAdjointEigenSolver<Matrix> es(op_.matrix(), Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -Tolerances::psd) throw std::invalid_argument("density matrix is not positive semidefinite");
}

DensityMatrix::DensityMatrix(Matrix entries, Dims subsystem_dims)
    : DensityMatrix(HermitianOperator(std::move(entries), std::move(subsystem_dims))) {}

UnitVector::UnitVector(Vector entries, Field field) : entries_(std::move(entries)), field_(field) {
  if (entries_.size() == 0) throw std::invalid_argument("empty vector");
  if (std::abs(entries_.norm() - 1.0) > Tolerances::unit_norm) throw std::invalid_argument("vector is not unit norm");
  if (field_ == Field::Real && entries_.imag().cwiseAbs().maxCoeff() != 0.0)
    throw std::invalid_argument("real vector has non-zero imaginary part");
}

UnitVector UnitVector::normalize(Vector entries, Field field) {
  const double n = entries.norm();
  if (!(n > 0.0) || !std::isfinite(n)) throw std::invalid_argument("cannot normalize a zero or non-finite vector");
  if (field == Field::Real && entries.imag().cwiseAbs().maxCoeff() != 0.0)
    throw std::invalid_argument("real vector has non-zero imaginary part");
  return UnitVector(entries / n, field);
}

UnitVector UnitVector::normalize(const RealVector& entries) {
  return normalize(entries.cast<cplx>(), Field::Real);
}

UnitVector UnitVector::basis(std::size_t dim, std::size_t index, Field field) {
  if (index >= dim) throw std::invalid_argument("basis index out of range");
  Vector v = Vector::Zero(static_cast<Eigen::Index>(dim));
  v(static_cast<Eigen::Index>(index)) = 1.0;
  return UnitVector(std::move(v), field);
}

Grouping trivialGrouping(std::size_t num_subsystems) {
  Grouping g(num_subsystems);
  for (std::size_t k = 0; k < num_subsystems; ++k) g[k] = {k};
  return g;
}

ProductAnsatz::ProductAnsatz(std::vector<UnitVector> parties, Grouping grouping)
    : parties_(std::move(parties)), grouping_(std::move(grouping)) {
  if (parties_.empty()) throw std::invalid_argument("ansatz needs at least one party");
  if (parties_.size() != grouping_.size()) throw std::invalid_argument("grouping and party count differ");
}

ProductAnsatz::ProductAnsatz(std::vector<UnitVector> parties)
    : ProductAnsatz(parties, trivialGrouping(parties.size())) {}

Field ProductAnsatz::field() const {
  return std::all_of(parties_.begin(), parties_.end(), [](const UnitVector& v) { return v.field() == Field::Real; })
             ? Field::Real
             : Field::Complex;
}

Vector ProductAnsatz::fullVector() const {
  Vector v = parties_.front().vec();
  for (std::size_t k = 1; k < parties_.size(); ++k) v = kron(v, parties_[k].vec());
  return v;
}

// ---------------------------------------------------------------------------

Vector kron(const Vector& a, const Vector& b) {
  Vector out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) out.segment(i * b.size(), b.size()) = a(i) * b;
  return out;
}

HermitianOperator kron(const HermitianOperator& a, const HermitianOperator& b) {
  const auto na = static_cast<Eigen::Index>(a.dim());
  const auto nb = static_cast<Eigen::Index>(b.dim());
  Matrix out(na * nb, na * nb);
  for (Eigen::Index i = 0; i < na; ++i)
    for (Eigen::Index j = 0; j < na; ++j) out.block(i * nb, j * nb, nb, nb) = a(i, j) * b.matrix();
  Dims dims = a.subsystem_dims();
  dims.insert(dims.end(), b.subsystem_dims().begin(), b.subsystem_dims().end());
  return HermitianOperator(std::move(out), std::move(dims));
}

DensityMatrix kron(const DensityMatrix& a, const DensityMatrix& b) { return DensityMatrix(kron(a.op(), b.op())); }

HermitianOperator reorderSystems(const HermitianOperator& m, std::span<const std::size_t> perm) {
  const Dims& dims = m.subsystem_dims();
  requirePermutation(perm, dims.size());
  const auto map = permutationMap(dims, perm);
  const auto n = static_cast<Eigen::Index>(m.dim());
  Matrix out(n, n);
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index i = 0; i < n; ++i) out(i, j) = m(map[i], map[j]);
  Dims new_dims(dims.size());
  for (std::size_t k = 0; k < dims.size(); ++k) new_dims[k] = dims[perm[k]];
  return HermitianOperator(std::move(out), std::move(new_dims));
}

DensityMatrix reorderSystems(const DensityMatrix& m, std::span<const std::size_t> perm) {
  return DensityMatrix(reorderSystems(m.op(), perm));
}

HermitianOperator partialTrace(const HermitianOperator& m, std::span<const std::size_t> keep) {
  const Dims& dims = m.subsystem_dims();
  const std::size_t n = dims.size();
  if (keep.empty()) throw std::invalid_argument("partial trace must keep at least one subsystem");
  std::vector<bool> kept(n, false);
  for (auto k : keep) {
    if (k >= n || kept[k]) throw std::invalid_argument("invalid subsystem index set for partial trace");
    kept[k] = true;
  }
  std::vector<std::size_t> perm;
  Dims keep_dims;
  for (std::size_t k = 0; k < n; ++k)
    if (kept[k]) {
      perm.push_back(k);
      keep_dims.push_back(dims[k]);
    }
  for (std::size_t k = 0; k < n; ++k)
    if (!kept[k]) perm.push_back(k);

  const HermitianOperator r = reorderSystems(m, perm);
  const auto K = static_cast<Eigen::Index>(product(keep_dims));
  const auto T = static_cast<Eigen::Index>(m.dim()) / K;
  Matrix out = Matrix::Zero(K, K);
  for (Eigen::Index a = 0; a < K; ++a)
    for (Eigen::Index b = 0; b < K; ++b)
      for (Eigen::Index t = 0; t < T; ++t) out(a, b) += r(a * T + t, b * T + t);
  return HermitianOperator(std::move(out), std::move(keep_dims));
}

DensityMatrix partialTrace(const DensityMatrix& m, std::span<const std::size_t> keep) {
  return DensityMatrix(partialTrace(m.op(), keep));
}

HermitianOperator groupSystems(const HermitianOperator& m, const Grouping& grouping) {
  std::vector<std::size_t> perm;
  Dims party_dims;
  for (const auto& party : grouping) {
    if (party.empty()) throw std::invalid_argument("grouping has an empty party");
    std::size_t d = 1;
    for (auto s : party) {
      if (s >= m.num_subsystems()) throw std::invalid_argument("grouping references a missing subsystem");
      perm.push_back(s);
      d *= m.subsystem_dims()[s];
    }
    party_dims.push_back(d);
  }
  requirePermutation(perm, m.num_subsystems());
  const HermitianOperator r = reorderSystems(m, perm);
  return HermitianOperator(r.matrix(), std::move(party_dims));
}

// ---------------------------------------------------------------------------

Eigenpair topEigenpair(const HermitianOperator& m) {
  if (!allFinite(m.matrix())) throw std::invalid_argument("topEigenpair: non-finite entries");
  Eigen::SelfAdjointEigenSolver<Matrix> es(m.matrix());
  if (es.info() != Eigen::Success) throw std::runtime_error("topEigenpair: eigensolver failed");
  const Eigen::Index top = es.eigenvalues().size() - 1;
  return {es.eigenvalues()(top), UnitVector::normalize(es.eigenvectors().col(top), Field::Complex)};
}

Eigenpair topEigenpair(const RealMatrix& m) {
  if (m.rows() != m.cols() || m.rows() == 0) throw std::invalid_argument("topEigenpair: not square");
  if (!m.allFinite()) throw std::invalid_argument("topEigenpair: non-finite entries");
  Eigen::SelfAdjointEigenSolver<RealMatrix> es(m);
  if (es.info() != Eigen::Success) throw std::runtime_error("topEigenpair: eigensolver failed");
  const Eigen::Index top = es.eigenvalues().size() - 1;
  return {es.eigenvalues()(top), UnitVector::normalize(RealVector(es.eigenvectors().col(top)))};
}

// ---------------------------------------------------------------------------

namespace {
void requireLocalDim(std::size_t d) {
  if (d < 2) throw std::invalid_argument("local dimension must be at least 2");
}
}  // namespace

HermitianOperator identity(std::size_t d) {
  const auto n = static_cast<Eigen::Index>(d);
  return HermitianOperator(Matrix::Identity(n, n));
}

HermitianOperator swapOperator(std::size_t d) {
  requireLocalDim(d);
  const auto n = static_cast<Eigen::Index>(d);
  Matrix f = Matrix::Zero(n * n, n * n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) f(j * n + i, i * n + j) = 1.0;
  return HermitianOperator(std::move(f), {d, d});
}

HermitianOperator symProjector(std::size_t d) {
  const auto n = static_cast<Eigen::Index>(d * d);
  return HermitianOperator((Matrix::Identity(n, n) + swapOperator(d).matrix()) * 0.5, {d, d});
}

HermitianOperator antisymProjector(std::size_t d) {
  const auto n = static_cast<Eigen::Index>(d * d);
  return HermitianOperator((Matrix::Identity(n, n) - swapOperator(d).matrix()) * 0.5, {d, d});
}

Vector phiPlusVector(std::size_t d) {
  requireLocalDim(d);
  const auto n = static_cast<Eigen::Index>(d);
  Vector v = Vector::Zero(n * n);
  for (Eigen::Index i = 0; i < n; ++i) v(i * n + i) = 1.0 / std::sqrt(static_cast<double>(d));
  return v;
}

DensityMatrix phiPlusState(std::size_t d) {
  const Vector v = phiPlusVector(d);
  return DensityMatrix(v * v.adjoint(), {d, d});
}

double productExpectation(const HermitianOperator& rho, const ProductAnsatz& ansatz) {
  const HermitianOperator g = groupSystems(rho, ansatz.grouping());
  for (std::size_t k = 0; k < ansatz.size(); ++k)
    if (ansatz.parties()[k].dim() != g.subsystem_dims()[k])
      throw std::invalid_argument("ansatz party dimension does not match operator");
  const Vector v = ansatz.fullVector();
  return v.dot(g.matrix() * v).real();
}

}  // namespace gme
