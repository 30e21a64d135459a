#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "gme/config.hpp"

namespace gme {

using Dims = std::vector<std::size_t>;

/// Dense square complex matrix that is Hermitian within Tolerances::hermiticity,
/// tagged with the dimensions of the subsystems it acts on.
///
/// The stored matrix is exactly Hermitian: the constructor checks the input and
/// then replaces it with (A + A^H) / 2.
class HermitianOperator {
 public:
  HermitianOperator(Matrix entries, Dims subsystem_dims);
  /// Single-subsystem operator.
  explicit HermitianOperator(Matrix entries);

  const Matrix& matrix() const { return entries_; }
  std::size_t dim() const { return static_cast<std::size_t>(entries_.rows()); }
  const Dims& subsystem_dims() const { return dims_; }
  std::size_t num_subsystems() const { return dims_.size(); }

  cplx operator()(Eigen::Index i, Eigen::Index j) const { return entries_(i, j); }
  double trace() const { return entries_.trace().real(); }

 private:
  Matrix entries_;
  Dims dims_;
};

/// Positive semidefinite, unit-trace Hermitian operator.
class DensityMatrix {
 public:
  explicit DensityMatrix(HermitianOperator op);
  DensityMatrix(Matrix entries, Dims subsystem_dims);

  const HermitianOperator& op() const { return op_; }
  const Matrix& matrix() const { return op_.matrix(); }
  std::size_t dim() const { return op_.dim(); }
  const Dims& subsystem_dims() const { return op_.subsystem_dims(); }

  operator const HermitianOperator&() const { return op_; }

 private:
  HermitianOperator op_;
};

/// Unit-norm vector. Real vectors have identically zero imaginary parts.
class UnitVector {
 public:
  UnitVector(Vector entries, Field field);
  /// Rescales to unit norm; throws on a zero or non-finite vector.
  static UnitVector normalize(Vector entries, Field field);
  static UnitVector normalize(const RealVector& entries);
  static UnitVector basis(std::size_t dim, std::size_t index, Field field = Field::Real);

  const Vector& vec() const { return entries_; }
  std::size_t dim() const { return static_cast<std::size_t>(entries_.size()); }
  Field field() const { return field_; }

 private:
  Vector entries_;
  Field field_;
};

/// Party -> list of physical subsystem indices. Every subsystem appears exactly once.
using Grouping = std::vector<std::vector<std::size_t>>;

/// One party per subsystem, in order.
Grouping trivialGrouping(std::size_t num_subsystems);

/// A product vector |a_1> (x) ... (x) |a_N> over the parties of a grouping.
class ProductAnsatz {
 public:
  ProductAnsatz(std::vector<UnitVector> parties, Grouping grouping);
  /// Trivial grouping: party k is subsystem k.
  explicit ProductAnsatz(std::vector<UnitVector> parties);

  const std::vector<UnitVector>& parties() const { return parties_; }
  const Grouping& grouping() const { return grouping_; }
  std::size_t size() const { return parties_.size(); }
  /// Real iff every party is real.
  Field field() const;

  /// Kronecker product of the party vectors (grouped ordering).
  Vector fullVector() const;

 private:
  std::vector<UnitVector> parties_;
  Grouping grouping_;
};

// ---------------------------------------------------------------------------
// Operations

HermitianOperator kron(const HermitianOperator& a, const HermitianOperator& b);
DensityMatrix kron(const DensityMatrix& a, const DensityMatrix& b);
Vector kron(const Vector& a, const Vector& b);

/// Traces out every subsystem not in `keep`. Kept subsystems retain their relative order.
HermitianOperator partialTrace(const HermitianOperator& m, std::span<const std::size_t> keep);
DensityMatrix partialTrace(const DensityMatrix& m, std::span<const std::size_t> keep);

/// New subsystem k is old subsystem perm[k].
HermitianOperator reorderSystems(const HermitianOperator& m, std::span<const std::size_t> perm);
DensityMatrix reorderSystems(const DensityMatrix& m, std::span<const std::size_t> perm);

/// Reorders subsystems so that each party's subsystems are contiguous and merges
/// them; the result has one subsystem per party.
HermitianOperator groupSystems(const HermitianOperator& m, const Grouping& grouping);

struct Eigenpair {
  double value;
  UnitVector vector;
};

/// Largest eigenvalue and a corresponding unit eigenvector.
Eigenpair topEigenpair(const HermitianOperator& m);
/// Same for a real symmetric matrix; the returned vector is real.
Eigenpair topEigenpair(const RealMatrix& m);

HermitianOperator identity(std::size_t d);
HermitianOperator swapOperator(std::size_t d);
HermitianOperator symProjector(std::size_t d);
HermitianOperator antisymProjector(std::size_t d);
/// Normalized maximally entangled state (1/d) sum_ij |ii><jj|.
DensityMatrix phiPlusState(std::size_t d);
/// (1/sqrt d) sum_i |ii>.
Vector phiPlusVector(std::size_t d);

/// <a_1,...,a_N| rho |a_1,...,a_N> under the ansatz grouping.
double productExpectation(const HermitianOperator& rho, const ProductAnsatz& ansatz);

/// max_ij |A_ij - B_ij|
double maxAbsDiff(const Matrix& a, const Matrix& b);

std::size_t product(std::span<const std::size_t> dims);

}  // namespace gme
