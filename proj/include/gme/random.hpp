#pragma once

#include <cstdint>
#include <random>

#include "gme/linalg.hpp"

namespace gme {

using Rng = std::mt19937_64;

/// Stateless seed mixing so that per-restart / per-point streams are independent of
/// execution order.
std::uint64_t deriveSeed(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0);

/// Haar-random unit vector (complex), or uniform on the real sphere.
UnitVector randomUnitVector(std::size_t dim, Field field, Rng& rng);

/// Haar-random unitary via QR of a complex Ginibre matrix with phase correction.
Matrix randomUnitary(std::size_t d, Rng& rng);
/// Haar-random real orthogonal matrix via QR with sign correction.
RealMatrix randomOrthogonal(std::size_t d, Rng& rng);

/// Random full-rank density matrix rho = G G^H / Tr(G G^H).
DensityMatrix randomDensityMatrix(const Dims& dims, Rng& rng);

/// Random Hermitian matrix with i.i.d. Gaussian entries (GUE-like).
HermitianOperator randomHermitian(const Dims& dims, Rng& rng);

}  // namespace gme
