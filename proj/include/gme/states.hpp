#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "gme/linalg.hpp"

namespace gme {

/// Parameters of the (O (x) O)-invariant family omega_{x,y} on d (x) d.
struct OmegaParams {
  double x = 0.0;
  double y = 0.0;
  std::size_t d = 3;

  /// Throws std::invalid_argument unless x, y >= 0, x + y <= 1 and d >= 3.
  void validate() const;
};

/// Mixture of two-level singlets |Psi^-_ij>, i < j.
///
/// Weights are stored in lexicographic pair order (0,1), (0,2), ..., (0,d-1), (1,2), ...
/// using zero-based level indices.
struct TauParams {
  std::vector<double> weights;
  std::size_t d = 3;

  /// d = 3 convention: p_01 = x, p_02 = y, p_12 = 1 - x - y.
  static TauParams fromXY(double x, double y);
  /// Infers d from weights.size() == d(d-1)/2.
  static TauParams fromWeights(std::vector<double> weights);
  static TauParams uniform(std::size_t d);

  /// Zero-based level pair of weight k.
  std::pair<std::size_t, std::size_t> pair(std::size_t k) const;
  void validate() const;
};

struct WernerParams {
  double lambda = 0.0;
  std::size_t d = 3;

  void validate() const;
  /// The same state written as omega_{x,y}: x = (1-l)(d-1)(d+2)/(d(d+1)), y = l.
  OmegaParams asOmega() const;
};

DensityMatrix wernerState(const WernerParams& p);
DensityMatrix omegaState(const OmegaParams& p);
DensityMatrix tauState(const TauParams& p);

/// (|ij> - |ji>)/sqrt 2 on d (x) d, zero-based levels.
Vector singletVector(std::size_t d, std::size_t i, std::size_t j);

/// Separability region of omega_{x,y} for d = 3: x + y >= 2/3 and y <= 1/2 (closed).
bool isOmegaSeparable(const OmegaParams& p);

/// (1/4)(I - (3/4) Y(x)Y - (1/4) Z(x)Z): a real, separable two-qubit state.
DensityMatrix realTwoQubitExample();

}  // namespace gme
