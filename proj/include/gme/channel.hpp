#pragma once

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "gme/random.hpp"
#include "gme/seesaw.hpp"

namespace gme {

/// Positive semidefinite operator on A (x) B encoding a CP map A -> B via
/// J = (id (x) N)(phi+) with the unnormalized phi+ = sum_ij |ii><jj|.
/// Trace preservation is not required.
class ChoiOperator {
 public:
  explicit ChoiOperator(HermitianOperator op);

  const HermitianOperator& op() const { return op_; }
  std::size_t inputDim() const { return op_.subsystem_dims()[0]; }
  std::size_t outputDim() const { return op_.subsystem_dims()[1]; }

 private:
  HermitianOperator op_;
};

using LinearMap = std::function<Matrix(const Matrix&)>;

/// N(X) = Tr_A[(X^T (x) I) J]. For Hermitian X, X^T is the entrywise conjugate X*.
Matrix applyFromChoi(const ChoiOperator& choi, const Matrix& input);
HermitianOperator applyFromChoi(const ChoiOperator& choi, const HermitianOperator& input);

/// J = sum_ij |i><j| (x) N(|i><j|). Throws if J is not PSD (the map is not CP).
ChoiOperator channelToChoi(const LinearMap& map, std::size_t input_dim);

/// sum_k K_k X K_k^H
Matrix applyKraus(const std::vector<Matrix>& kraus, const Matrix& input);
ChoiOperator choiFromKraus(const std::vector<Matrix>& kraus);
/// `rank` Ginibre Kraus operators of shape output_dim x input_dim (not trace preserving).
std::vector<Matrix> randomKraus(std::size_t input_dim, std::size_t output_dim, std::size_t rank, Rng& rng);

struct GammaInfinity {
  double value = 0.0;          // larger of the two paths
  double gme_path = 0.0;       // GME of J over |a>|b>
  double channel_path = 0.0;   // max <b| N(|a><a|) |b>
  double disagreement = 0.0;
  UnitVector input;            // |a> for the channel
  UnitVector output;           // |b>
};

/// Maximal output infinity-purity of the map encoded by J, computed both as the GME of J
/// and by alternating maximization of <b|N(|a><a|)|b>. Throws std::runtime_error when the
/// two paths differ by more than 1e-6.
GammaInfinity gammaInfinity(const ChoiOperator& choi, const OptimizerConfig& config);

/// Plain-text Choi format: first line "dA dB", then dA*dB rows of dA*dB entries "re+imj".
ChoiOperator readChoi(std::istream& in);
ChoiOperator readChoiFile(const std::string& path);
void writeChoi(std::ostream& out, const ChoiOperator& choi);

}  // namespace gme
