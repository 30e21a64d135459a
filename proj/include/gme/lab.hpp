#pragma once

#include <atomic>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "gme/analytic.hpp"
#include "gme/random.hpp"
#include "gme/seesaw.hpp"
#include "gme/states.hpp"

namespace gme {

enum class Family { Omega, Tau };

/// Field of the single-copy (local) value and of the two-copy optimization.
///   Complex: complex / complex
///   Real:    real / real
///   Mixed:   complex local, real two-copy (flags are sound complex witnesses)
enum class ScanMode { Complex, Real, Mixed };

std::string_view to_string(Family f);
std::string_view to_string(ScanMode m);
Family parseFamily(std::string_view s);
ScanMode parseScanMode(std::string_view s);

struct ScanRecord {
  std::size_t ix = 0, iy = 0;  // grid indices, x = ix * step
  double x = 0.0;
  double y = 0.0;
  ScanMode mode = ScanMode::Complex;
  double local_gme = 0.0;
  double local_gme_squared = 0.0;
  double two_copy_gme = 0.0;
  double gap = 0.0;
  bool violation = false;
  std::optional<bool> separable;
  std::string branch;
  bool converged = false;
  /// Best two-copy product vector, grouped (A A') | (B B') over A B A' B'.
  std::optional<ProductAnsatz> witness;
  /// Non-empty when the optimizer failed at this point.
  std::string error;
};

struct ScanConfig {
  Family family = Family::Omega;
  double step = 0.025;
  ScanMode mode = ScanMode::Complex;
  double threshold = Tolerances::default_violation_relative;
  OptimizerConfig optimizer = defaultTwoCopyOptimizer();
  std::size_t d = 3;
  /// Workers over grid points; 0 means defaultThreadCount().
  unsigned threads = 0;

  static OptimizerConfig defaultTwoCopyOptimizer();
  /// Number of grid intervals per unit; throws unless step divides 1.
  std::size_t intervals() const;
  void validate() const;
};

/// Number of points of the triangular grid {x, y >= 0, x + y <= 1} for a step.
std::size_t simplexGridSize(std::size_t intervals);

/// gap / local^2 > threshold and gap > Tolerances::violation_absolute.
bool isViolation(double local_gme_squared, double gap, double threshold);

struct ScanHooks {
  /// Points not yet started when this becomes true are skipped.
  const std::atomic<bool>* cancel = nullptr;
  /// Called after each finished point (from worker threads, serialized).
  std::function<void(const ScanRecord&)> on_record;
};

/// State of the family at one grid point (tau uses p01 = x, p02 = y, p12 = 1 - x - y).
DensityMatrix familyState(Family family, double x, double y, std::size_t d);

/// Evaluates one grid point.
ScanRecord scanPoint(const ScanConfig& config, std::size_t ix, std::size_t iy);

/// Evaluates an arbitrary point of the simplex (grid indices are left at zero).
ScanRecord evaluatePoint(const ScanConfig& config, double x, double y);

/// Two-copy scan over the simplex grid, records ordered by (ix, iy).
std::vector<ScanRecord> scanFamily(const ScanConfig& config, const ScanHooks& hooks = {});

/// scanFamily with the mode forced to ScanMode::Mixed.
std::vector<ScanRecord> mixedModeScan(ScanConfig config, const ScanHooks& hooks = {});

// ---------------------------------------------------------------------------

struct SeparableTrial {
  std::uint64_t seed = 0;
  int terms = 0;
  double rho_gme = 0.0;
  double sigma_gme = 0.0;
  double joint_gme = 0.0;
  double deviation = 0.0;
};

struct SeparableReport {
  int trials = 0;
  double max_deviation = 0.0;
  double tolerance = 1e-6;
  std::vector<SeparableTrial> results;
  /// Trials whose deviation exceeds the tolerance.
  std::vector<SeparableTrial> counterexamples;
  bool passed() const { return counterexamples.empty(); }
};

/// Random fully separable two-qutrit state: 2..9 Haar product terms with random weights.
DensityMatrix randomSeparableState(std::size_t d, Rng& rng, int* terms = nullptr);

/// Checks |GME(rho (x) sigma) - GME(rho) GME(sigma)| <= tolerance for random separable rho
/// and random sigma.
SeparableReport verifySeparableMultiplicativity(int trials, std::uint64_t seed,
                                                OptimizerConfig optimizer = ScanConfig::defaultTwoCopyOptimizer(),
                                                double tolerance = 1e-6);

struct RealCounterexampleReport {
  double local_real = 0.0;
  double two_copy_real = 0.0;
  double gap = 0.0;
  double witness_value = 0.0;  // singlet (x) singlet on AA' | BB'
  double local_complex = 0.0;
  double two_copy_complex = 0.0;
  bool local_ok = false;
  bool two_copy_ok = false;
  bool gap_ok = false;
  bool witness_ok = false;
  bool complex_multiplicative = false;
  bool passed() const { return local_ok && two_copy_ok && gap_ok && witness_ok && complex_multiplicative; }
};

/// Real-mode non-multiplicativity of realTwoQubitExample(): local 5/16, two-copy 13/128.
RealCounterexampleReport realCounterexampleCheck(OptimizerConfig optimizer = ScanConfig::defaultTwoCopyOptimizer());

}  // namespace gme
