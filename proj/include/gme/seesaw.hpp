#pragma once

#include <cstdint>
#include <vector>

#include "gme/linalg.hpp"

namespace gme {

struct OptimizerConfig {
  int restarts = 64;
  int max_iterations = 1000;          // sweeps over all parties, per restart
  double objective_tolerance = 1e-12; // absolute change of the objective over one sweep
  std::uint64_t seed = 0;
  Field field = Field::Complex;
  /// Deterministic starting points, run before the random restarts (indices 0..n-1).
  std::vector<ProductAnsatz> warm_starts;
  /// Keep the objective after every single-party update of every restart.
  bool record_traces = false;
  /// Worker threads for the restarts; 0 means defaultThreadCount().
  unsigned threads = 1;

  void validate() const;
};

struct GmeEstimate {
  double best_value = 0.0;
  ProductAnsatz best_ansatz;
  /// Largest eigenvalue of the operator.
  double upper_bound = 0.0;
  int restarts_used = 0;
  std::vector<int> iterations_per_restart;
  /// The best restart stopped on the objective tolerance rather than max_iterations.
  bool converged = false;
  int best_restart = 0;
  std::vector<std::vector<double>> traces;
};

/// Operator M on `party` with <v|M|v> equal to the objective when that party's vector
/// is replaced by v and the other parties stay fixed.
HermitianOperator conditionalOperator(const HermitianOperator& rho, const ProductAnsatz& ansatz, std::size_t party);

/// Multi-start alternating top-eigenvector ascent of <a_1..a_N| rho |a_1..a_N>.
///
/// Every single-party update replaces the party vector with the top eigenvector of its
/// conditional operator (real mode: of the real part of it), so the objective never
/// decreases within a restart. Restarts are seeded from (config.seed, restart index) and
/// reduced by value with ties going to the lower index, so the result does not depend on
/// the thread count.
GmeEstimate seesawMaximize(const HermitianOperator& rho, const Grouping& grouping, const OptimizerConfig& config);

/// Subsystem order A B A' B' grouped as (A A') | (B B').
Grouping twoCopyGrouping();

struct TwoCopyEstimate {
  GmeEstimate joint;   // over rho (x) sigma with the two-copy grouping
  GmeEstimate first;   // single-copy estimate of rho
  GmeEstimate second;  // single-copy estimate of sigma
};

/// Restarts used for the single-copy estimates inside twoCopyGme.
inline constexpr int kSingleCopyRestarts = 64;

/// Lower bound on the GME of rho (x) sigma over product vectors on AA' and BB'.
///
/// Single-copy maximizers of rho and sigma are computed first (kSingleCopyRestarts
/// restarts, same field and seed) and their product is used as the first warm start, so
/// joint.best_value >= first.best_value * second.best_value holds literally.
/// config.warm_starts follow it.
TwoCopyEstimate twoCopyGme(const DensityMatrix& rho, const DensityMatrix& sigma, const OptimizerConfig& config);

/// Worst relative deviation between the analytic directional derivative of the
/// objective and a central finite difference (step 1e-5) over `tangents` random
/// tangent directions. Real ansatzes get real tangents.
double gradientCheck(const HermitianOperator& rho, const ProductAnsatz& ansatz, std::uint64_t seed = 0,
                     int tangents = 20);

}  // namespace gme
