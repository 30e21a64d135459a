#pragma once

#include <optional>
#include <string>

#include "gme/linalg.hpp"
#include "gme/states.hpp"

namespace gme {

/// Closed-form GME together with the case of the max formula that attains it.
struct GmeValue {
  double value = 0.0;
  std::string branch;
  std::optional<ProductAnsatz> maximizer_hint;
};

/// Complex GME of omega_{x,y}. Branches, in tie-break order:
///   "orthogonal"        <a|b> = 0, <a*|b> = 0
///   "parallel-complex"  |<a|b>| = 1, <a*|b> = 0
///   "conjugate"         <a|b> = 0, |<a*|b>| = 1
///   "parallel-real"     |<a|b>| = |<a*|b>| = 1
GmeValue gmeOmega(const OmegaParams& p);

/// GME of omega_{x,y} restricted to real product vectors; branches "orthogonal" and
/// "parallel-real".
GmeValue gmeOmegaReal(const OmegaParams& p);

/// max_ij p_ij / 2, attained by |i>|j>. Real and complex values coincide.
GmeValue gmeTau(const TauParams& p);

/// <Phi+|<Phi+| omega (x) omega |Phi+>|Phi+> with Phi+ on AA' and on BB'.
double phiPlusTwoCopyLowerBound(const OmegaParams& p);

/// Crossover along x = 0 where the single-copy GME squared meets the Phi+ (x) Phi+ bound.
struct Crossover {
  std::size_t d = 0;
  double y = 0.0;             // bisection root
  double y_closed_form = 0.0; // root of the quadratic
  double residual = 0.0;      // |local^2 - bound| at y
};

/// Signed difference local^2 - bound at (x = 0, y).
double crossoverGap(double y, std::size_t d);
Crossover crossover(std::size_t d);
double crossoverY(std::size_t d);

}  // namespace gme
