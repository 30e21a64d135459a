#include "gme/lab.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <limits>
#include <mutex>
#include <stdexcept>

#include "gme/parallel.hpp"

namespace gme {

std::string_view to_string(Family f) { return f == Family::Omega ? "omega" : "tau"; }

std::string_view to_string(ScanMode m) {
  switch (m) {
    case ScanMode::Complex: return "complex";
    case ScanMode::Real: return "real";
    case ScanMode::Mixed: return "mixed";
  }
  return "?";
}

Family parseFamily(std::string_view s) {
  if (s == "omega") return Family::Omega;
  if (s == "tau") return Family::Tau;
  throw std::invalid_argument("unknown family '" + std::string(s) + "'");
}

ScanMode parseScanMode(std::string_view s) {
  if (s == "complex") return ScanMode::Complex;
  if (s == "real") return ScanMode::Real;
  if (s == "mixed") return ScanMode::Mixed;
  throw std::invalid_argument("unknown mode '" + std::string(s) + "'");
}

OptimizerConfig ScanConfig::defaultTwoCopyOptimizer() {
  OptimizerConfig c;
  c.restarts = 256;
  return c;
}

std::size_t ScanConfig::intervals() const {
  if (!(step > 0.0) || step > 1.0) throw std::invalid_argument("scan step must lie in (0, 1]");
  const double n = std::round(1.0 / step);
  if (std::abs(n * step - 1.0) > 1e-9) throw std::invalid_argument("scan step must divide 1 into an integer grid");
  return static_cast<std::size_t>(n);
}

void ScanConfig::validate() const {
  intervals();
  if (!(threshold > 0.0)) throw std::invalid_argument("threshold must be positive");
  if (family == Family::Tau && d != 3) throw std::invalid_argument("tau scans are defined for d = 3");
  if (d < 3) throw std::invalid_argument("scans need d >= 3");
  optimizer.validate();
}

std::size_t simplexGridSize(std::size_t intervals) { return (intervals + 1) * (intervals + 2) / 2; }

bool isViolation(double local_gme_squared, double gap, double threshold) {
  return gap > Tolerances::violation_absolute && gap > threshold * local_gme_squared;
}

DensityMatrix familyState(Family family, double x, double y, std::size_t d) {
  if (family == Family::Omega) return omegaState(OmegaParams{x, y, d});
  return tauState(TauParams::fromXY(x, y));
}

namespace {

// Phi+ on AA' and on BB': the two-copy witness behind the analytic lower bound.
ProductAnsatz phiPlusPairAnsatz(std::size_t d) {
  return ProductAnsatz({UnitVector(phiPlusVector(d), Field::Real), UnitVector(phiPlusVector(d), Field::Real)},
                       twoCopyGrouping());
}

}  // namespace

namespace {

ScanRecord evaluate(const ScanConfig& config, double x, double y, double rest, std::uint64_t seed) {
  ScanRecord rec;
  rec.x = x;
  rec.y = y;
  rec.mode = config.mode;

  const bool real_local = config.mode == ScanMode::Real;
  GmeValue local;
  std::optional<DensityMatrix> rho;
  if (config.family == Family::Omega) {
    const OmegaParams p{x, y, config.d};
    local = real_local ? gmeOmegaReal(p) : gmeOmega(p);
    if (config.d == 3) rec.separable = isOmegaSeparable(p);
    rho = omegaState(p);
  } else {
    const TauParams p{{x, y, rest}, 3};
    local = gmeTau(p);
    rho = tauState(p);
  }
  rec.local_gme = local.value;
  rec.local_gme_squared = local.value * local.value;
  rec.branch = local.branch;

  OptimizerConfig opt = config.optimizer;
  opt.seed = seed;
  opt.field = config.mode == ScanMode::Complex ? Field::Complex : Field::Real;
  opt.threads = 1;
  opt.record_traces = false;
  opt.warm_starts.push_back(phiPlusPairAnsatz(config.d));

  try {
    const TwoCopyEstimate est = twoCopyGme(*rho, *rho, opt);
    rec.two_copy_gme = est.joint.best_value;
    rec.gap = rec.two_copy_gme - rec.local_gme_squared;
    rec.violation = isViolation(rec.local_gme_squared, rec.gap, config.threshold);
    rec.converged = est.joint.converged;
    rec.witness = est.joint.best_ansatz;
  } catch (const std::exception& e) {
    rec.two_copy_gme = std::numeric_limits<double>::quiet_NaN();
    rec.gap = std::numeric_limits<double>::quiet_NaN();
    rec.violation = false;
    rec.converged = false;
    rec.error = e.what();
  }
  return rec;
}

}  // namespace

ScanRecord scanPoint(const ScanConfig& config, std::size_t ix, std::size_t iy) {
  const std::size_t n = config.intervals();
  if (ix + iy > n) throw std::invalid_argument("grid point outside the simplex");
  const double scale = static_cast<double>(n);
  ScanRecord rec = evaluate(config, static_cast<double>(ix) / scale, static_cast<double>(iy) / scale,
                            static_cast<double>(n - ix - iy) / scale, deriveSeed(config.optimizer.seed, ix, iy));
  rec.ix = ix;
  rec.iy = iy;
  return rec;
}

ScanRecord evaluatePoint(const ScanConfig& config, double x, double y) {
  if (!(x >= 0.0 && y >= 0.0 && x + y <= 1.0 + Tolerances::distribution))
    throw std::invalid_argument("point outside the simplex");
  if (config.family == Family::Tau && config.d != 3) throw std::invalid_argument("tau family needs d = 3");
  std::uint64_t bits_x = 0, bits_y = 0;
  std::memcpy(&bits_x, &x, sizeof x);
  std::memcpy(&bits_y, &y, sizeof y);
  return evaluate(config, x, y, std::max(0.0, 1.0 - x - y), deriveSeed(config.optimizer.seed, bits_x, bits_y));
}

std::vector<ScanRecord> scanFamily(const ScanConfig& config, const ScanHooks& hooks) {
  config.validate();
  const std::size_t n = config.intervals();
  std::vector<std::pair<std::size_t, std::size_t>> points;
  for (std::size_t ix = 0; ix <= n; ++ix)
    for (std::size_t iy = 0; ix + iy <= n; ++iy) points.emplace_back(ix, iy);

  std::vector<std::optional<ScanRecord>> slots(points.size());
  std::mutex hook_mutex;
  parallelFor(points.size(), config.threads, [&](std::size_t i) {
    if (hooks.cancel && hooks.cancel->load()) return;
    slots[i] = scanPoint(config, points[i].first, points[i].second);
    if (hooks.on_record) {
      std::lock_guard lock(hook_mutex);
      hooks.on_record(*slots[i]);
    }
  });

  std::vector<ScanRecord> out;
  out.reserve(points.size());
  for (auto& s : slots)
    if (s) out.push_back(std::move(*s));
  return out;
}

std::vector<ScanRecord> mixedModeScan(ScanConfig config, const ScanHooks& hooks) {
  config.mode = ScanMode::Mixed;
  return scanFamily(config, hooks);
}

// ---------------------------------------------------------------------------

DensityMatrix randomSeparableState(std::size_t d, Rng& rng, int* terms) {
  std::uniform_int_distribution<int> count(2, 9);
  std::exponential_distribution<double> weight(1.0);
  const int k = count(rng);
  if (terms) *terms = k;
  const auto n = static_cast<Eigen::Index>(d * d);
  Matrix rho = Matrix::Zero(n, n);
  double total = 0.0;
  for (int t = 0; t < k; ++t) {
    const double w = weight(rng);
    const Vector v = kron(randomUnitVector(d, Field::Complex, rng).vec(), randomUnitVector(d, Field::Complex, rng).vec());
    rho += w * v * v.adjoint();
    total += w;
  }
  rho /= total;
  return DensityMatrix((rho + rho.adjoint()) * 0.5, {d, d});
}

SeparableReport verifySeparableMultiplicativity(int trials, std::uint64_t seed, OptimizerConfig optimizer,
                                                double tolerance) {
  if (trials < 1) throw std::invalid_argument("need at least one trial");
  SeparableReport report;
  report.trials = trials;
  report.tolerance = tolerance;
  report.results.resize(static_cast<std::size_t>(trials));
  const unsigned threads = optimizer.threads;
  optimizer.threads = 1;
  optimizer.record_traces = false;

  parallelFor(report.results.size(), threads, [&](std::size_t t) {
    SeparableTrial& trial = report.results[t];
    trial.seed = deriveSeed(seed, t, 0x736570);
    Rng rng(trial.seed);
    const DensityMatrix rho = randomSeparableState(3, rng, &trial.terms);
    const DensityMatrix sigma = randomDensityMatrix({3, 3}, rng);
    OptimizerConfig opt = optimizer;
    opt.seed = trial.seed;
    const TwoCopyEstimate est = twoCopyGme(rho, sigma, opt);
    trial.rho_gme = est.first.best_value;
    trial.sigma_gme = est.second.best_value;
    trial.joint_gme = est.joint.best_value;
    trial.deviation = std::abs(trial.joint_gme - trial.rho_gme * trial.sigma_gme);
  });

  for (const auto& trial : report.results) {
    report.max_deviation = std::max(report.max_deviation, trial.deviation);
    if (!(trial.deviation <= tolerance)) report.counterexamples.push_back(trial);
  }
  return report;
}

RealCounterexampleReport realCounterexampleCheck(OptimizerConfig optimizer) {
  const DensityMatrix rho = realTwoQubitExample();
  RealCounterexampleReport r;

  OptimizerConfig real = optimizer;
  real.field = Field::Real;
  real.warm_starts.clear();
  const TwoCopyEstimate re = twoCopyGme(rho, rho, real);
  r.local_real = re.first.best_value;
  r.two_copy_real = re.joint.best_value;
  r.gap = r.two_copy_real - r.local_real * r.local_real;

  const UnitVector singlet(singletVector(2, 0, 1), Field::Real);
  const ProductAnsatz witness({singlet, singlet}, twoCopyGrouping());
  r.witness_value = productExpectation(kron(rho, rho).op(), witness);

  OptimizerConfig cplx_cfg = optimizer;
  cplx_cfg.field = Field::Complex;
  cplx_cfg.warm_starts.clear();
  const TwoCopyEstimate ce = twoCopyGme(rho, rho, cplx_cfg);
  r.local_complex = ce.first.best_value;
  r.two_copy_complex = ce.joint.best_value;

  r.local_ok = std::abs(r.local_real - 5.0 / 16.0) <= 1e-9;
  r.two_copy_ok = r.two_copy_real >= 13.0 / 128.0 - 1e-9;
  r.gap_ok = r.gap >= 1.0 / 256.0 - 1e-8;
  r.witness_ok = std::abs(r.witness_value - 13.0 / 128.0) <= 1e-12;
  r.complex_multiplicative = std::abs(r.two_copy_complex - r.local_complex * r.local_complex) <= 1e-6;
  return r;
}

}  // namespace gme
