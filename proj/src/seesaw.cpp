#include "gme/seesaw.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "gme/parallel.hpp"
#include "gme/random.hpp"

namespace gme {

namespace {

// Operator regrouped so that party k is tensor factor k, with per-party index tables
// for the contraction against the other parties.
class GroupedProblem {
 public:
  GroupedProblem(const HermitianOperator& rho, const Grouping& grouping)
      : op_(groupSystems(rho, grouping)), party_dims_(op_.subsystem_dims()) {
    const std::size_t n = op_.dim();
    rows_.resize(party_dims_.size());
    for (std::size_t k = 0; k < party_dims_.size(); ++k) {
      std::size_t left = 1, right = 1;
      for (std::size_t l = 0; l < k; ++l) left *= party_dims_[l];
      for (std::size_t l = k + 1; l < party_dims_.size(); ++l) right *= party_dims_[l];
      const std::size_t dk = party_dims_[k];
      auto& table = rows_[k];
      table.resize(n);
      // table[i * others + a] with a = l * right + r
      for (std::size_t i = 0; i < dk; ++i)
        for (std::size_t l = 0; l < left; ++l)
          for (std::size_t r = 0; r < right; ++r)
            table[i * (left * right) + l * right + r] = static_cast<Eigen::Index>((l * dk + i) * right + r);
    }
  }

  const Matrix& matrix() const { return op_.matrix(); }
  const Dims& partyDims() const { return party_dims_; }
  std::size_t parties() const { return party_dims_.size(); }

  // Product of all party vectors except k, in the (left, right) order of the tables.
  Vector others(const std::vector<Vector>& v, std::size_t k) const {
    Vector o = Vector::Ones(1);
    for (std::size_t l = 0; l < v.size(); ++l)
      if (l != k) o = kron(o, v[l]);
    return o;
  }

  Matrix conditional(const std::vector<Vector>& v, std::size_t k) const {
    const Vector o = others(v, k);
    const auto dk = static_cast<Eigen::Index>(party_dims_[k]);
    const auto m = o.size();
    const auto n = static_cast<Eigen::Index>(op_.dim());
    const auto& table = rows_[k];
    const Matrix& rho = op_.matrix();

    // y(i, c) = sum_a conj(o_a) rho(row(i, a), c)
    Matrix y(dk, n);
    for (Eigen::Index c = 0; c < n; ++c) {
      const cplx* col = rho.col(c).data();
      for (Eigen::Index i = 0; i < dk; ++i) {
        const Eigen::Index* idx = table.data() + i * m;
        cplx acc = 0.0;
        for (Eigen::Index a = 0; a < m; ++a) acc += std::conj(o(a)) * col[idx[a]];
        y(i, c) = acc;
      }
    }
    // M(i, j) = sum_b y(i, row(j, b)) o_b
    Matrix out(dk, dk);
    for (Eigen::Index j = 0; j < dk; ++j) {
      const Eigen::Index* idx = table.data() + j * m;
      for (Eigen::Index i = 0; i < dk; ++i) {
        cplx acc = 0.0;
        for (Eigen::Index b = 0; b < m; ++b) acc += y(i, idx[b]) * o(b);
        out(i, j) = acc;
      }
    }
    return (out + out.adjoint()) * 0.5;
  }

  double objective(const std::vector<Vector>& v) const {
    Vector full = v.front();
    for (std::size_t k = 1; k < v.size(); ++k) full = kron(full, v[k]);
    return full.dot(op_.matrix() * full).real();
  }

 private:
  HermitianOperator op_;
  Dims party_dims_;
  std::vector<std::vector<Eigen::Index>> rows_;
};

struct RestartResult {
  std::vector<Vector> parties;
  double value = 0.0;
  int iterations = 0;
  bool converged = false;
  std::vector<double> trace;
};

// Top eigenpair of the (real part of the) conditional operator.
std::pair<double, Vector> ascentStep(const Matrix& m, Field field) {
  if (!m.allFinite()) throw std::runtime_error("seesaw: non-finite conditional operator");
  if (field == Field::Real) {
    Eigen::SelfAdjointEigenSolver<RealMatrix> es(m.real());
    const auto top = es.eigenvalues().size() - 1;
    return {es.eigenvalues()(top), es.eigenvectors().col(top).normalized().cast<cplx>()};
  }
  Eigen::SelfAdjointEigenSolver<Matrix> es(m);
  const auto top = es.eigenvalues().size() - 1;
  return {es.eigenvalues()(top), es.eigenvectors().col(top).normalized()};
}

RestartResult runRestart(const GroupedProblem& problem, std::vector<Vector> v, const OptimizerConfig& config) {
  RestartResult r;
  double f = problem.objective(v);
  if (!std::isfinite(f)) throw std::runtime_error("seesaw: non-finite objective");
  if (config.record_traces) r.trace.push_back(f);
  for (int it = 1; it <= config.max_iterations; ++it) {
    const double previous = f;
    for (std::size_t k = 0; k < problem.parties(); ++k) {
      auto [value, vec] = ascentStep(problem.conditional(v, k), config.field);
      if (!std::isfinite(value)) throw std::runtime_error("seesaw: non-finite objective");
      v[k] = std::move(vec);
      f = value;
      if (config.record_traces) r.trace.push_back(f);
    }
    r.iterations = it;
    if (std::abs(f - previous) < config.objective_tolerance) {
      r.converged = true;
      break;
    }
  }
  r.value = problem.objective(v);
  r.parties = std::move(v);
  return r;
}

std::vector<Vector> startingPoint(const GroupedProblem& problem, const OptimizerConfig& config, std::size_t index) {
  std::vector<Vector> v;
  if (index < config.warm_starts.size()) {
    const ProductAnsatz& w = config.warm_starts[index];
    if (w.size() != problem.parties()) throw std::invalid_argument("warm start has the wrong number of parties");
    if (config.field == Field::Real && w.field() != Field::Real)
      throw std::invalid_argument("complex warm start given to a real-mode optimization");
    for (std::size_t k = 0; k < w.size(); ++k) {
      if (w.parties()[k].dim() != problem.partyDims()[k]) throw std::invalid_argument("warm start dimension mismatch");
      v.push_back(w.parties()[k].vec());
    }
    return v;
  }
  Rng rng(deriveSeed(config.seed, index));
  for (std::size_t d : problem.partyDims()) v.push_back(randomUnitVector(d, config.field, rng).vec());
  return v;
}

UnitVector toUnit(const Vector& v, Field field) {
  if (field == Field::Real) return UnitVector::normalize(RealVector(v.real()));
  return UnitVector::normalize(v, Field::Complex);
}

}  // namespace

void OptimizerConfig::validate() const {
  if (restarts < 0 || restarts + static_cast<int>(warm_starts.size()) < 1)
    throw std::invalid_argument("optimizer needs at least one restart");
  if (max_iterations < 1) throw std::invalid_argument("max_iterations must be positive");
  if (!(objective_tolerance > 0.0)) throw std::invalid_argument("objective_tolerance must be positive");
}

HermitianOperator conditionalOperator(const HermitianOperator& rho, const ProductAnsatz& ansatz, std::size_t party) {
  const GroupedProblem problem(rho, ansatz.grouping());
  if (party >= problem.parties()) throw std::invalid_argument("party index out of range");
  std::vector<Vector> v;
  for (std::size_t k = 0; k < ansatz.size(); ++k) {
    if (ansatz.parties()[k].dim() != problem.partyDims()[k])
      throw std::invalid_argument("ansatz party dimension does not match operator");
    v.push_back(ansatz.parties()[k].vec());
  }
  return HermitianOperator(problem.conditional(v, party));
}

GmeEstimate seesawMaximize(const HermitianOperator& rho, const Grouping& grouping, const OptimizerConfig& config) {
  config.validate();
  const GroupedProblem problem(rho, grouping);
  const std::size_t total = config.warm_starts.size() + static_cast<std::size_t>(config.restarts);

  std::vector<RestartResult> results(total);
  parallelFor(total, config.threads, [&](std::size_t i) {
    results[i] = runRestart(problem, startingPoint(problem, config, i), config);
  });

  std::size_t best = 0;
  for (std::size_t i = 1; i < total; ++i)
    if (results[i].value > results[best].value) best = i;

  Eigen::SelfAdjointEigenSolver<Matrix> es(problem.matrix(), Eigen::EigenvaluesOnly);
  std::vector<UnitVector> parties;
  for (const auto& v : results[best].parties) parties.push_back(toUnit(v, config.field));

  GmeEstimate out{
      .best_value = results[best].value,
      .best_ansatz = ProductAnsatz(std::move(parties), grouping),
      .upper_bound = es.eigenvalues().maxCoeff(),
      .restarts_used = static_cast<int>(total),
      .iterations_per_restart = {},
      .converged = results[best].converged,
      .best_restart = static_cast<int>(best),
      .traces = {},
  };
  for (auto& r : results) {
    out.iterations_per_restart.push_back(r.iterations);
    if (config.record_traces) out.traces.push_back(std::move(r.trace));
  }
  return out;
}

Grouping twoCopyGrouping() { return {{0, 2}, {1, 3}}; }

TwoCopyEstimate twoCopyGme(const DensityMatrix& rho, const DensityMatrix& sigma, const OptimizerConfig& config) {
  if (rho.subsystem_dims().size() != 2 || sigma.subsystem_dims().size() != 2)
    throw std::invalid_argument("twoCopyGme needs bipartite states");
  if (rho.subsystem_dims() != sigma.subsystem_dims())
    throw std::invalid_argument("twoCopyGme needs states with equal local dimensions");

  OptimizerConfig single = config;
  single.restarts = kSingleCopyRestarts;
  single.warm_starts.clear();
  single.record_traces = false;
  GmeEstimate first = seesawMaximize(rho.op(), trivialGrouping(2), single);
  GmeEstimate second = seesawMaximize(sigma.op(), trivialGrouping(2), single);

  const auto& a = first.best_ansatz.parties();
  const auto& b = second.best_ansatz.parties();
  OptimizerConfig joint_config = config;
  joint_config.warm_starts.clear();
  joint_config.warm_starts.emplace_back(
      std::vector<UnitVector>{UnitVector::normalize(kron(a[0].vec(), b[0].vec()), config.field),
                              UnitVector::normalize(kron(a[1].vec(), b[1].vec()), config.field)},
      twoCopyGrouping());
  for (const auto& w : config.warm_starts) joint_config.warm_starts.push_back(w);

  GmeEstimate joint = seesawMaximize(kron(rho.op(), sigma.op()), twoCopyGrouping(), joint_config);
  return {std::move(joint), std::move(first), std::move(second)};
}

double gradientCheck(const HermitianOperator& rho, const ProductAnsatz& ansatz, std::uint64_t seed, int tangents) {
  constexpr double step = 1e-5;
  Rng rng(deriveSeed(seed, 0x67726164));
  double worst = 0.0;
  for (int t = 0; t < tangents; ++t) {
    std::vector<Vector> dirs;
    double analytic = 0.0;
    for (std::size_t k = 0; k < ansatz.size(); ++k) {
      const UnitVector& v = ansatz.parties()[k];
      Vector d = randomUnitVector(v.dim(), v.field(), rng).vec();
      d -= v.vec() * v.vec().dot(d);
      if (v.field() == Field::Real) d = d.real().cast<cplx>();
      dirs.push_back(d);
      const HermitianOperator m = conditionalOperator(rho, ansatz, k);
      analytic += 2.0 * d.dot(m.matrix() * v.vec()).real();
    }
    auto shifted = [&](double eps) {
      std::vector<UnitVector> parties;
      for (std::size_t k = 0; k < ansatz.size(); ++k) {
        const UnitVector& v = ansatz.parties()[k];
        parties.push_back(UnitVector::normalize(v.vec() + eps * dirs[k], v.field()));
      }
      return productExpectation(rho, ProductAnsatz(std::move(parties), ansatz.grouping()));
    };
    const double numeric = (shifted(step) - shifted(-step)) / (2.0 * step);
    worst = std::max(worst, std::abs(analytic - numeric) / std::max(std::abs(analytic), 1e-3));
  }
  return worst;
}

}  // namespace gme
