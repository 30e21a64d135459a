#include "gme/channel.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "gme/parallel.hpp"

namespace gme {

ChoiOperator::ChoiOperator(HermitianOperator op) : op_(std::move(op)) {
  if (op_.num_subsystems() != 2) throw std::invalid_argument("Choi operator must be bipartite (A, B)");
  Eigen::SelfAdjointEigenSolver<Matrix> es(op_.matrix(), Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -Tolerances::psd)
    throw std::invalid_argument("Choi operator is not positive semidefinite");
}

Matrix applyFromChoi(const ChoiOperator& choi, const Matrix& input) {
  const auto da = static_cast<Eigen::Index>(choi.inputDim());
  const auto db = static_cast<Eigen::Index>(choi.outputDim());
  if (input.rows() != da || input.cols() != da) throw std::invalid_argument("input dimension does not match Choi operator");
  const Matrix& j = choi.op().matrix();
  // N(X)_{b b'} = sum_{a a'} X_{a' a} J_{(a' b), (a b')}
  Matrix out = Matrix::Zero(db, db);
  for (Eigen::Index a = 0; a < da; ++a)
    for (Eigen::Index ap = 0; ap < da; ++ap) {
      const cplx x = input(ap, a);
      if (x == cplx(0.0)) continue;
      out += x * j.block(ap * db, a * db, db, db);
    }
  return out;
}

HermitianOperator applyFromChoi(const ChoiOperator& choi, const HermitianOperator& input) {
  return HermitianOperator(applyFromChoi(choi, input.matrix()));
}

ChoiOperator channelToChoi(const LinearMap& map, std::size_t input_dim) {
  const auto da = static_cast<Eigen::Index>(input_dim);
  if (da < 1) throw std::invalid_argument("input dimension must be positive");
  Eigen::Index db = -1;
  Matrix j;
  for (Eigen::Index i = 0; i < da; ++i)
    for (Eigen::Index k = 0; k < da; ++k) {
      Matrix unit = Matrix::Zero(da, da);
      unit(i, k) = 1.0;
      const Matrix image = map(unit);
      if (db < 0) {
        db = image.rows();
        if (db < 1 || image.cols() != db) throw std::invalid_argument("map output must be square");
        j = Matrix::Zero(da * db, da * db);
      }
      if (image.rows() != db || image.cols() != db) throw std::invalid_argument("map output dimension changed");
      j.block(i * db, k * db, db, db) = image;
    }
  return ChoiOperator(HermitianOperator(std::move(j), {input_dim, static_cast<std::size_t>(db)}));
}

Matrix applyKraus(const std::vector<Matrix>& kraus, const Matrix& input) {
  if (kraus.empty()) throw std::invalid_argument("need at least one Kraus operator");
  Matrix out = Matrix::Zero(kraus.front().rows(), kraus.front().rows());
  for (const auto& k : kraus) out += k * input * k.adjoint();
  return out;
}

ChoiOperator choiFromKraus(const std::vector<Matrix>& kraus) {
  if (kraus.empty()) throw std::invalid_argument("need at least one Kraus operator");
  return channelToChoi([&](const Matrix& x) { return applyKraus(kraus, x); },
                       static_cast<std::size_t>(kraus.front().cols()));
}

std::vector<Matrix> randomKraus(std::size_t input_dim, std::size_t output_dim, std::size_t rank, Rng& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  std::vector<Matrix> out;
  for (std::size_t r = 0; r < rank; ++r) {
    Matrix k(static_cast<Eigen::Index>(output_dim), static_cast<Eigen::Index>(input_dim));
    for (Eigen::Index c = 0; c < k.cols(); ++c)
      for (Eigen::Index i = 0; i < k.rows(); ++i) {
        const double re = n(rng);
        const double im = n(rng);
        k(i, c) = cplx(re, im) / std::sqrt(2.0 * static_cast<double>(input_dim * rank));
      }
    out.push_back(std::move(k));
  }
  return out;
}

// ---------------------------------------------------------------------------

namespace {

Vector topVector(const Matrix& m, Field field, double* value) {
  if (field == Field::Real) {
    Eigen::SelfAdjointEigenSolver<RealMatrix> es(m.real());
    const auto top = es.eigenvalues().size() - 1;
    *value = es.eigenvalues()(top);
    return es.eigenvectors().col(top).normalized().cast<cplx>();
  }
  Eigen::SelfAdjointEigenSolver<Matrix> es(m);
  const auto top = es.eigenvalues().size() - 1;
  *value = es.eigenvalues()(top);
  return es.eigenvectors().col(top).normalized();
}

struct ChannelRun {
  double value = -std::numeric_limits<double>::infinity();
  Vector a, b;
};

// Alternating maximization of <b|N(|a><a|)|b> using only the images of matrix units.
ChannelRun channelPath(const ChoiOperator& choi, const OptimizerConfig& config) {
  const std::size_t da = choi.inputDim();
  const auto n = static_cast<Eigen::Index>(da);
  std::vector<Matrix> images(da * da);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index k = 0; k < n; ++k) {
      Matrix unit = Matrix::Zero(n, n);
      unit(i, k) = 1.0;
      images[static_cast<std::size_t>(i * n + k)] = applyFromChoi(choi, unit);
    }
  auto image = [&](Eigen::Index i, Eigen::Index k) -> const Matrix& { return images[static_cast<std::size_t>(i * n + k)]; };

  const auto total = static_cast<std::size_t>(std::max(config.restarts, 1));
  std::vector<ChannelRun> runs(total);
  parallelFor(total, config.threads, [&](std::size_t r) {
    Rng rng(deriveSeed(config.seed, r, 0x63686e));
    Vector a = randomUnitVector(da, config.field, rng).vec();
    Vector b;
    double f = -std::numeric_limits<double>::infinity();
    for (int it = 0; it < config.max_iterations; ++it) {
      const double previous = f;
      Matrix out = Matrix::Zero(image(0, 0).rows(), image(0, 0).cols());
      for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index k = 0; k < n; ++k) out += a(i) * std::conj(a(k)) * image(i, k);
      b = topVector((out + out.adjoint()) * 0.5, config.field, &f);

      // <b|N(|a><a|)|b> = sum_ik a_i conj(a_k) <b|N(|i><k|)|b> = <a| T^T |a>
      Matrix t(n, n);
      for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index k = 0; k < n; ++k) t(i, k) = b.dot(image(i, k) * b);
      const Matrix mb = t.transpose();
      a = topVector((mb + mb.adjoint()) * 0.5, config.field, &f);
      if (std::abs(f - previous) < config.objective_tolerance) break;
    }
    Matrix out = Matrix::Zero(image(0, 0).rows(), image(0, 0).cols());
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index k = 0; k < n; ++k) out += a(i) * std::conj(a(k)) * image(i, k);
    runs[r] = {b.dot(out * b).real(), a, b};
  });

  std::size_t best = 0;
  for (std::size_t r = 1; r < total; ++r)
    if (runs[r].value > runs[best].value) best = r;
  return runs[best];
}

UnitVector unit(const Vector& v, Field field) {
  if (field == Field::Real) return UnitVector::normalize(RealVector(v.real()));
  return UnitVector::normalize(v, Field::Complex);
}

}  // namespace

GammaInfinity gammaInfinity(const ChoiOperator& choi, const OptimizerConfig& config) {
  config.validate();
  const GmeEstimate est = seesawMaximize(choi.op(), trivialGrouping(2), config);
  const ChannelRun ch = channelPath(choi, config);

  const double disagreement = std::abs(est.best_value - ch.value);
  if (disagreement > 1e-6) {
    std::ostringstream msg;
    msg << std::setprecision(12) << "gamma_infinity paths disagree: GME path " << est.best_value << ", channel path "
        << ch.value;
    throw std::runtime_error(msg.str());
  }
  // The GME witness |a'>|b> corresponds to channel input |a'*>.
  const bool gme_wins = est.best_value >= ch.value;
  const Vector a = gme_wins ? Vector(est.best_ansatz.parties()[0].vec().conjugate()) : ch.a;
  const Vector b = gme_wins ? est.best_ansatz.parties()[1].vec() : ch.b;
  return GammaInfinity{
      .value = std::max(est.best_value, ch.value),
      .gme_path = est.best_value,
      .channel_path = ch.value,
      .disagreement = disagreement,
      .input = unit(a, config.field),
      .output = unit(b, config.field),
  };
}

// ---------------------------------------------------------------------------

namespace {

cplx parseComplex(const std::string& token) {
  const char* s = token.c_str();
  char* end = nullptr;
  const double re = std::strtod(s, &end);
  if (end == s) throw std::invalid_argument("bad complex entry '" + token + "'");
  if (*end == '\0') throw std::invalid_argument("complex entry '" + token + "' lacks an imaginary part (re+imj)");
  if (*end != '+' && *end != '-') throw std::invalid_argument("bad complex entry '" + token + "'");
  const char* im_start = end;
  const double im = std::strtod(im_start, &end);
  if (end == im_start || *end != 'j' || *(end + 1) != '\0')
    throw std::invalid_argument("bad complex entry '" + token + "'");
  if (!std::isfinite(re) || !std::isfinite(im)) throw std::invalid_argument("non-finite complex entry '" + token + "'");
  return {re, im};
}

}  // namespace

ChoiOperator readChoi(std::istream& in) {
  std::string line;
  auto nextLine = [&]() -> bool {
    while (std::getline(in, line)) {
      const auto p = line.find_first_not_of(" \t\r");
      if (p != std::string::npos && line[p] != '#') return true;
    }
    return false;
  };
  if (!nextLine()) throw std::invalid_argument("empty Choi file");
  std::size_t da = 0, db = 0;
  {
    std::istringstream header(line);
    if (!(header >> da >> db) || da == 0 || db == 0) throw std::invalid_argument("Choi header must be 'dA dB'");
    std::string extra;
    if (header >> extra) throw std::invalid_argument("Choi header must be 'dA dB'");
  }
  const auto n = static_cast<Eigen::Index>(da * db);
  Matrix j(n, n);
  for (Eigen::Index r = 0; r < n; ++r) {
    if (!nextLine()) throw std::invalid_argument("Choi file has too few rows");
    std::istringstream row(line);
    std::string tok;
    Eigen::Index c = 0;
    while (row >> tok) {
      if (c >= n) throw std::invalid_argument("Choi row " + std::to_string(r) + " has too many entries");
      j(r, c++) = parseComplex(tok);
    }
    if (c != n) throw std::invalid_argument("Choi row " + std::to_string(r) + " has too few entries");
  }
  if (nextLine()) throw std::invalid_argument("Choi file has trailing rows");
  return ChoiOperator(HermitianOperator(std::move(j), {da, db}));
}

ChoiOperator readChoiFile(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::invalid_argument("cannot open Choi file '" + path + "'");
  return readChoi(f);
}

void writeChoi(std::ostream& out, const ChoiOperator& choi) {
  const Matrix& j = choi.op().matrix();
  out << choi.inputDim() << ' ' << choi.outputDim() << '\n';
  out << std::setprecision(17);
  for (Eigen::Index r = 0; r < j.rows(); ++r) {
    for (Eigen::Index c = 0; c < j.cols(); ++c) {
      const double im = j(r, c).imag();
      out << (c ? " " : "") << j(r, c).real() << (std::signbit(im) ? '-' : '+') << std::abs(im) << 'j';
    }
    out << '\n';
  }
}

}  // namespace gme
