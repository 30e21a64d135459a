#pragma once

// Reference implementations that share no code with the library: explicit multi-index
// loops and hand-derived closed forms.

#include <cmath>
#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "gme/config.hpp"

namespace oracle {

using gme::cplx;
using gme::Matrix;
using gme::Vector;

inline std::vector<std::size_t> digits(std::size_t index, const std::vector<std::size_t>& dims) {
  std::vector<std::size_t> out(dims.size());
  for (std::size_t k = dims.size(); k-- > 0;) {
    out[k] = index % dims[k];
    index /= dims[k];
  }
  return out;
}

inline std::size_t flatten(const std::vector<std::size_t>& idx, const std::vector<std::size_t>& dims) {
  std::size_t out = 0;
  for (std::size_t k = 0; k < dims.size(); ++k) out = out * dims[k] + idx[k];
  return out;
}

/// Sum over all entries whose traced-out digits agree.
inline Matrix partialTrace(const Matrix& m, const std::vector<std::size_t>& dims, const std::vector<bool>& keep) {
  std::vector<std::size_t> kept_dims;
  for (std::size_t k = 0; k < dims.size(); ++k)
    if (keep[k]) kept_dims.push_back(dims[k]);
  std::size_t n = 1;
  for (auto d : kept_dims) n *= d;
  Matrix out = Matrix::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      const auto ri = digits(static_cast<std::size_t>(r), dims);
      const auto ci = digits(static_cast<std::size_t>(c), dims);
      bool match = true;
      std::vector<std::size_t> rk, ck;
      for (std::size_t k = 0; k < dims.size(); ++k) {
        if (keep[k]) {
          rk.push_back(ri[k]);
          ck.push_back(ci[k]);
        } else if (ri[k] != ci[k]) {
          match = false;
        }
      }
      if (match)
        out(static_cast<Eigen::Index>(flatten(rk, kept_dims)), static_cast<Eigen::Index>(flatten(ck, kept_dims))) +=
            m(r, c);
    }
  return out;
}

/// New factor k is old factor perm[k].
inline Matrix reorder(const Matrix& m, const std::vector<std::size_t>& dims, const std::vector<std::size_t>& perm) {
  std::vector<std::size_t> new_dims(dims.size());
  for (std::size_t k = 0; k < perm.size(); ++k) new_dims[k] = dims[perm[k]];
  Matrix out(m.rows(), m.cols());
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      const auto ri = digits(static_cast<std::size_t>(r), dims);
      const auto ci = digits(static_cast<std::size_t>(c), dims);
      std::vector<std::size_t> nr(dims.size()), nc(dims.size());
      for (std::size_t k = 0; k < perm.size(); ++k) {
        nr[k] = ri[perm[k]];
        nc[k] = ci[perm[k]];
      }
      out(static_cast<Eigen::Index>(flatten(nr, new_dims)), static_cast<Eigen::Index>(flatten(nc, new_dims))) = m(r, c);
    }
  return out;
}

/// Largest eigenvalue from the general (non-Hermitian) complex eigensolver.
inline double maxEigenvalue(const Matrix& m) {
  Eigen::ComplexEigenSolver<Matrix> es(m);
  double best = -1e300;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) best = std::max(best, es.eigenvalues()(i).real());
  return best;
}

/// <a, b| omega_{x,y} |a, b> written through s = |<a|b>|^2 and t = |<a*|b>|^2, using
/// <F> = s, <Phi+> = t / d and pi+- = (I +- F) / 2.
inline double omegaProductValue(double x, double y, double d, double s, double t) {
  const double sym = (1.0 + s) / 2.0;
  const double anti = (1.0 - s) / 2.0;
  const double phi = t / d;
  return 2.0 * x / ((d - 1.0) * (d + 2.0)) * (sym - phi) + 2.0 * y / (d * (d - 1.0)) * anti + (1.0 - x - y) * phi;
}

/// <a, b| tau |a, b> for real vectors in d = 3 with weights (p01, p02, p12):
/// each singlet contributes p_ij (a_i b_j - a_j b_i)^2 / 2.
inline double tauRealProductValue(const double* p, const double* a, const double* b) {
  const auto term = [&](int i, int j) { const double w = a[i] * b[j] - a[j] * b[i]; return 0.5 * w * w; };
  return p[0] * term(0, 1) + p[1] * term(0, 2) + p[2] * term(1, 2);
}

/// Crossover along x = 0 solved by hand: y* = 2d(d-1) / (2d^2 - d - 2).
inline double crossoverClosedForm(double d) { return 2.0 * d * (d - 1.0) / (2.0 * d * d - d - 2.0); }

}  // namespace oracle
