#pragma once

#include <complex>
#include <string_view>

#include <Eigen/Dense>

namespace gme {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

inline constexpr std::string_view kVersion = "0.3.1";

/// Numerical tolerances shared by every module.
struct Tolerances {
  static constexpr double hermiticity = 1e-12;   // max |A - A^H| entry
  static constexpr double trace = 1e-12;
  static constexpr double psd = 1e-10;           // smallest admissible eigenvalue is -psd
  static constexpr double unit_norm = 1e-12;
  static constexpr double eigen_relative = 1e-10;
  static constexpr double distribution = 1e-12;  // sum of mixture weights
  static constexpr double bound_slack = 1e-9;    // best_value <= upper_bound + slack
  static constexpr double violation_absolute = 1e-9;
  static constexpr double default_violation_relative = 1e-5;
};

/// Field over which product vectors are taken.
enum class Field { Complex, Real };

inline std::string_view to_string(Field f) { return f == Field::Complex ? "complex" : "real"; }

}  // namespace gme
