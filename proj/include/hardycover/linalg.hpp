#pragma once

#include <complex>
#include <string>

#include <Eigen/Dense>

namespace hardycover {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// Largest entry modulus; the norm used for every residual in the library.
inline double max_abs(const Matrix& a) { return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff(); }

inline double unitarity_residual(const Matrix& u) {
  return max_abs(u * u.adjoint() - Matrix::Identity(u.rows(), u.cols()));
}

inline double selfadjoint_residual(const Matrix& a) { return max_abs(a - a.adjoint()); }

/// max(|J - J*|, |J^2 - I|).
inline double signature_residual(const Matrix& j) {
  const double sa = selfadjoint_residual(j);
  const double inv = max_abs(j * j - Matrix::Identity(j.rows(), j.cols()));
  return sa > inv ? sa : inv;
}

/// A named residual against a tolerance.
struct Residual {
  std::string name;
  double value = 0.0;
  double tolerance = 0.0;

  bool pass() const { return value < tolerance; }
};

}  // namespace hardycover
