#pragma once

#include <complex>

#include <Eigen/Core>

namespace thetadiv {

using Complex = std::complex<double>;
using ComplexVector = Eigen::VectorXcd;
using ComplexMatrix = Eigen::MatrixXcd;

/// Smallest admissible eigenvalue of Im(Omega); below it construction fails.
inline constexpr double kMinImagEigenvalue = 1e-8;

/// A point of the Siegel upper half-space: symmetric g x g complex matrix
/// whose imaginary part is positive definite. Models the ppav
/// C^g / (Z^g + Omega Z^g) with its principal polarization.
///
/// The constructor symmetrizes its input (average of Omega and its
/// transpose, then mirrors the upper triangle so the stored matrix is
/// exactly symmetric) and caches the real/imaginary parts, Y^{-1} and the
/// upper Cholesky factor U with Y = U^T U.
class SiegelMatrix {
 public:
  explicit SiegelMatrix(const ComplexMatrix& omega);

  /// 1 x 1 period matrix (tau).
  static SiegelMatrix from_tau(Complex tau);

  int genus() const { return static_cast<int>(omega_.rows()); }
  const ComplexMatrix& omega() const { return omega_; }
  const Eigen::MatrixXd& real_part() const { return real_; }
  const Eigen::MatrixXd& imag_part() const { return imag_; }
  const Eigen::MatrixXd& imag_inverse() const { return imag_inverse_; }
  const Eigen::MatrixXd& cholesky_upper() const { return cholesky_upper_; }
  double min_imag_eigenvalue() const { return min_eigenvalue_; }

  /// Same matrix multiplied by a positive rational-free scalar (e.g. n * Omega).
  SiegelMatrix scaled(double factor) const;

  /// Embeds Omega * u + v.
  ComplexVector lattice_point(const Eigen::VectorXd& u, const Eigen::VectorXd& v) const;

  friend bool operator==(const SiegelMatrix& a, const SiegelMatrix& b) {
    return a.omega_ == b.omega_;
  }

 private:
  ComplexMatrix omega_;
  Eigen::MatrixXd real_;
  Eigen::MatrixXd imag_;
  Eigen::MatrixXd imag_inverse_;
  Eigen::MatrixXd cholesky_upper_;
  double min_eigenvalue_ = 0.0;
};

/// pi * y^T Y^{-1} y with y = Im(z): log of the lattice-invariant
/// normalization of |theta(z)|.
double invariant_scale(const ComplexVector& z, const SiegelMatrix& omega);

}  // namespace thetadiv
