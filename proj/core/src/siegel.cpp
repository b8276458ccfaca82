#include "thetadiv/siegel.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

#include "thetadiv/errors.hpp"

namespace thetadiv {

SiegelMatrix::SiegelMatrix(const ComplexMatrix& omega) {
  if (omega.rows() == 0 || omega.rows() != omega.cols()) {
    throw ArgumentError("period matrix must be square and non-empty");
  }
  if (!omega.allFinite()) throw ArgumentError("period matrix has non-finite entries");

  const auto g = omega.rows();
  omega_ = (omega + omega.transpose()) / 2.0;
  for (Eigen::Index i = 0; i < g; ++i) {
    for (Eigen::Index j = i + 1; j < g; ++j) omega_(j, i) = omega_(i, j);
  }
  real_ = omega_.real();
  imag_ = omega_.imag();

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(imag_, Eigen::EigenvaluesOnly);
  min_eigenvalue_ = eig.eigenvalues().minCoeff();
  if (!(min_eigenvalue_ >= kMinImagEigenvalue)) {
    throw IllConditionedError("ill-conditioned period matrix: Im(Omega) has smallest eigenvalue " +
                              std::to_string(min_eigenvalue_));
  }

  Eigen::LLT<Eigen::MatrixXd> llt(imag_);
  if (llt.info() != Eigen::Success) {
    throw IllConditionedError("ill-conditioned period matrix: Cholesky factorization failed");
  }
  cholesky_upper_ = llt.matrixU();
  imag_inverse_ = llt.solve(Eigen::MatrixXd::Identity(g, g));
}

SiegelMatrix SiegelMatrix::from_tau(Complex tau) {
  ComplexMatrix m(1, 1);
  m(0, 0) = tau;
  return SiegelMatrix(m);
}

SiegelMatrix SiegelMatrix::scaled(double factor) const {
  if (!(factor > 0.0)) throw ArgumentError("scale factor must be positive");
  return SiegelMatrix(omega_ * factor);
}

ComplexVector SiegelMatrix::lattice_point(const Eigen::VectorXd& u, const Eigen::VectorXd& v) const {
  return omega_ * u.cast<Complex>() + v.cast<Complex>();
}

double invariant_scale(const ComplexVector& z, const SiegelMatrix& omega) {
  const Eigen::VectorXd y = z.imag();
  return std::numbers::pi * y.dot(omega.imag_inverse() * y);
}

}  // namespace thetadiv
