#pragma once

#include <cstddef>

#include "thetadiv/config.hpp"
#include "thetadiv/rational.hpp"
#include "thetadiv/siegel.hpp"

namespace thetadiv {

/// Rational characteristic [top; bottom] of theta[top; bottom](z, Omega).
struct ThetaCharacteristic {
  RationalVector top;
  RationalVector bottom;

  static ThetaCharacteristic zero(int g);
  int genus() const { return static_cast<int>(top.size()); }
};

/// Result of one theta evaluation.
///
/// `normalized` is value * exp(-scale); its modulus is bounded on the whole
/// of C^g and invariant under lattice translation, so every magnitude
/// comparison in the library uses it. `error_bound` bounds |value - exact|,
/// `normalized_error` the same in normalized units.
struct ThetaValue {
  Complex value;
  Complex normalized;
  double error_bound = 0.0;
  double normalized_error = 0.0;
  double scale = 0.0;
  double radius = 0.0;
  std::size_t terms = 0;

  double normalized_magnitude() const { return std::abs(normalized); }
};

/// Tail bound for sum_{v in L + c, |v| > R} exp(-pi |v|^2) over a translated
/// lattice L in R^g whose nonzero vectors all have length >= rho.
///
/// For any r <= min(rho, R)/2 the balls of radius r around the lattice points
/// are disjoint, and on each ball the Gaussian dominates
/// exp(-pi (|w| - r)^2), so
///
///   tail <= g r^{-g}  int_{R-2r}^inf (t + r)^{g-1} exp(-pi t^2) dt.
///
/// The integral is expanded binomially, each moment
/// int_T^inf t^k exp(-pi t^2) dt is evaluated in closed form by recurrence,
/// and the minimum over r = min(rho, R)/2 * 2^{-k/2}, k = 0..24, is returned.
double gaussian_tail_bound(int g, double rho, double radius);

/// Smallest radius R (in the metric of Y) with gaussian_tail_bound <= tol,
/// using rho = sqrt(lambda_min(Y)) as the shortest-vector bound.
double truncation_radius(const Eigen::MatrixXd& imag, double tol);

/// z = z0 + Omega m + n with Y^{-1} Im(z0) in [-1/2, 1/2]^g and
/// theta(z) = cocycle * theta(z0) for the zero characteristic.
struct ReducedPoint {
  ComplexVector z0;
  Eigen::VectorXi m;
  Eigen::VectorXi n;
  Complex cocycle;
  /// log|cocycle| = pi m^T Y m + 2 pi m^T Im(z0); equals scale(z) - scale(z0).
  double log_abs_cocycle = 0.0;
};

ReducedPoint reduce_point(const ComplexVector& z, const SiegelMatrix& omega);

ThetaValue eval_theta(const ThetaCharacteristic& ch, const ComplexVector& z,
                      const SiegelMatrix& omega, double tol);

/// Same sum truncated at an explicit radius.
ThetaValue eval_theta_at_radius(const ThetaCharacteristic& ch, const ComplexVector& z,
                                const SiegelMatrix& omega, double radius);

/// Riemann theta function (zero characteristic).
ThetaValue eval_theta(const ComplexVector& z, const SiegelMatrix& omega, double tol);

/// Decides theta(z) = 0 from normalized magnitudes.
struct VanishingCriterion {
  /// Median normalized |theta| over the configured sample of the torus.
  double reference = 0.0;
  /// rel_tol * reference.
  double threshold = 0.0;
  double ambiguity_factor = 10.0;

  bool vanishes(double normalized_magnitude) const { return normalized_magnitude < threshold; }
  /// Within ambiguity_factor of the threshold on either side.
  bool ambiguous(double normalized_magnitude) const {
    return normalized_magnitude >= threshold / ambiguity_factor &&
           normalized_magnitude < threshold * ambiguity_factor;
  }
};

double reference_magnitude(const SiegelMatrix& omega, const Config& config);

VanishingCriterion make_vanishing_criterion(const SiegelMatrix& omega, double rel_tol,
                                            const Config& config);

/// True iff z lies on the symmetric theta divisor, i.e.
/// |theta(z)| exp(-scale) < rel_tol * reference_magnitude.
bool is_on_theta(const ComplexVector& z, const SiegelMatrix& omega, double rel_tol,
                 const Config& config = {});

}  // namespace thetadiv
