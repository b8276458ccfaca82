#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "thetadiv/config.hpp"
#include "thetadiv/rational.hpp"
#include "thetadiv/siegel.hpp"
#include "thetadiv/theta.hpp"

namespace thetadiv {

/// A point Omega p + q + extra of C^g / (Z^g + Omega Z^g).
///
/// The rational part (p, q) is exact; `extra` carries a non-torsion complex
/// offset. The point is n-torsion iff extra = 0 and n p, n q are integral.
struct AbelianPoint {
  RationalVector p;
  RationalVector q;
  ComplexVector extra;

  static AbelianPoint origin(int g);
  /// Pure rational point Omega p + q.
  static AbelianPoint rational(RationalVector p, RationalVector q);
  /// Point given only by its complex coordinate.
  static AbelianPoint complex(const ComplexVector& z);

  int genus() const { return static_cast<int>(p.size()); }
  bool is_torsion_of_order_dividing(int n) const;
  ComplexVector embed(const SiegelMatrix& omega) const;

  AbelianPoint operator-() const;
  friend AbelianPoint operator+(const AbelianPoint& lhs, const AbelianPoint& rhs);
  friend AbelianPoint operator-(const AbelianPoint& lhs, const AbelianPoint& rhs) {
    return lhs + (-rhs);
  }
  friend bool operator==(const AbelianPoint& lhs, const AbelianPoint& rhs);
};

/// Element (Omega p + q) / n of A[n], with p, q in [0, n)^g.
struct TorsionIndex {
  int n = 1;
  std::vector<int> p;
  std::vector<int> q;

  AbelianPoint point() const;
  friend bool operator==(const TorsionIndex&, const TorsionIndex&) = default;
  friend auto operator<=>(const TorsionIndex&, const TorsionIndex&) = default;
};

/// n^{2g} - (n^2 - 1)^g, the maximal number of n-torsion points on a theta translate.
std::int64_t torsion_bound(int n, int g);

/// All n^{2g} elements of A[n] in lexicographic order of (p, q).
std::vector<TorsionIndex> enumerate_torsion(int n, int g, std::size_t cap = Config{}.enumeration_cap);

/// Normalized |theta(point)|, assembled through the exact characteristic
/// [p mod 1; q mod 1] evaluated at `extra`.
double normalized_theta_magnitude(const AbelianPoint& point, const SiegelMatrix& omega,
                                  double radius);

struct CountReport {
  int n = 0;
  int g = 0;
  AbelianPoint x;
  std::int64_t count = 0;
  std::int64_t bound = 0;
  std::vector<TorsionIndex> hits;
  /// Normalized |theta(eta + x)| for every eta, in enumeration order.
  std::vector<double> margins;
  /// Points whose magnitude lies within the ambiguity factor of the threshold.
  std::vector<TorsionIndex> indeterminate;
  double reference = 0.0;
  double threshold = 0.0;
};

/// Theta_x(n) = #{eta in A[n] : theta(eta + x) = 0}.
CountReport count_torsion_on_theta(const SiegelMatrix& omega, int n, const AbelianPoint& x,
                                   const Config& config = {});

/// Same, reusing a precomputed vanishing criterion.
CountReport count_torsion_on_theta(const SiegelMatrix& omega, int n, const AbelianPoint& x,
                                   const VanishingCriterion& criterion, const Config& config);

/// diag(tau_1, ..., tau_g): the product of the elliptic curves C / (Z + tau_i Z).
SiegelMatrix product_ppav(std::span<const Complex> taus);

/// x with x_i = (1 + tau_i)/2 on each factor, i.e. p = q = (1/2, ..., 1/2);
/// for the product ppav this makes Theta_x = sum of the factor divisors {0}.
AbelianPoint equality_translate(std::span<const Complex> taus, int n);

/// Re(Omega) uniform in [-1/2, 1/2]; Im(Omega) = Q^T Q + c I with Q uniform in
/// [-1/2, 1/2]^{g x g} and c = kRandomSiegelShift. Deterministic in seed.
inline constexpr double kRandomSiegelShift = 0.5;
SiegelMatrix random_siegel(int g, std::uint64_t seed);

/// {eta in A[n] : theta(x + y + eta) = 0}, i.e. the eta with x in Theta_{y+eta}.
std::vector<TorsionIndex> e_divisor_hits(const SiegelMatrix& omega, int n, const AbelianPoint& y,
                                         const AbelianPoint& x, const Config& config = {});

}  // namespace thetadiv
