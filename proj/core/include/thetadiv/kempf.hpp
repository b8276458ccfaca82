#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "thetadiv/config.hpp"
#include "thetadiv/ppav.hpp"
#include "thetadiv/siegel.hpp"
#include "thetadiv/theta.hpp"

namespace thetadiv {

/// An explicit basis of global sections, realized as the theta functions
///
///   s_i(z) = theta[c_i; 0](level * (z + shift), level * cover)
///
/// on C^g. Each s_i is quasi-periodic for the lattice Z^g + cover Z^g with
///
///   s_i(z + cover k + l) = exp(-pi i level k^T cover k - 2 pi i level k^T (z + shift)) s_i(z).
class SectionBasis {
 public:
  SectionBasis(int level, const SiegelMatrix& cover, ComplexVector shift,
               std::vector<ThetaCharacteristic> characteristics, std::string tag, double theta_tol);

  std::size_t count() const { return characteristics_.size(); }
  int level() const { return level_; }
  int genus() const { return cover_.genus(); }
  /// Period matrix of the lattice on which the sections are quasi-periodic.
  const SiegelMatrix& cover() const { return cover_; }
  const ComplexVector& shift() const { return shift_; }
  const std::string& tag() const { return tag_; }

  ThetaValue evaluate(std::size_t i, const ComplexVector& z) const;
  /// Automorphy factor for the translation z -> z + cover k + l (independent of l).
  Complex automorphy(const Eigen::VectorXi& k, const ComplexVector& z) const;

 private:
  int level_;
  SiegelMatrix cover_;
  SiegelMatrix argument_period_;
  ComplexVector shift_;
  std::vector<ThetaCharacteristic> characteristics_;
  std::string tag_;
  double radius_;
};

/// H^0(t_x^* O(n Theta)): theta[sigma/n; 0](n (z + x), n Omega), sigma in {0..n-1}^g.
SectionBasis line_bundle_basis(int n, const AbelianPoint& x, const SiegelMatrix& omega,
                               const Config& config = {});

/// Sections of t_x^* W_{a,degree} on E = C/(Z + tau Z), g = 1.
///
/// W_{a,degree} is the pushforward of a degree-`degree` line bundle L under
/// the isogeny E_a = C/(Z + a tau Z) -> E, so H^0(E, W) = H^0(E_a, L) is
/// spanned by theta[j/degree; 0](degree (z + x + twist), degree a tau).
/// `twist` is an extra 2-torsion translate tried during calibration.
SectionBasis pushforward_basis(int a, int degree, const AbelianPoint& x, Complex tau,
                               Complex twist = {}, const Config& config = {});

/// Twist of the pushforward model of W_{a,n} that calibration selects: the
/// untwisted pushforward, for every a and tau.
Complex closed_form_twist(int a, Complex tau);

struct TwistCalibration {
  /// "none" when both a and b are odd, otherwise the side ("x" or "y") whose
  /// bundle has even rank.
  std::string side = "none";
  Complex twist{};
  /// Candidate 2-torsion twists that reproduced every probe.
  std::vector<Complex> accepted;
  bool matches_closed_form = true;
};

/// Locates the 2-torsion twist of the even-rank side among {0, 1/2, tau/2,
/// (1+tau)/2}: the candidate for which the corank at the probe points
/// y = (1+tau)/2 and a generic y equals the independent torsion count.
/// Throws CalibrationError unless exactly one candidate passes.
TwistCalibration calibrate_twist(int a, int b, Complex tau, const Config& config = {});

/// Evaluation matrix of the multiplication map: row (i, j) holds
/// s_i(z) t_j(z) (normalized by the automorphy scale of each factor) at the
/// seeded sample points z of the common cover's fundamental cell; rows are
/// scaled to unit norm. The common cover is Z + ab tau Z for g = 1 and the
/// ppav itself for a = b = 1.
ComplexMatrix multiplication_matrix(int a, int b, const AbelianPoint& x, const AbelianPoint& y,
                                    const SiegelMatrix& omega, int samples, std::uint64_t seed,
                                    const TwistCalibration& twist = {}, const Config& config = {});

struct CorankReport {
  int a = 0;
  int b = 0;
  int n = 0;
  int g = 0;
  AbelianPoint x;
  AbelianPoint y;
  std::int64_t source_dim = 0;
  std::int64_t target_dim = 0;
  std::vector<double> singular_values;
  std::int64_t numerical_rank = 0;
  std::int64_t corank = 0;
  double threshold = 0.0;
  double min_accepted_sigma = 0.0;
  double max_rejected_sigma = 0.0;
  std::int64_t torsion_count = 0;
  bool match = false;
  /// ((a+b)^2 - 1)^g.
  std::int64_t rank_bound = 0;
  /// Torsion count equals n^{2g} - (n^2-1)^g.
  bool equality_case = false;
  int samples = 0;
  std::uint64_t seed = 0;
  std::string twist_side = "none";
  Complex twist{};
};

/// Numerical corank of m_{a,b}(x, y) next to the independent count Theta_{y-x}(a+b).
///
/// Supported regimes: g = 1 with any coprime (a, b), and g <= 2 with a = b = 1.
/// Throws UnsupportedRegimeError outside them and AmbiguityError when a
/// singular value (or a theta magnitude of the count) lies within the
/// ambiguity factor of its threshold.
CorankReport corank(int a, int b, const AbelianPoint& x, const AbelianPoint& y,
                    const SiegelMatrix& omega, const Config& config = {});

/// Same with an explicit twist (skips calibration).
CorankReport corank(int a, int b, const AbelianPoint& x, const AbelianPoint& y,
                    const SiegelMatrix& omega, const TwistCalibration& twist, const Config& config);

struct ScanPoint {
  AbelianPoint y;
  std::int64_t corank = 0;
  /// y - x - (1+tau)/2 lies in E[a+b] (exact).
  bool predicted = false;
  /// e_divisor_hits(-x, y) is non-empty (numerical).
  bool divisor_predicted = false;
};

struct ScanResult {
  std::vector<ScanPoint> points;
  /// corank > 0 exactly on the predicted points, and both predictions agree.
  bool consistent = false;
};

/// Coranks over a grid x grid set of rational y plus the (a+b)^2 predicted
/// singular points x + (1+tau)/2 + E[a+b] (g = 1).
ScanResult singular_locus_scan(int a, int b, const AbelianPoint& x, Complex tau, int grid,
                               const Config& config = {});

}  // namespace thetadiv
