#include "thetadiv/kempf.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <string>

#include <Eigen/SVD>

#include "thetadiv/chow.hpp"
#include "thetadiv/errors.hpp"
#include "thetadiv/parallel.hpp"
#include "thetadiv/random.hpp"

namespace thetadiv {

namespace {

constexpr double kPi = std::numbers::pi;

std::string genus_tag(int g) { return g == 1 ? "" : " (g=" + std::to_string(g) + ")"; }

void require_regime(int a, int b, int g) {
  if (a < 1 || b < 1 || std::gcd(a, b) != 1) {
    throw ArgumentError("multiplication map needs coprime positive a, b");
  }
  if (g == 1) return;
  if (g == 2 && a == 1 && b == 1) return;
  throw UnsupportedRegimeError("regime not implemented: a=" + std::to_string(a) + ", b=" + std::to_string(b) +
                               ", g=" + std::to_string(g) +
                               " (supported: g=1 with coprime a,b; g<=2 with a=b=1)");
}

struct MultiplicationModel {
  SectionBasis left;
  SectionBasis right;
  SiegelMatrix common_cover;
};

MultiplicationModel build_model(int a, int b, const AbelianPoint& x, const AbelianPoint& y,
                                const SiegelMatrix& omega, const TwistCalibration& twist,
                                const Config& config) {
  const int g = omega.genus();
  require_regime(a, b, g);
  const int n = a + b;
  if (g == 1) {
    const Complex tau = omega.omega()(0, 0);
    const Complex left_twist = twist.side == "x" ? twist.twist : Complex{};
    const Complex right_twist = twist.side == "y" ? twist.twist : Complex{};
    return {pushforward_basis(a, n, x, tau, left_twist, config),
            pushforward_basis(b, n, y, tau, right_twist, config),
            SiegelMatrix::from_tau(static_cast<double>(a * b) * tau)};
  }
  return {line_bundle_basis(n, x, omega, config), line_bundle_basis(n, y, omega, config), omega};
}

}  // namespace

SectionBasis::SectionBasis(int level, const SiegelMatrix& cover, ComplexVector shift,
                           std::vector<ThetaCharacteristic> characteristics, std::string tag,
                           double theta_tol)
    : level_(level),
      cover_(cover),
      argument_period_(cover.scaled(static_cast<double>(level))),
      shift_(std::move(shift)),
      characteristics_(std::move(characteristics)),
      tag_(std::move(tag)),
      radius_(truncation_radius(argument_period_.imag_part(), theta_tol)) {
  if (level < 1) throw ArgumentError("section basis level must be positive");
  if (shift_.size() != cover_.genus()) throw ArgumentError("shift dimension does not match cover");
}

ThetaValue SectionBasis::evaluate(std::size_t i, const ComplexVector& z) const {
  if (i >= count()) throw ArgumentError("section index out of range");
  const ComplexVector u = static_cast<double>(level_) * (z + shift_);
  return eval_theta_at_radius(characteristics_[i], u, argument_period_, radius_);
}

Complex SectionBasis::automorphy(const Eigen::VectorXi& k, const ComplexVector& z) const {
  const Eigen::VectorXcd kc = k.cast<double>().cast<Complex>();
  const Complex quadratic = kc.dot(cover_.omega() * kc);  // dot conjugates lhs; k is real
  const Complex linear = kc.dot(z + shift_);
  return std::exp(Complex(0.0, -kPi * level_) * quadratic + Complex(0.0, -2.0 * kPi * level_) * linear);
}

SectionBasis line_bundle_basis(int n, const AbelianPoint& x, const SiegelMatrix& omega,
                               const Config& config) {
  if (n < 1) throw ArgumentError("line_bundle_basis needs n >= 1");
  const int g = omega.genus();
  const Integer dim = power(Integer(n), static_cast<unsigned>(g));
  if (dim > Integer(static_cast<unsigned long>(config.enumeration_cap))) {
    throw InstanceTooLargeError("instance too large: h0(n Theta) = " + dim.get_str());
  }
  std::vector<ThetaCharacteristic> chars;
  std::vector<int> sigma(static_cast<std::size_t>(g), 0);
  for (unsigned long k = 0; k < dim.get_ui(); ++k) {
    ThetaCharacteristic ch = ThetaCharacteristic::zero(g);
    for (int i = 0; i < g; ++i) {
      ch.top[i] = Rational(sigma[i], n);
      ch.top[i].canonicalize();
    }
    chars.push_back(std::move(ch));
    for (int d = g - 1; d >= 0; --d) {
      if (++sigma[d] < n) break;
      sigma[d] = 0;
    }
  }
  return SectionBasis(n, omega, x.embed(omega), std::move(chars),
                      "H0(t_x^* O(" + std::to_string(n) + "Theta))" + genus_tag(g), config.theta_tol);
}

SectionBasis pushforward_basis(int a, int degree, const AbelianPoint& x, Complex tau, Complex twist,
                               const Config& config) {
  if (a < 1 || degree < 1) throw ArgumentError("pushforward_basis needs a >= 1 and degree >= 1");
  if (std::gcd(a, degree) != 1) {
    throw ArgumentError("pushforward_basis needs gcd(a, degree) = 1 for a simple bundle");
  }
  if (x.genus() != 1) throw ArgumentError("pushforward_basis is a g = 1 construction");
  const SiegelMatrix base = SiegelMatrix::from_tau(tau);
  const SiegelMatrix cover = SiegelMatrix::from_tau(static_cast<double>(a) * tau);
  std::vector<ThetaCharacteristic> chars;
  for (int j = 0; j < degree; ++j) {
    ThetaCharacteristic ch = ThetaCharacteristic::zero(1);
    ch.top[0] = Rational(j, degree);
    ch.top[0].canonicalize();
    chars.push_back(std::move(ch));
  }
  ComplexVector shift = x.embed(base);
  shift(0) += twist;
  return SectionBasis(degree, cover, std::move(shift), std::move(chars),
                      "H0(t_x^* W_{" + std::to_string(a) + "," + std::to_string(degree) + "}) via degree-" +
                          std::to_string(a) + " cover",
                      config.theta_tol);
}

Complex closed_form_twist(int a, Complex tau) {
  if (a < 1) throw ArgumentError("closed_form_twist needs a >= 1");
  (void)tau;
  return Complex{};
}

TwistCalibration calibrate_twist(int a, int b, Complex tau, const Config& config) {
  require_regime(a, b, 1);
  TwistCalibration out;
  if (a % 2 && b % 2) return out;
  out.side = a % 2 ? "y" : "x";
  const int even_rank = a % 2 ? b : a;

  const SiegelMatrix omega = SiegelMatrix::from_tau(tau);
  const AbelianPoint origin = AbelianPoint::origin(1);
  const std::vector<AbelianPoint> probes = {
      AbelianPoint::rational({Rational(1, 2)}, {Rational(1, 2)}),
      AbelianPoint::complex(ComplexVector::Constant(1, Complex(0.3, 0.2))),
  };
  const std::vector<Complex> candidates = {Complex{}, Complex(0.5, 0.0), 0.5 * tau, 0.5 * (1.0 + tau)};

  for (const Complex& candidate : candidates) {
    TwistCalibration trial = out;
    trial.twist = candidate;
    bool passes = true;
    for (const auto& y : probes) {
      try {
        const CorankReport report = corank(a, b, origin, y, omega, trial, config);
        passes = passes && report.match;
      } catch (const AmbiguityError&) {
        passes = false;
      }
      if (!passes) break;
    }
    if (passes) out.accepted.push_back(candidate);
  }
  if (out.accepted.size() != 1) {
    throw CalibrationError("determinant calibration for W_{" + std::to_string(even_rank) + "," +
                           std::to_string(a + b) + "} accepted " + std::to_string(out.accepted.size()) +
                           " of 4 candidate twists");
  }
  out.twist = out.accepted.front();
  out.matches_closed_form = std::abs(out.twist - closed_form_twist(even_rank, tau)) < 1e-12;
  return out;
}

ComplexMatrix multiplication_matrix(int a, int b, const AbelianPoint& x, const AbelianPoint& y,
                                    const SiegelMatrix& omega, int samples, std::uint64_t seed,
                                    const TwistCalibration& twist, const Config& config) {
  const MultiplicationModel model = build_model(a, b, x, y, omega, twist, config);
  const auto rows = static_cast<Eigen::Index>(model.left.count() * model.right.count());
  if (static_cast<std::size_t>(rows) > config.target_dim_cap) {
    throw InstanceTooLargeError("instance too large: target dimension " + std::to_string(rows));
  }
  if (samples < 4 * rows) throw ArgumentError("need at least 4 samples per target dimension");

  const int g = omega.genus();
  Rng rng(seed);
  std::vector<ComplexVector> points;
  points.reserve(static_cast<std::size_t>(samples));
  for (int s = 0; s < samples; ++s) {
    Eigen::VectorXd u(g), v(g);
    for (int i = 0; i < g; ++i) u(i) = uniform01(rng);
    for (int i = 0; i < g; ++i) v(i) = uniform01(rng);
    points.push_back(model.common_cover.lattice_point(u, v));
  }

  ComplexMatrix matrix(rows, samples);
  const auto right_count = static_cast<Eigen::Index>(model.right.count());
  parallel_for(points.size(), config.workers, [&](std::size_t s) {
    std::vector<Complex> lv(model.left.count()), rv(model.right.count());
    for (std::size_t i = 0; i < lv.size(); ++i) lv[i] = model.left.evaluate(i, points[s]).normalized;
    for (std::size_t j = 0; j < rv.size(); ++j) rv[j] = model.right.evaluate(j, points[s]).normalized;
    for (std::size_t i = 0; i < lv.size(); ++i) {
      for (std::size_t j = 0; j < rv.size(); ++j) {
        matrix(static_cast<Eigen::Index>(i) * right_count + static_cast<Eigen::Index>(j),
               static_cast<Eigen::Index>(s)) = lv[i] * rv[j];
      }
    }
  });
  for (Eigen::Index r = 0; r < rows; ++r) {
    const double norm = matrix.row(r).norm();
    if (norm > 0.0) matrix.row(r) /= norm;
  }
  return matrix;
}

CorankReport corank(int a, int b, const AbelianPoint& x, const AbelianPoint& y, const SiegelMatrix& omega,
                    const TwistCalibration& twist, const Config& config) {
  const int g = omega.genus();
  require_regime(a, b, g);
  const int n = a + b;

  CorankReport report;
  report.a = a;
  report.b = b;
  report.n = n;
  report.g = g;
  report.x = x;
  report.y = y;
  report.twist_side = twist.side;
  report.twist = twist.twist;

  // Dimensions from the Chow calculus: h0 = chi for these IT(0) bundles.
  const ChowClass left = ch_W(BundleSpec(a, n, g));
  const ChowClass right = ch_W(BundleSpec(b, n, g));
  const Rational source = euler_char(left) * euler_char(right);
  const Rational target = euler_char(tensor(left, right));
  report.source_dim = Integer(source.get_num()).get_si();
  report.target_dim = Integer(target.get_num()).get_si();
  const std::int64_t expected_dim = Integer(power(Integer(n), 2u * g)).get_si();
  if (report.source_dim != expected_dim || report.target_dim != expected_dim) {
    throw std::logic_error("source/target dimension differs from (a+b)^{2g}");
  }
  report.rank_bound = rank_lower_bound(a, b, g).get_si();

  report.samples = config.sample_factor * static_cast<int>(report.target_dim);
  report.seed = config.sample_seed;
  const ComplexMatrix matrix = multiplication_matrix(a, b, x, y, omega, report.samples, report.seed, twist, config);
  if (matrix.rows() != report.target_dim) throw std::logic_error("section basis size differs from chi");

  const Eigen::JacobiSVD<ComplexMatrix> svd(matrix);
  const Eigen::VectorXd sigma = svd.singularValues();
  report.singular_values.assign(sigma.data(), sigma.data() + sigma.size());
  const double sigma_max = sigma.size() ? sigma(0) : 0.0;
  report.threshold = config.rank_threshold * sigma_max;

  for (double s : report.singular_values) {
    if (s >= report.threshold) {
      ++report.numerical_rank;
      report.min_accepted_sigma = s;
    } else if (report.max_rejected_sigma == 0.0) {
      report.max_rejected_sigma = s;
    }
    if (s >= report.threshold / config.ambiguity_factor && s < report.threshold * config.ambiguity_factor) {
      throw AmbiguityError("ambiguous singular-value gap: sigma/sigma_max = " + std::to_string(s / sigma_max) +
                           " within a factor " + std::to_string(config.ambiguity_factor) + " of the threshold");
    }
  }
  report.corank = report.target_dim - report.numerical_rank;

  const CountReport count = count_torsion_on_theta(omega, n, y - x, config);
  if (!count.indeterminate.empty()) {
    throw AmbiguityError("torsion count has " + std::to_string(count.indeterminate.size()) +
                         " indeterminate theta magnitudes");
  }
  report.torsion_count = count.count;
  report.match = report.corank == report.torsion_count;
  report.equality_case = report.torsion_count == count.bound;
  return report;
}

CorankReport corank(int a, int b, const AbelianPoint& x, const AbelianPoint& y, const SiegelMatrix& omega,
                    const Config& config) {
  require_regime(a, b, omega.genus());
  TwistCalibration twist;
  if (omega.genus() == 1) twist = calibrate_twist(a, b, omega.omega()(0, 0), config);
  return corank(a, b, x, y, omega, twist, config);
}

ScanResult singular_locus_scan(int a, int b, const AbelianPoint& x, Complex tau, int grid,
                               const Config& config) {
  if (grid < 1) throw ArgumentError("grid must be positive");
  if (x.genus() != 1) throw ArgumentError("singular_locus_scan is a g = 1 operation");
  const int n = a + b;
  const SiegelMatrix omega = SiegelMatrix::from_tau(tau);
  const TwistCalibration twist = calibrate_twist(a, b, tau, config);
  const AbelianPoint half_period = AbelianPoint::rational({Rational(1, 2)}, {Rational(1, 2)});

  std::vector<AbelianPoint> ys;
  for (int i = 0; i < grid; ++i) {
    for (int j = 0; j < grid; ++j) {
      Rational p(8 * i + 3, 8 * grid), q(8 * j + 5, 8 * grid);
      p.canonicalize();
      q.canonicalize();
      ys.push_back(x + AbelianPoint::rational({p}, {q}));
    }
  }
  for (const auto& eta : enumerate_torsion(n, 1, config.enumeration_cap)) {
    ys.push_back(x + half_period + eta.point());
  }

  ScanResult result;
  result.consistent = true;
  for (const auto& y : ys) {
    ScanPoint point;
    point.y = y;
    point.corank = corank(a, b, x, y, omega, twist, config).corank;
    point.predicted = (y - x - half_period).is_torsion_of_order_dividing(n);
    point.divisor_predicted = !e_divisor_hits(omega, n, -x, y, config).empty();
    result.consistent = result.consistent && (point.corank > 0) == point.predicted &&
                        point.predicted == point.divisor_predicted;
    result.points.push_back(std::move(point));
  }
  return result;
}

}  // namespace thetadiv
