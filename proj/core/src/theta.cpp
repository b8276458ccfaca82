#include "thetadiv/theta.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <numeric>
#include <vector>

#include "thetadiv/errors.hpp"
#include "thetadiv/random.hpp"

namespace thetadiv {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Lattice points enumerated per evaluation before we give up on Omega.
constexpr double kMaxLatticeTerms = 2.0e7;

// int_T^inf t^k exp(-pi t^2) dt for k = 0..kmax, T >= 0.
std::vector<double> gaussian_moments(int kmax, double T) {
  std::vector<double> moments(static_cast<std::size_t>(std::max(kmax, 1) + 1));
  const double e = std::exp(-kPi * T * T);
  moments[0] = 0.5 * std::erfc(std::sqrt(kPi) * T);
  moments[1] = e / kTwoPi;
  for (int k = 2; k <= kmax; ++k) {
    moments[k] = (std::pow(T, k - 1) * e + (k - 1) * moments[k - 2]) / kTwoPi;
  }
  return moments;
}

double binomial(int n, int k) {
  double out = 1.0;
  for (int i = 1; i <= k; ++i) out = out * (n - k + i) / i;
  return out;
}

// Rational vector as doubles, converted once.
Eigen::VectorXd to_doubles(const RationalVector& v) {
  Eigen::VectorXd out(static_cast<Eigen::Index>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i) out(static_cast<Eigen::Index>(i)) = v[i].get_d();
  return out;
}

// Bottom characteristic over a common denominator: b_i = numerators[i] / denominator.
struct CommonDenominator {
  std::vector<long long> numerators;
  long long denominator = 1;
};

CommonDenominator common_denominator(const RationalVector& b) {
  Integer lcm = 1;
  for (const auto& x : b) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), x.get_den_mpz_t());
  if (!lcm.fits_slong_p() || lcm > Integer(1) << 30) {
    throw ArgumentError("characteristic denominators too large");
  }
  CommonDenominator out;
  out.denominator = lcm.get_si();
  for (const auto& x : b) {
    Integer num = x.get_num() * (lcm / x.get_den());
    num %= lcm;  // only b mod 1 matters for m^T b
    out.numerators.push_back(num.get_si());
  }
  return out;
}

void validate_inputs(const ThetaCharacteristic& ch, const ComplexVector& z, const SiegelMatrix& omega) {
  const int g = omega.genus();
  if (ch.genus() != g || static_cast<int>(ch.bottom.size()) != g || z.size() != g) {
    throw ArgumentError("dimension mismatch between characteristic, point and period matrix");
  }
  if (!z.allFinite()) throw ArgumentError("evaluation point has non-finite entries");
}

}  // namespace

ThetaCharacteristic ThetaCharacteristic::zero(int g) { return {zero_vector(g), zero_vector(g)}; }

double gaussian_tail_bound(int g, double rho, double radius) {
  if (g < 1 || !(rho > 0.0) || !(radius > 0.0)) {
    throw ArgumentError("tail bound needs g >= 1, rho > 0 and radius > 0");
  }
  double best = std::numeric_limits<double>::infinity();
  for (int k = 0; k <= 24; ++k) {
    const double r = std::min(rho, radius) / 2.0 * std::pow(2.0, -0.5 * k);
    const auto moments = gaussian_moments(g - 1, radius - 2.0 * r);
    double integral = 0.0;
    for (int j = 0; j <= g - 1; ++j) integral += binomial(g - 1, j) * std::pow(r, g - 1 - j) * moments[j];
    best = std::min(best, g * std::pow(r, -g) * integral);
  }
  return best;
}

double truncation_radius(const Eigen::MatrixXd& imag, double tol) {
  if (!(tol > 0.0 && tol < 1.0)) throw ArgumentError("truncation tolerance must lie in (0, 1)");
  if (imag.rows() == 0 || imag.rows() != imag.cols()) {
    throw ArgumentError("imaginary part must be square and non-empty");
  }
  // Constructing a SiegelMatrix runs the positive-definiteness checks.
  const SiegelMatrix checked(imag.cast<Complex>() * Complex(0.0, 1.0));
  const int g = static_cast<int>(imag.rows());
  const double rho = std::sqrt(checked.min_imag_eigenvalue());

  double lo = 0.0;
  double hi = 1.0;
  while (gaussian_tail_bound(g, rho, hi) > tol) {
    lo = hi;
    hi *= 2.0;
    if (hi > 1e6) throw IllConditionedError("ill-conditioned period matrix: truncation radius overflow");
  }
  for (int iter = 0; iter < 80 && hi - lo > 1e-12 * hi; ++iter) {
    const double mid = 0.5 * (lo + hi);
    (gaussian_tail_bound(g, rho, mid) > tol ? lo : hi) = mid;
  }
  return hi;
}

ReducedPoint reduce_point(const ComplexVector& z, const SiegelMatrix& omega) {
  if (z.size() != omega.genus()) throw ArgumentError("point dimension does not match period matrix");
  const Eigen::VectorXd t = omega.imag_inverse() * Eigen::VectorXd(z.imag());
  ReducedPoint out;
  out.m = t.array().round().cast<int>();
  const ComplexVector shifted = z - omega.omega() * out.m.cast<Complex>();
  out.n = shifted.real().array().round().cast<int>();
  out.z0 = shifted - out.n.cast<double>().cast<Complex>();

  const Eigen::VectorXd md = out.m.cast<double>();
  const Eigen::VectorXd y0 = out.z0.imag();
  out.log_abs_cocycle = kPi * md.dot(omega.imag_part() * md) + kTwoPi * md.dot(y0);
  const double phase =
      -kPi * md.dot(omega.real_part() * md) - kTwoPi * md.dot(Eigen::VectorXd(out.z0.real()));
  out.cocycle = std::polar(std::exp(out.log_abs_cocycle), phase);
  return out;
}

ThetaValue eval_theta_at_radius(const ThetaCharacteristic& ch, const ComplexVector& z,
                                const SiegelMatrix& omega, double radius) {
  validate_inputs(ch, z, omega);
  const int g = omega.genus();
  const double rho = std::sqrt(omega.min_imag_eigenvalue());
  if (!(radius > 0.0)) throw ArgumentError("truncation radius must be positive");

  const ReducedPoint reduced = reduce_point(z, omega);
  const Eigen::VectorXd x0 = reduced.z0.real();
  const Eigen::VectorXd y0 = reduced.z0.imag();
  const Eigen::VectorXd a = to_doubles(ch.top);
  const Eigen::VectorXd center = a + omega.imag_inverse() * y0;
  const Eigen::MatrixXd& U = omega.cholesky_upper();
  const Eigen::MatrixXd& X = omega.real_part();

  // Phase contributions of the bottom characteristic, assembled exactly.
  const CommonDenominator bden = common_denominator(ch.bottom);
  Rational a_dot_b;
  for (int i = 0; i < g; ++i) a_dot_b += ch.top[i] * ch.bottom[i];
  const double a_dot_b_phase = kTwoPi * fractional_part(a_dot_b).get_d();

  // Exact automorphy phase of the reduction for this characteristic:
  // 2 pi (a^T n - m^T b) in rationals, the rest in floating point.
  Rational exact_shift;
  for (int i = 0; i < g; ++i) {
    exact_shift += ch.top[i] * reduced.n(i) - ch.bottom[i] * reduced.m(i);
  }
  const Eigen::VectorXd md = reduced.m.cast<double>();
  const double cocycle_phase = kTwoPi * fractional_part(exact_shift).get_d() -
                               kPi * md.dot(X * md) - kTwoPi * md.dot(x0);

  double volume_estimate = std::pow(std::sqrt(kPi) * (radius + U.diagonal().maxCoeff()), g) /
                           std::tgamma(g / 2.0 + 1.0) / U.diagonal().prod();
  if (volume_estimate > kMaxLatticeTerms) {
    throw IllConditionedError("ill-conditioned period matrix: lattice sum needs ~" +
                              std::to_string(volume_estimate) + " terms");
  }

  Complex sum{0.0, 0.0};
  double abs_sum = 0.0;
  std::size_t terms = 0;
  const double r2 = radius * radius;
  std::vector<long long> m(static_cast<std::size_t>(g));
  Eigen::VectorXd k(g);

  // Enumerate m with |U (m + center)|^2 <= R^2, last coordinate outermost.
  std::function<void(int, double)> enumerate = [&](int i, double budget) {
    double partial = 0.0;
    for (int j = i + 1; j < g; ++j) partial += U(i, j) * (static_cast<double>(m[j]) + center(j));
    const double reach = std::sqrt(std::max(budget, 0.0)) / U(i, i);
    const double mid = -partial / U(i, i) - center(i);
    const auto lo = static_cast<long long>(std::ceil(mid - reach));
    const auto hi = static_cast<long long>(std::floor(mid + reach));
    for (long long mi = lo; mi <= hi; ++mi) {
      const double comp = U(i, i) * (static_cast<double>(mi) + center(i)) + partial;
      const double rest = budget - comp * comp;
      if (rest < 0.0) continue;
      m[i] = mi;
      if (i > 0) {
        enumerate(i - 1, rest);
        continue;
      }
      long long bnum = 0;
      for (int j = 0; j < g; ++j) {
        k(j) = static_cast<double>(m[j]) + a(j);
        bnum = (bnum + (m[j] % bden.denominator) * bden.numerators[j]) % bden.denominator;
      }
      const double norm2 = r2 - rest;
      const double phase = kPi * k.dot(X * k) + kTwoPi * k.dot(x0) +
                           kTwoPi * static_cast<double>(bnum) / static_cast<double>(bden.denominator) +
                           a_dot_b_phase;
      const double magnitude = std::exp(-kPi * norm2);
      sum += std::polar(magnitude, phase);
      abs_sum += magnitude;
      ++terms;
    }
  };
  enumerate(g - 1, r2);

  ThetaValue out;
  out.scale = invariant_scale(z, omega);
  out.radius = radius;
  out.terms = terms;
  out.normalized = sum * std::polar(1.0, cocycle_phase);
  out.normalized_error = gaussian_tail_bound(g, rho, radius) +
                         64.0 * std::numeric_limits<double>::epsilon() * abs_sum;
  const double growth = std::exp(out.scale);
  out.value = out.normalized * growth;
  out.error_bound = out.normalized_error * growth;
  return out;
}

ThetaValue eval_theta(const ThetaCharacteristic& ch, const ComplexVector& z,
                      const SiegelMatrix& omega, double tol) {
  // half the budget for truncation, the rest absorbs the roundoff term
  return eval_theta_at_radius(ch, z, omega, truncation_radius(omega.imag_part(), 0.5 * tol));
}

ThetaValue eval_theta(const ComplexVector& z, const SiegelMatrix& omega, double tol) {
  return eval_theta(ThetaCharacteristic::zero(omega.genus()), z, omega, tol);
}

double reference_magnitude(const SiegelMatrix& omega, const Config& config) {
  const int g = omega.genus();
  const double radius = truncation_radius(omega.imag_part(), config.theta_tol);
  const auto zero = ThetaCharacteristic::zero(g);
  Rng rng(config.reference_seed);
  std::vector<double> magnitudes;
  magnitudes.reserve(static_cast<std::size_t>(config.reference_samples));
  for (int s = 0; s < config.reference_samples; ++s) {
    Eigen::VectorXd u(g), v(g);
    for (int i = 0; i < g; ++i) u(i) = uniform01(rng);
    for (int i = 0; i < g; ++i) v(i) = uniform01(rng);
    magnitudes.push_back(
        eval_theta_at_radius(zero, omega.lattice_point(u, v), omega, radius).normalized_magnitude());
  }
  std::sort(magnitudes.begin(), magnitudes.end());
  const std::size_t n = magnitudes.size();
  return n % 2 ? magnitudes[n / 2] : 0.5 * (magnitudes[n / 2 - 1] + magnitudes[n / 2]);
}

VanishingCriterion make_vanishing_criterion(const SiegelMatrix& omega, double rel_tol,
                                            const Config& config) {
  if (!(rel_tol > 0.0 && rel_tol < 1.0)) throw ArgumentError("rel_tol must lie in (0, 1)");
  VanishingCriterion out;
  out.reference = reference_magnitude(omega, config);
  out.threshold = rel_tol * out.reference;
  out.ambiguity_factor = config.ambiguity_factor;
  return out;
}

bool is_on_theta(const ComplexVector& z, const SiegelMatrix& omega, double rel_tol,
                 const Config& config) {
  const auto criterion = make_vanishing_criterion(omega, rel_tol, config);
  return criterion.vanishes(eval_theta(z, omega, config.theta_tol).normalized_magnitude());
}

}  // namespace thetadiv
