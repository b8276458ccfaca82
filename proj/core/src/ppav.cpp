#include "thetadiv/ppav.hpp"

#include <cmath>
#include <string>

#include "thetadiv/errors.hpp"
#include "thetadiv/parallel.hpp"
#include "thetadiv/random.hpp"

namespace thetadiv {

namespace {

void require_genus(const AbelianPoint& x, const SiegelMatrix& omega) {
  if (x.genus() != omega.genus() || static_cast<int>(x.q.size()) != omega.genus() ||
      x.extra.size() != omega.genus()) {
    throw ArgumentError("point dimension does not match period matrix");
  }
}

}  // namespace

AbelianPoint AbelianPoint::origin(int g) {
  if (g < 1) throw ArgumentError("genus must be positive");
  return {zero_vector(g), zero_vector(g), ComplexVector::Zero(g)};
}

AbelianPoint AbelianPoint::rational(RationalVector p, RationalVector q) {
  if (p.empty() || p.size() != q.size()) throw ArgumentError("p and q must have equal positive length");
  const auto g = static_cast<Eigen::Index>(p.size());
  return {std::move(p), std::move(q), ComplexVector::Zero(g)};
}

AbelianPoint AbelianPoint::complex(const ComplexVector& z) {
  AbelianPoint out = origin(static_cast<int>(z.size()));
  out.extra = z;
  return out;
}

bool AbelianPoint::is_torsion_of_order_dividing(int n) const {
  if (n < 1) throw ArgumentError("torsion order must be positive");
  if (!extra.isZero(0.0)) return false;
  const auto integral = [n](const Rational& r) { return Rational(r * n).get_den() == 1; };
  for (const auto& r : p) {
    if (!integral(r)) return false;
  }
  for (const auto& r : q) {
    if (!integral(r)) return false;
  }
  return true;
}

ComplexVector AbelianPoint::embed(const SiegelMatrix& omega) const {
  require_genus(*this, omega);
  const int g = genus();
  Eigen::VectorXd pd(g), qd(g);
  for (int i = 0; i < g; ++i) {
    pd(i) = p[i].get_d();
    qd(i) = q[i].get_d();
  }
  return omega.lattice_point(pd, qd) + extra;
}

AbelianPoint AbelianPoint::operator-() const {
  AbelianPoint out = *this;
  for (auto& r : out.p) r = -r;
  for (auto& r : out.q) r = -r;
  out.extra = -extra;
  return out;
}

AbelianPoint operator+(const AbelianPoint& lhs, const AbelianPoint& rhs) {
  if (lhs.genus() != rhs.genus()) throw ArgumentError("cannot add points of different genus");
  AbelianPoint out = lhs;
  for (std::size_t i = 0; i < out.p.size(); ++i) {
    out.p[i] += rhs.p[i];
    out.q[i] += rhs.q[i];
  }
  out.extra += rhs.extra;
  return out;
}

bool operator==(const AbelianPoint& lhs, const AbelianPoint& rhs) {
  return lhs.p == rhs.p && lhs.q == rhs.q && lhs.extra == rhs.extra;
}

AbelianPoint TorsionIndex::point() const {
  RationalVector pr, qr;
  for (int v : p) pr.emplace_back(v, n);
  for (int v : q) qr.emplace_back(v, n);
  for (auto& r : pr) r.canonicalize();
  for (auto& r : qr) r.canonicalize();
  return AbelianPoint::rational(std::move(pr), std::move(qr));
}

std::int64_t torsion_bound(int n, int g) {
  if (n < 1 || g < 1) throw ArgumentError("torsion_bound needs n >= 1 and g >= 1");
  const Integer nn(n);
  const Integer bound = power(nn, static_cast<unsigned>(2 * g)) - power(Integer(nn * nn - 1), static_cast<unsigned>(g));
  if (!bound.fits_slong_p()) throw InstanceTooLargeError("instance too large: bound overflows");
  return bound.get_si();
}

std::vector<TorsionIndex> enumerate_torsion(int n, int g, std::size_t cap) {
  if (n < 1 || g < 1) throw ArgumentError("enumerate_torsion needs n >= 1 and g >= 1");
  const Integer total = power(Integer(n), 2u * g);
  if (total > Integer(static_cast<unsigned long>(cap))) {
    throw InstanceTooLargeError("instance too large: " + total.get_str() + " torsion points exceed cap " +
                                std::to_string(cap));
  }
  const auto size = total.get_ui();
  std::vector<TorsionIndex> out;
  out.reserve(size);
  // Digits of a base-n counter, most significant first: p_0..p_{g-1}, q_0..q_{g-1}.
  std::vector<int> digits(static_cast<std::size_t>(2 * g), 0);
  for (unsigned long k = 0; k < size; ++k) {
    TorsionIndex idx;
    idx.n = n;
    idx.p.assign(digits.begin(), digits.begin() + g);
    idx.q.assign(digits.begin() + g, digits.end());
    out.push_back(std::move(idx));
    for (int d = 2 * g - 1; d >= 0; --d) {
      if (++digits[d] < n) break;
      digits[d] = 0;
    }
  }
  return out;
}

double normalized_theta_magnitude(const AbelianPoint& point, const SiegelMatrix& omega,
                                  double radius) {
  require_genus(point, omega);
  ThetaCharacteristic ch;
  for (const auto& r : point.p) ch.top.push_back(fractional_part(r));
  for (const auto& r : point.q) ch.bottom.push_back(fractional_part(r));
  return eval_theta_at_radius(ch, point.extra, omega, radius).normalized_magnitude();
}

CountReport count_torsion_on_theta(const SiegelMatrix& omega, int n, const AbelianPoint& x,
                                   const VanishingCriterion& criterion, const Config& config) {
  if (n < 1) throw ArgumentError("torsion order must be positive");
  require_genus(x, omega);
  const int g = omega.genus();
  const auto indices = enumerate_torsion(n, g, config.enumeration_cap);
  const double radius = truncation_radius(omega.imag_part(), config.theta_tol);

  CountReport report;
  report.n = n;
  report.g = g;
  report.x = x;
  report.bound = torsion_bound(n, g);
  report.reference = criterion.reference;
  report.threshold = criterion.threshold;
  report.margins.assign(indices.size(), 0.0);
  parallel_for(indices.size(), config.workers, [&](std::size_t i) {
    report.margins[i] = normalized_theta_magnitude(indices[i].point() + x, omega, radius);
  });
  for (std::size_t i = 0; i < indices.size(); ++i) {
    if (criterion.vanishes(report.margins[i])) report.hits.push_back(indices[i]);
    if (criterion.ambiguous(report.margins[i])) report.indeterminate.push_back(indices[i]);
  }
  report.count = static_cast<std::int64_t>(report.hits.size());
  return report;
}

CountReport count_torsion_on_theta(const SiegelMatrix& omega, int n, const AbelianPoint& x,
                                   const Config& config) {
  return count_torsion_on_theta(omega, n, x, make_vanishing_criterion(omega, config.rel_tol, config),
                                config);
}

SiegelMatrix product_ppav(std::span<const Complex> taus) {
  if (taus.empty()) throw ArgumentError("product_ppav needs at least one factor");
  const auto g = static_cast<Eigen::Index>(taus.size());
  ComplexMatrix omega = ComplexMatrix::Zero(g, g);
  for (Eigen::Index i = 0; i < g; ++i) {
    if (!(taus[i].imag() > 0.0)) throw ArgumentError("every tau must have positive imaginary part");
    omega(i, i) = taus[i];
  }
  return SiegelMatrix(omega);
}

AbelianPoint equality_translate(std::span<const Complex> taus, int n) {
  if (taus.empty()) throw ArgumentError("equality_translate needs at least one factor");
  if (n < 1) throw ArgumentError("torsion order must be positive");
  const RationalVector half(taus.size(), Rational(1, 2));
  return AbelianPoint::rational(half, half);
}

SiegelMatrix random_siegel(int g, std::uint64_t seed) {
  if (g < 1 || g > 3) throw ArgumentError("random_siegel supports 1 <= g <= 3");
  Rng rng(seed);
  Eigen::MatrixXd re(g, g), q(g, g);
  for (int i = 0; i < g; ++i) {
    for (int j = i; j < g; ++j) re(i, j) = re(j, i) = uniform(rng, -0.5, 0.5);
  }
  for (int i = 0; i < g; ++i) {
    for (int j = 0; j < g; ++j) q(i, j) = uniform(rng, -0.5, 0.5);
  }
  const Eigen::MatrixXd im = q.transpose() * q + kRandomSiegelShift * Eigen::MatrixXd::Identity(g, g);
  ComplexMatrix omega(g, g);
  omega.real() = re;
  omega.imag() = im;
  return SiegelMatrix(omega);
}

std::vector<TorsionIndex> e_divisor_hits(const SiegelMatrix& omega, int n, const AbelianPoint& y,
                                         const AbelianPoint& x, const Config& config) {
  return count_torsion_on_theta(omega, n, x + y, config).hits;
}

}  // namespace thetadiv
