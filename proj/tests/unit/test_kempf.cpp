#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <set>

#include <Eigen/SVD>

#include <thetadiv/chow.hpp>
#include <thetadiv/errors.hpp>
#include <thetadiv/kempf.hpp>

#include "helpers.hpp"

using namespace thetadiv;
using helpers::vec;

namespace {

const Complex I(0.0, 1.0);

AbelianPoint generic_y() { return AbelianPoint::complex(vec({Complex(0.3, 0.2)})); }

// y - x = (1+tau)/2 - 1/n, a constructed hit
AbelianPoint constructed_hit(int n) {
  Rational q = Rational(1, 2) - Rational(1, n);
  q.canonicalize();
  return AbelianPoint::rational({Rational(1, 2)}, {q});
}

int numerical_rank(const ComplexMatrix& m) {
  Eigen::JacobiSVD<ComplexMatrix> svd(m);
  const auto& s = svd.singularValues();
  int rank = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i) rank += s(i) > 1e-8 * s(0);
  return rank;
}

void check_quasi_periodicity(const SectionBasis& basis, std::uint64_t seed) {
  Rng rng(seed);
  const int g = basis.genus();
  for (int trial = 0; trial < 10; ++trial) {
    const ComplexVector z = helpers::random_point(rng, basis.cover(), -0.5, 0.5);
    const Eigen::VectorXi k = helpers::random_integers(rng, g, 2);
    const Eigen::VectorXi l = helpers::random_integers(rng, g, 2);
    const ComplexVector moved = z + basis.cover().lattice_point(k.cast<double>(), l.cast<double>());
    for (std::size_t i = 0; i < basis.count(); ++i) {
      const Complex lhs = basis.evaluate(i, moved).value;
      const Complex rhs = basis.automorphy(k, z) * basis.evaluate(i, z).value;
      CHECK(std::abs(lhs - rhs) <= 1e-9 * std::abs(rhs) + 1e-12 * std::abs(basis.automorphy(k, z)));
    }
  }
}

}  // namespace

TEST_SUITE("kempf") {

TEST_CASE("line_bundle_basis n = 1 vanishes on Theta") {
  const SiegelMatrix omega = random_siegel(2, 3);
  const SectionBasis basis = line_bundle_basis(1, AbelianPoint::origin(2), omega);
  CHECK(basis.count() == 1);
  Rng rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    const ComplexVector z = helpers::random_point(rng, omega);
    const ThetaValue s = basis.evaluate(0, z);
    const bool zero = s.normalized_magnitude() < 1e-6 * reference_magnitude(omega, {});
    CHECK(zero == is_on_theta(z, omega, 1e-6));
  }
  const AbelianPoint odd = AbelianPoint::rational({Rational(1, 2), Rational(0)}, {Rational(1, 2), Rational(0)});
  CHECK(basis.evaluate(0, odd.embed(omega)).normalized_magnitude() < 1e-10);
  CHECK(is_on_theta(odd.embed(omega), omega, 1e-6));
}

TEST_CASE("line_bundle_basis dimensions and independence") {
  const SiegelMatrix omega = random_siegel(2, 8);
  for (int n = 1; n <= 3; ++n) {
    const SectionBasis basis = line_bundle_basis(n, AbelianPoint::origin(2), omega);
    CHECK(Rational(static_cast<long>(basis.count())) == euler_char(line_bundle_class(n, 2)));
  }
  const SectionBasis two = line_bundle_basis(2, AbelianPoint::origin(2), omega);
  Rng rng(6);
  ComplexMatrix m(4, 20);
  for (int s = 0; s < 20; ++s) {
    const ComplexVector z = helpers::random_point(rng, omega);
    for (std::size_t i = 0; i < 4; ++i) m(static_cast<Eigen::Index>(i), s) = two.evaluate(i, z).normalized;
  }
  CHECK(numerical_rank(m) == 4);
}

TEST_CASE("section bases are quasi-periodic on their lattices") {
  check_quasi_periodicity(line_bundle_basis(2, AbelianPoint::origin(2), random_siegel(2, 4)), 1);
  check_quasi_periodicity(line_bundle_basis(3, AbelianPoint::rational({Rational(1, 3)}, {Rational(1, 5)}),
                                            SiegelMatrix::from_tau(Complex(0.2, 1.1))),
                          2);
  for (auto [a, d] : {std::pair{2, 3}, std::pair{3, 4}, std::pair{1, 5}}) {
    check_quasi_periodicity(pushforward_basis(a, d, generic_y(), I), 3 + static_cast<std::uint64_t>(a));
  }
}

TEST_CASE("pushforward basis") {
  const SectionBasis w23 = pushforward_basis(2, 3, AbelianPoint::origin(1), I);
  CHECK(w23.count() == 3);
  CHECK(Rational(3) == euler_char(ch_W({2, 3, 1})));
  CHECK(w23.cover().omega()(0, 0) == 2.0 * I);

  // a = 1 is the line bundle basis
  const AbelianPoint x = AbelianPoint::rational({Rational(1, 7)}, {Rational(2, 7)});
  const SectionBasis p = pushforward_basis(1, 3, x, Complex(0.1, 0.9));
  const SectionBasis l = line_bundle_basis(3, x, SiegelMatrix::from_tau(Complex(0.1, 0.9)));
  const ComplexVector z = vec({Complex(0.31, 0.17)});
  for (std::size_t i = 0; i < 3; ++i) CHECK(p.evaluate(i, z).value == l.evaluate(i, z).value);

  CHECK_THROWS_AS(pushforward_basis(2, 4, AbelianPoint::origin(1), I), ArgumentError);
}

TEST_CASE("multiplication matrix shapes") {
  const SiegelMatrix tau = SiegelMatrix::from_tau(I);
  const AbelianPoint o1 = AbelianPoint::origin(1);
  CHECK(multiplication_matrix(1, 1, o1, o1, tau, 32, 1).rows() == 4);
  const ComplexMatrix m12 = multiplication_matrix(1, 2, o1, generic_y(), tau, 36, 1);
  CHECK(m12.rows() == 9);
  CHECK(m12.cols() == 36);
  CHECK(numerical_rank(m12) <= 9);
  const AbelianPoint o2 = AbelianPoint::origin(2);
  CHECK(multiplication_matrix(1, 1, o2, o2, random_siegel(2, 1), 64, 1).rows() == 16);
  CHECK_THROWS_AS(multiplication_matrix(1, 2, o1, o1, tau, 20, 1), ArgumentError);
}

TEST_CASE("unsupported regimes fail loudly") {
  const AbelianPoint o2 = AbelianPoint::origin(2);
  CHECK_THROWS_AS(corank(1, 2, o2, o2, random_siegel(2, 1)), UnsupportedRegimeError);
  const AbelianPoint o3 = AbelianPoint::origin(3);
  CHECK_THROWS_AS(corank(1, 1, o3, o3, random_siegel(3, 1)), UnsupportedRegimeError);
  const AbelianPoint o1 = AbelianPoint::origin(1);
  CHECK_THROWS_AS(corank(2, 4, o1, o1, SiegelMatrix::from_tau(I)), ArgumentError);
}

TEST_CASE("g = 1 coranks") {
  const SiegelMatrix omega = SiegelMatrix::from_tau(I);
  const AbelianPoint o = AbelianPoint::origin(1);

  const CorankReport r11 = corank(1, 1, o, o, omega);
  CHECK(r11.corank == 1);
  CHECK(r11.torsion_count == 1);
  CHECK(r11.match);
  CHECK(r11.source_dim == 4);
  CHECK(r11.target_dim == 4);

  const CorankReport generic = corank(1, 2, o, generic_y(), omega);
  CHECK(generic.corank == 0);
  CHECK(generic.torsion_count == 0);

  const CorankReport hit = corank(1, 2, o, constructed_hit(3), omega);
  CHECK(hit.corank == 1);
  CHECK(hit.torsion_count == 1);
  CHECK(hit.match);
}

TEST_CASE("g = 1 reports satisfy the dimension, rank and gap invariants") {
  for (Complex tau : {I, Complex(0.5, 1.5)}) {
    const SiegelMatrix omega = SiegelMatrix::from_tau(tau);
    for (auto [a, b] : {std::pair{1, 1}, {1, 2}, {2, 1}, {1, 3}, {3, 1}, {2, 3}}) {
      const int n = a + b;
      for (const auto& y : {AbelianPoint::origin(1), generic_y(), constructed_hit(n)}) {
        const CorankReport r = corank(a, b, AbelianPoint::origin(1), y, omega);
        CHECK(r.source_dim == n * n);
        CHECK(r.target_dim == n * n);
        CHECK(r.corank == r.source_dim - r.numerical_rank);
        CHECK(r.match);
        CHECK(r.numerical_rank >= r.rank_bound);
        CHECK(r.rank_bound == (n * n - 1));
        CHECK(r.threshold == doctest::Approx(1e-7 * r.singular_values[0]));
        CHECK(r.min_accepted_sigma >= 10.0 * r.threshold);
        CHECK(r.max_rejected_sigma * 10.0 <= r.threshold);
        CHECK(std::is_sorted(r.singular_values.rbegin(), r.singular_values.rend()));
      }
    }
  }
}

TEST_CASE("coranks do not depend on the splitting of n") {
  const SiegelMatrix omega = SiegelMatrix::from_tau(Complex(0.5, 1.5));
  const AbelianPoint x = AbelianPoint::rational({Rational(1, 5)}, {Rational(2, 5)});
  for (int n : {3, 4, 5}) {
    for (const auto& y : {x, x + constructed_hit(n), x + generic_y()}) {
      std::set<std::int64_t> coranks;
      for (int a = 1; a < n; ++a) {
        if (std::gcd(a, n) == 1) coranks.insert(corank(a, n - a, x, y, omega).corank);
      }
      CHECK(coranks.size() == 1);
    }
  }
}

TEST_CASE("g = 2 Kempf map") {
  const AbelianPoint o = AbelianPoint::origin(2);
  for (std::uint64_t seed : {1, 2, 3}) {
    const CorankReport r = corank(1, 1, o, o, random_siegel(2, seed));
    CHECK(r.corank == 6);
    CHECK(r.torsion_count == 6);
    CHECK(r.numerical_rank == 10);
    CHECK_FALSE(r.equality_case);
  }
  const Complex taus[] = {I, Complex(0.5, 1.5)};
  const CorankReport eq = corank(1, 1, o, equality_translate(taus, 2), product_ppav(taus));
  CHECK(eq.corank == 7);
  CHECK(eq.torsion_count == 7);
  CHECK(eq.numerical_rank == eq.rank_bound);
  CHECK(eq.equality_case);
}

TEST_CASE("sample-count and seed stability") {
  const SiegelMatrix omega = SiegelMatrix::from_tau(Complex(0.5, 1.5));
  for (auto [a, b] : {std::pair{1, 2}, {2, 3}}) {
    const AbelianPoint y = constructed_hit(a + b);
    Config base;
    Config doubled = base;
    doubled.sample_factor = 2 * base.sample_factor;
    Config other_seed = base;
    other_seed.sample_seed = base.sample_seed + 977;
    const auto r0 = corank(a, b, AbelianPoint::origin(1), y, omega, base);
    CHECK(corank(a, b, AbelianPoint::origin(1), y, omega, doubled).numerical_rank == r0.numerical_rank);
    CHECK(corank(a, b, AbelianPoint::origin(1), y, omega, other_seed).numerical_rank == r0.numerical_rank);
  }
}

TEST_CASE("corank invariant under a common n-torsion translation") {
  const SiegelMatrix omega = SiegelMatrix::from_tau(I);
  const AbelianPoint eta = AbelianPoint::rational({Rational(1, 3)}, {Rational(2, 3)});
  const AbelianPoint x = AbelianPoint::origin(1);
  const AbelianPoint y = constructed_hit(3);
  const auto base = corank(1, 2, x, y, omega);
  const auto moved = corank(1, 2, x + eta, y + eta, omega);
  CHECK(base.corank == moved.corank);
  CHECK(moved.match);
}

TEST_CASE("twist calibration") {
  for (Complex tau : {I, Complex(0.5, 1.5), Complex(-0.37, 1.21)}) {
    CHECK(calibrate_twist(1, 2, tau).side == "y");
    CHECK(calibrate_twist(3, 1, tau).side == "none");
    for (auto [a, b] : {std::pair{2, 1}, {2, 3}, {4, 1}}) {
      const TwistCalibration c = calibrate_twist(a, b, tau);
      CHECK(c.side == "x");
      CHECK(c.accepted.size() == 1);
      CHECK(c.matches_closed_form);
      CHECK(c.twist == closed_form_twist(a, tau));
    }
  }
}

TEST_CASE("reports record the calibrated twist") {
  const CorankReport r = corank(2, 3, AbelianPoint::origin(1), generic_y(), SiegelMatrix::from_tau(I));
  CHECK(r.twist_side == "x");
  CHECK(r.twist == Complex{});
  CHECK(r.samples == 8 * 25);
}

TEST_CASE("singular locus scan") {
  const Complex tau = I;
  const ScanResult s11 = singular_locus_scan(1, 1, AbelianPoint::origin(1), tau, 4);
  CHECK(s11.consistent);
  std::int64_t positive = 0;
  for (const auto& p : s11.points) {
    if (!p.predicted) CHECK(p.corank == 0);
    positive += p.corank > 0;
    CHECK(p.predicted == p.divisor_predicted);
  }
  CHECK(positive == 4);

  const ScanResult s12 = singular_locus_scan(1, 2, AbelianPoint::rational({Rational(1, 7)}, {Rational(0)}), tau, 3);
  CHECK(s12.consistent);
  std::int64_t predicted = 0;
  for (const auto& p : s12.points) {
    predicted += p.predicted;
    CHECK((p.corank > 0) == p.predicted);
    if (p.predicted) CHECK(p.corank == 1);
  }
  CHECK(predicted == 9);
}

}
