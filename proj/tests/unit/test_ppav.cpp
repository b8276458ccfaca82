#include <doctest.h>

#include <algorithm>
#include <set>

#include <thetadiv/errors.hpp>
#include <thetadiv/ppav.hpp>
#include <thetadiv/theta.hpp>

using namespace thetadiv;

namespace {

const Complex I(0.0, 1.0);

AbelianPoint point_of(const TorsionIndex& idx) { return idx.point(); }

// n^{2g} - prod_i (n^2 - c_i)
std::int64_t inclusion_exclusion(int n, const std::vector<std::int64_t>& factor_counts) {
  std::int64_t total = 1, missing = 1;
  for (std::int64_t c : factor_counts) {
    total *= std::int64_t(n) * n;
    missing *= std::int64_t(n) * n - c;
  }
  return total - missing;
}

AbelianPoint factor(const AbelianPoint& x, int i) {
  AbelianPoint out = AbelianPoint::rational({x.p[static_cast<std::size_t>(i)]}, {x.q[static_cast<std::size_t>(i)]});
  out.extra(0) = x.extra(i);
  return out;
}

}  // namespace

TEST_SUITE("ppav") {

TEST_CASE("enumerate_torsion sizes and order") {
  CHECK(enumerate_torsion(1, 3).size() == 1);
  CHECK(enumerate_torsion(2, 2).size() == 16);
  const auto three = enumerate_torsion(3, 2);
  CHECK(three.size() == 81);
  CHECK(std::is_sorted(three.begin(), three.end()));
  CHECK(std::set<TorsionIndex>(three.begin(), three.end()).size() == 81);
  CHECK_THROWS_AS(enumerate_torsion(5, 4), InstanceTooLargeError);
  CHECK_THROWS_AS(enumerate_torsion(0, 1), ArgumentError);
}

TEST_CASE("torsion index embeds injectively") {
  const auto all = enumerate_torsion(3, 2);
  std::vector<AbelianPoint> points;
  for (const auto& idx : all) points.push_back(idx.point());
  for (std::size_t i = 0; i < points.size(); ++i) {
    CHECK(points[i].is_torsion_of_order_dividing(3));
    for (std::size_t j = i + 1; j < points.size(); ++j) CHECK_FALSE(points[i] == points[j]);
  }
}

TEST_CASE("torsion predicate is exact") {
  const AbelianPoint half = AbelianPoint::rational({Rational(1, 2)}, {Rational(0)});
  CHECK(half.is_torsion_of_order_dividing(2));
  CHECK(half.is_torsion_of_order_dividing(4));
  CHECK_FALSE(half.is_torsion_of_order_dividing(3));
  AbelianPoint moved = half;
  moved.extra(0) = Complex(1e-30, 0.0);
  CHECK_FALSE(moved.is_torsion_of_order_dividing(2));
}

TEST_CASE("torsion bound values") {
  CHECK(torsion_bound(2, 1) == 1);
  CHECK(torsion_bound(2, 2) == 7);
  CHECK(torsion_bound(3, 2) == 17);
  CHECK(torsion_bound(4, 2) == 31);
  CHECK(torsion_bound(2, 3) == 37);
}

TEST_CASE("g = 1, n = 2, x = 0 gives one point") {
  for (Complex tau : {I, Complex(0.5, 1.5), Complex(0.1, 0.6)}) {
    const CountReport r = count_torsion_on_theta(SiegelMatrix::from_tau(tau), 2, AbelianPoint::origin(1));
    CHECK(r.count == 1);
    REQUIRE(r.hits.size() == 1);
    CHECK(r.hits[0].p == std::vector<int>{1});
    CHECK(r.hits[0].q == std::vector<int>{1});
    CHECK(r.indeterminate.empty());
  }
}

TEST_CASE("generic g = 2 half-period count is 6 on 20 seeds") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const CountReport r = count_torsion_on_theta(random_siegel(2, seed), 2, AbelianPoint::origin(2));
    CHECK(r.count == 6);
    CHECK(r.indeterminate.empty());
    // the hits are the odd characteristics: p . q odd
    for (const auto& h : r.hits) CHECK((h.p[0] * h.q[0] + h.p[1] * h.q[1]) % 2 == 1);
  }
}

TEST_CASE("equality translates attain the bound") {
  const Complex taus[] = {I, Complex(0.5, 1.5), Complex(-0.2, 1.1)};
  struct Case {
    int g, n;
    std::int64_t expected;
  };
  for (const Case c : {Case{1, 2, 1}, Case{1, 5, 1}, Case{2, 2, 7}, Case{2, 3, 17}, Case{2, 4, 31}, Case{3, 2, 37}}) {
    const std::span<const Complex> t(taus, static_cast<std::size_t>(c.g));
    const CountReport r = count_torsion_on_theta(product_ppav(t), c.n, equality_translate(t, c.n));
    CHECK(r.count == c.expected);
    CHECK(r.count == r.bound);
    std::vector<std::int64_t> factors;
    for (int i = 0; i < c.g; ++i) {
      factors.push_back(count_torsion_on_theta(SiegelMatrix::from_tau(t[static_cast<std::size_t>(i)]), c.n,
                                               factor(equality_translate(t, c.n), i))
                            .count);
    }
    CHECK(inclusion_exclusion(c.n, factors) == r.count);
  }
}

TEST_CASE("inclusion-exclusion for diagonal period matrices at other translates") {
  const Complex taus[] = {Complex(0.1, 1.2), Complex(-0.3, 0.9)};
  const SiegelMatrix omega = product_ppav(taus);
  std::vector<AbelianPoint> translates = {
      AbelianPoint::origin(2),
      AbelianPoint::rational({Rational(1, 2), Rational(0)}, {Rational(1, 2), Rational(1, 3)}),
      AbelianPoint::rational({Rational(1, 6), Rational(1, 2)}, {Rational(1, 2), Rational(1, 2)}),
  };
  ComplexVector generic(2);
  generic << Complex(0.11, 0.07), Complex(0.3, -0.2);
  translates.push_back(AbelianPoint::complex(generic));
  for (int n : {2, 3}) {
    for (const auto& x : translates) {
      const CountReport r = count_torsion_on_theta(omega, n, x);
      const std::int64_t a = count_torsion_on_theta(SiegelMatrix::from_tau(taus[0]), n, factor(x, 0)).count;
      const std::int64_t b = count_torsion_on_theta(SiegelMatrix::from_tau(taus[1]), n, factor(x, 1)).count;
      CHECK(r.count == inclusion_exclusion(n, {a, b}));
      CHECK(r.count <= r.bound);
    }
  }
}

TEST_CASE("bound invariant on random instances") {
  for (std::uint64_t seed = 1; seed <= 4; ++seed) {
    for (int n = 2; n <= 4; ++n) {
      const SiegelMatrix omega = random_siegel(2, seed);
      for (const auto& x : {AbelianPoint::origin(2),
                            AbelianPoint::rational({Rational(1, 3), Rational(1, 2)}, {Rational(0), Rational(1, 2)})}) {
        const CountReport r = count_torsion_on_theta(omega, n, x);
        CHECK(r.count <= r.bound);
        CHECK(r.indeterminate.empty());
      }
    }
  }
}

TEST_CASE("count is symmetric under x -> -x") {
  const SiegelMatrix omega = random_siegel(2, 17);
  const AbelianPoint x = AbelianPoint::rational({Rational(1, 3), Rational(2, 3)}, {Rational(1, 6), Rational(0)});
  for (int n : {2, 3}) {
    CHECK(count_torsion_on_theta(omega, n, x).count == count_torsion_on_theta(omega, n, -x).count);
  }
  const Complex taus[] = {I, Complex(0.5, 1.5)};
  const AbelianPoint e = equality_translate(taus, 3);
  CHECK(count_torsion_on_theta(product_ppav(taus), 3, e).count ==
        count_torsion_on_theta(product_ppav(taus), 3, -e).count);
}

TEST_CASE("translation by n-torsion permutes hits") {
  const Complex taus[] = {I, Complex(0.5, 1.5)};
  const SiegelMatrix omega = product_ppav(taus);
  const int n = 3;
  const AbelianPoint x = equality_translate(taus, n);
  const CountReport base = count_torsion_on_theta(omega, n, x);
  for (const auto& eta : {TorsionIndex{n, {1, 0}, {2, 1}}, TorsionIndex{n, {0, 2}, {0, 0}}}) {
    const CountReport moved = count_torsion_on_theta(omega, n, x + point_of(eta));
    CHECK(moved.count == base.count);
    std::set<TorsionIndex> expected;
    for (const auto& h : base.hits) {
      TorsionIndex shifted{n, h.p, h.q};
      for (int i = 0; i < 2; ++i) {
        shifted.p[static_cast<std::size_t>(i)] = ((h.p[static_cast<std::size_t>(i)] - eta.p[static_cast<std::size_t>(i)]) % n + n) % n;
        shifted.q[static_cast<std::size_t>(i)] = ((h.q[static_cast<std::size_t>(i)] - eta.q[static_cast<std::size_t>(i)]) % n + n) % n;
      }
      expected.insert(shifted);
    }
    CHECK(std::set<TorsionIndex>(moved.hits.begin(), moved.hits.end()) == expected);
  }
}

TEST_CASE("other symmetric representatives Theta + kappa, kappa in A[2]") {
  const Complex taus[] = {I, Complex(0.5, 1.5)};
  const SiegelMatrix omega = product_ppav(taus);
  const int n = 3;
  const Config config;
  const VanishingCriterion criterion = make_vanishing_criterion(omega, config.rel_tol, config);
  const auto indices = enumerate_torsion(n, 2, config.enumeration_cap);
  // theta[kappa](z) = 0 iff z lies on Theta + kappa
  const auto count_on = [&](const TorsionIndex& kappa, const AbelianPoint& y) {
    const AbelianPoint k = kappa.point();
    const ThetaCharacteristic ch{k.p, k.q};
    int count = 0;
    for (const auto& eta : indices) {
      const double m = eval_theta(ch, (eta.point() + y).embed(omega), omega, config.theta_tol).normalized_magnitude();
      CHECK_FALSE(criterion.ambiguous(m));
      if (criterion.vanishes(m)) ++count;
    }
    return count;
  };
  const AbelianPoint x = equality_translate(taus, n);
  const AbelianPoint generic = AbelianPoint::rational({Rational(1, 5), Rational(2, 7)}, {Rational(3, 7), Rational(1, 5)});
  for (const auto& kappa : enumerate_torsion(2, 2, 16)) {
    CHECK(count_on(kappa, x + -kappa.point()) == torsion_bound(n, 2));
    CHECK(count_on(kappa, generic) == count_torsion_on_theta(omega, n, generic + kappa.point()).count);
  }
}

TEST_CASE("margins separate hits from non-hits by decades") {
  for (int g = 1; g <= 3; ++g) {
    const CountReport r = count_torsion_on_theta(random_siegel(g, 42), 2, AbelianPoint::origin(g));
    CHECK(r.margins.size() == static_cast<std::size_t>(1) << (2 * g));
    for (double m : r.margins) CHECK((m < 1e-10 || m > 1e-3));
  }
}

TEST_CASE("count is independent of the worker count") {
  const SiegelMatrix omega = random_siegel(2, 5);
  Config serial, threaded;
  threaded.workers = 3;
  const CountReport a = count_torsion_on_theta(omega, 3, AbelianPoint::origin(2), serial);
  const CountReport b = count_torsion_on_theta(omega, 3, AbelianPoint::origin(2), threaded);
  CHECK(a.margins == b.margins);
  CHECK(a.hits == b.hits);
}

TEST_CASE("product_ppav") {
  const Complex one[] = {I};
  CHECK(product_ppav(one).omega()(0, 0) == I);
  const Complex two[] = {I, 2.0 * I};
  const SiegelMatrix d = product_ppav(two);
  CHECK(d.omega()(1, 1) == 2.0 * I);
  CHECK(d.omega()(0, 1) == Complex(0.0));
  const Complex bad[] = {I, Complex(1.0, 0.0)};
  CHECK_THROWS_AS(product_ppav(bad), ArgumentError);
}

TEST_CASE("equality translate coordinates") {
  const Complex taus[] = {I};
  const AbelianPoint x = equality_translate(taus, 7);
  CHECK(x.p == RationalVector{Rational(1, 2)});
  CHECK(x.q == RationalVector{Rational(1, 2)});
  CHECK(std::abs(x.embed(product_ppav(taus))(0) - Complex(0.5, 0.5)) < 1e-15);
}

TEST_CASE("random_siegel is deterministic and valid") {
  CHECK(random_siegel(2, 9) == random_siegel(2, 9));
  CHECK_FALSE(random_siegel(2, 9) == random_siegel(2, 10));
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const SiegelMatrix omega = random_siegel(2, seed);
    CHECK(omega.min_imag_eigenvalue() >= kRandomSiegelShift - 1e-12);
    CHECK(omega.omega()(0, 1) == omega.omega()(1, 0));
    CHECK(omega.real_part().cwiseAbs().maxCoeff() <= 0.5);
  }
  CHECK_THROWS_AS(random_siegel(4, 1), ArgumentError);
}

TEST_CASE("e_divisor_hits") {
  const Complex tau(0.2, 1.1);
  const SiegelMatrix omega = SiegelMatrix::from_tau(tau);
  ComplexVector gx(1), gy(1);
  gx << Complex(0.123, 0.0456);
  gy << Complex(0.311, 0.2);
  CHECK(e_divisor_hits(omega, 3, AbelianPoint::complex(gy), AbelianPoint::complex(gx)).empty());

  const AbelianPoint w0 = AbelianPoint::rational({Rational(1, 2)}, {Rational(1, 2)});
  const AbelianPoint x = w0 - AbelianPoint::complex(gy);
  const auto hits = e_divisor_hits(omega, 3, AbelianPoint::complex(gy), x);
  REQUIRE(hits.size() == 1);
  CHECK(hits[0] == TorsionIndex{3, {0}, {0}});

  const SiegelMatrix omega2 = random_siegel(2, 4);
  const AbelianPoint x2 = AbelianPoint::rational({Rational(1, 3), Rational(0)}, {Rational(0), Rational(1, 2)});
  CHECK(e_divisor_hits(omega2, 2, AbelianPoint::origin(2), x2) == count_torsion_on_theta(omega2, 2, x2).hits);
}

TEST_CASE("rational point arithmetic") {
  const AbelianPoint a = AbelianPoint::rational({Rational(1, 2)}, {Rational(1, 3)});
  const AbelianPoint b = AbelianPoint::rational({Rational(1, 6)}, {Rational(-1, 3)});
  const AbelianPoint s = a + b;
  CHECK(s.p[0] == Rational(2, 3));
  CHECK(s.q[0] == Rational(0));
  CHECK((a - a) == AbelianPoint::origin(1));
}

}
