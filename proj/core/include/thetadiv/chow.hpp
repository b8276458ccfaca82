#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "thetadiv/random.hpp"
#include "thetadiv/rational.hpp"

namespace thetadiv {

/// The Chow class r * exp(mu * theta) of a semihomogeneous object on a
/// g-dimensional ppav, with c_1 = r * mu * theta. Exact throughout.
struct ChowClass {
  Rational rank;
  Rational slope;
  int g = 1;

  friend bool operator==(const ChowClass&, const ChowClass&) = default;
};

/// Coprime positive (a, b): labels W_{a,b}, rank a^g, det O(Theta)^{a^{g-1} b}.
struct BundleSpec {
  int a = 1;
  int b = 1;
  int g = 1;

  BundleSpec(int a, int b, int g);
};

/// O(k Theta) as a class: (1, k).
ChowClass line_bundle_class(const Rational& k, int g);

/// ch(W_{a,b}) = a^g exp((b/a) theta).
ChowClass ch_W(const BundleSpec& spec);

ChowClass tensor(const ChowClass& lhs, const ChowClass& rhs);
ChowClass dual(const ChowClass& c);

/// Fourier-Mukai transform on scalar classes: (r mu^g, -1/mu). Throws
/// DegenerateClassError for mu = 0.
ChowClass fm_transform(const ChowClass& c);

/// Inverse of fm_transform: the composite of the two transforms is (-1)^g on
/// scalar classes (the shift [-g]; (-1)^* acts trivially on them).
ChowClass fm_inverse(const ChowClass& c);

/// Skew Pontryagin product F *^ G, computed as the inverse transform of
/// fm(F) (x) fm(G). Throws DegenerateClassError when a slope or the slope sum vanishes.
ChowClass pontryagin_skew(const ChowClass& lhs, const ChowClass& rhs);

/// chi = r mu^g.
Rational euler_char(const ChowClass& c);

/// c_1 in units of theta: r mu.
Rational c1_coeff(const ChowClass& c);

/// IT(0) for a semihomogeneous class: r > 0 and mu > 0.
bool it0_check(const ChowClass& c);

/// W is globally generated when W(-Theta) is IT(0).
bool globally_generated(const ChowClass& c);

/// Surjectivity criterion for H^0(E) (x) H^0(F) -> H^0(E (x) F):
/// mu_F > 1 and mu_E > mu_F / (mu_F - 1).
bool pp_criterion(const ChowClass& e, const ChowClass& f);

/// The criterion in its original form: E(-Theta), F(-Theta) IT(0) and
/// delta_{E(-Theta)} + delta_{fm(F(-Theta))} > 0, computed through
/// tensor/dual/fm_transform.
bool transform_criterion(const ChowClass& e, const ChowClass& f);

/// True iff pp_criterion and transform_criterion agree. Requires mu_F > 1
/// (throws DegenerateClassError for mu_F = 1, ArgumentError below 1).
bool mascherata_equivalence(const ChowClass& e, const ChowClass& f);

struct C11Result {
  ChowClass product;
  Rational expected_rank;
  Rational expected_slope;
  Rational expected_c1;
  bool holds = false;
};

/// (W_{a,a+b} (x) W_{b,a+b}) *^ W_{a,a+b} via the transform pipeline, checked
/// against rank (a+b)^g a^g (a+2b)^g, slope (a+b)^2/(a(a+2b)) and
/// c_1 = (a+b)^{g+2} a^{g-1} (a+2b)^{g-1}.
C11Result verify_c11(int a, int b, int g);

/// chi(W_{n-1,n}^{(x)2} (x) O(n Theta)) / chi(W_{n-1,n}) with n = a + b.
/// Throws std::logic_error if the ratio differs from ((a+b)^2 - 1)^g.
Integer rank_lower_bound(int a, int b, int g);

/// True iff n^{g+2} (n^2-1)^{g-1} is not a multiple of n^{2g}.
bool contradiction_check(int n, int g);

/// (3/2) n^2 < 2n^2 - 1 and 2n^2 - 1 = n^4 - (n^2 - 1)^2, where (3/2) n^2 is
/// 2n^2 / m with Seshadri constant m = 4/3.
bool g2_seshadri_arithmetic(int n);

/// |Sigma(W_{a,b})| = a^{2g}.
Integer sigma_group_order(int a, int g);

/// One row of the identity table emitted by chow_report.
struct IdentityRow {
  std::string identity;
  std::string parameters;
  std::string expected;
  std::string computed;
  bool pass = false;
};

struct ReportRange {
  int amax = 5;
  int gmax = 6;
  /// n-indexed identities (a = n - 1, b = 1) for 2 <= n <= nmax.
  int nmax = 6;
  /// Divisibility and g = 2 arithmetic for 2 <= n <= arithmetic_max, 1 <= g <= arithmetic_max.
  int arithmetic_max = 12;
  /// Random slope pairs for the criterion equivalence.
  int random_pairs = 1000;
  std::uint64_t seed = 0x5eed0003;
};

/// Every exact identity over coprime 1 <= a, b <= amax and 1 <= g <= gmax,
/// plus the n-indexed and arithmetic families.
std::vector<IdentityRow> chow_report(const ReportRange& range = {});

/// Slope pair (mu_E, mu_F) with mu_F > 1, numerators and denominators bounded.
std::pair<Rational, Rational> random_slope_pair(Rng& rng);

std::string to_string(const ChowClass& c);

}  // namespace thetadiv
