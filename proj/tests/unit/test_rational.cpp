#include <doctest.h>

#include <thetadiv/config.hpp>
#include <thetadiv/errors.hpp>
#include <thetadiv/rational.hpp>

using namespace thetadiv;

TEST_SUITE("rational") {

TEST_CASE("parse_rational forms") {
  CHECK(parse_rational("3") == 3);
  CHECK(parse_rational(" -4/6 ") == Rational(-2, 3));
  CHECK(parse_rational("0.125") == Rational(1, 8));
  CHECK(parse_rational("-1.5") == Rational(-3, 2));
  CHECK(parse_rational("+2") == 2);
  for (const char* bad : {"", "1/0", "a", "1.2.3", "1/", "/2", "0x10", "1e3"}) {
    CHECK_THROWS_AS(parse_rational(bad), ArgumentError);
  }
}

TEST_CASE("parse_rational_vector") {
  const RationalVector v = parse_rational_vector("1/2, 0,-1/3");
  REQUIRE(v.size() == 3);
  CHECK(v[0] == Rational(1, 2));
  CHECK(v[2] == Rational(-1, 3));
  CHECK(to_string(v) == "1/2,0,-1/3");
}

TEST_CASE("floor and fractional part") {
  CHECK(floor_of(Rational(-1, 3)) == -1);
  CHECK(fractional_part(Rational(-1, 3)) == Rational(2, 3));
  CHECK(fractional_part(Rational(7, 2)) == Rational(1, 2));
  CHECK(power(Rational(2, 3), 3) == Rational(8, 27));
  CHECK(power(Integer(3), 40) == Integer("12157665459056928801"));
}

TEST_CASE("config validation") {
  Config c;
  CHECK_NOTHROW(validate(c));
  c.rel_tol = 0.0;
  CHECK_THROWS_AS(validate(c), ArgumentError);
  c = Config{};
  c.reference_samples = 0;
  CHECK_THROWS_AS(validate(c), ArgumentError);
  c = Config{};
  c.ambiguity_factor = 0.5;
  CHECK_THROWS_AS(validate(c), ArgumentError);
}

}
