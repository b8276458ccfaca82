#include "thetadiv/rational.hpp"

#include <cctype>

#include "thetadiv/errors.hpp"

namespace thetadiv {

namespace {

std::string trim(std::string_view text) {
  std::size_t begin = 0;
  std::size_t end = text.size();
  while (begin < end && std::isspace(static_cast<unsigned char>(text[begin]))) ++begin;
  while (end > begin && std::isspace(static_cast<unsigned char>(text[end - 1]))) --end;
  return std::string(text.substr(begin, end - begin));
}

bool is_integer_literal(const std::string& s) {
  std::size_t i = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  }
  return true;
}

Integer parse_integer(const std::string& s) {
  if (!is_integer_literal(s)) throw ArgumentError("not an integer: '" + s + "'");
  return Integer(s[0] == '+' ? s.substr(1) : s, 10);
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const std::string s = trim(text);
  if (s.empty()) throw ArgumentError("empty rational literal");

  if (const auto slash = s.find('/'); slash != std::string::npos) {
    const Integer num = parse_integer(trim(s.substr(0, slash)));
    const Integer den = parse_integer(trim(s.substr(slash + 1)));
    if (den == 0) throw ArgumentError("zero denominator in '" + s + "'");
    Rational r(num, den);
    r.canonicalize();
    return r;
  }
  if (const auto dot = s.find('.'); dot != std::string::npos) {
    const std::string digits = s.substr(0, dot) + s.substr(dot + 1);
    if (!is_integer_literal(digits)) throw ArgumentError("malformed decimal '" + s + "'");
    const auto places = static_cast<unsigned>(s.size() - dot - 1);
    Rational r(parse_integer(digits), power(Integer(10), places));
    r.canonicalize();
    return r;
  }
  return Rational(parse_integer(s));
}

RationalVector parse_rational_vector(std::string_view text) {
  RationalVector out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto comma = text.find(',', start);
    const auto piece = text.substr(start, comma == std::string_view::npos ? std::string_view::npos
                                                                          : comma - start);
    out.push_back(parse_rational(piece));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

std::string to_string(const Rational& value) { return value.get_str(); }

std::string to_string(const RationalVector& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ',';
    out += values[i].get_str();
  }
  return out;
}

Integer floor_of(const Rational& value) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), value.get_num_mpz_t(), value.get_den_mpz_t());
  return q;
}

Rational fractional_part(const Rational& value) { return value - Rational(floor_of(value)); }

RationalVector zero_vector(int length) { return RationalVector(static_cast<std::size_t>(length)); }

Rational power(const Rational& base, unsigned exponent) {
  Rational out(1);
  for (unsigned i = 0; i < exponent; ++i) out *= base;
  return out;
}

Integer power(const Integer& base, unsigned exponent) {
  Integer out;
  mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), exponent);
  return out;
}

}  // namespace thetadiv
