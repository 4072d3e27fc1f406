#include "cuntz/rational.hpp"

#include <charconv>
#include <cmath>
#include <limits>
#include <ostream>

#include "cuntz/error.hpp"

namespace cuntz {

namespace {

using Wide = __int128;

Wide wide_abs(Wide x) { return x < 0 ? -x : x; }

Wide wide_gcd(Wide a, Wide b) {
  a = wide_abs(a);
  b = wide_abs(b);
  while (b != 0) {
    Wide t = a % b;
    a = b;
    b = t;
  }
  return a;
}

bool fits(Wide x) {
  return x >= std::numeric_limits<std::int64_t>::min() &&
         x <= std::numeric_limits<std::int64_t>::max();
}

std::int64_t parse_int(std::string_view text, std::string_view whole) {
  std::int64_t value = 0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  if (!text.empty() && text.front() == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last || first == last) {
    throw ParseError("invalid rational \"" + std::string(whole) + "\"");
  }
  return value;
}

}  // namespace

Rational::Rational(std::int64_t numerator, std::int64_t denominator) {
  if (denominator == 0) throw DomainError("rational with zero denominator");
  *this = from_wide(numerator, denominator);
}

Rational Rational::from_wide(Wide numerator, Wide denominator) {
  if (denominator == 0) throw DomainError("division by zero");
  if (denominator < 0) {
    numerator = -numerator;
    denominator = -denominator;
  }
  Wide g = wide_gcd(numerator, denominator);
  if (g > 1) {
    numerator /= g;
    denominator /= g;
  }
  if (numerator == 0) denominator = 1;
  if (!fits(numerator) || !fits(denominator)) {
    throw OverflowError("rational arithmetic overflow");
  }
  Rational r;
  r.num_ = static_cast<std::int64_t>(numerator);
  r.den_ = static_cast<std::int64_t>(denominator);
  return r;
}

Rational Rational::parse(std::string_view text) {
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_int(text, text));
  std::int64_t p = parse_int(text.substr(0, slash), text);
  std::int64_t q = parse_int(text.substr(slash + 1), text);
  if (q == 0) throw ParseError("zero denominator in \"" + std::string(text) + "\"");
  return Rational(p, q);
}

Rational Rational::abs() const { return num_ < 0 ? -*this : *this; }

Rational Rational::reciprocal() const {
  if (num_ == 0) throw DomainError("reciprocal of zero");
  return from_wide(den_, num_);
}

double Rational::to_double() const {
  return static_cast<double>(static_cast<long double>(num_) /
                             static_cast<long double>(den_));
}

std::string Rational::str() const {
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

Rational Rational::operator-() const { return from_wide(-Wide(num_), den_); }

Rational& Rational::operator+=(const Rational& other) {
  Wide g = wide_gcd(den_, other.den_);
  Wide n = Wide(num_) * (other.den_ / g) + Wide(other.num_) * (den_ / g);
  Wide d = Wide(den_) * (other.den_ / g);
  return *this = from_wide(n, d);
}

Rational& Rational::operator-=(const Rational& other) { return *this += -other; }

Rational& Rational::operator*=(const Rational& other) {
  // Cross-cancel first so that the 128-bit product is already reduced.
  Wide g1 = wide_gcd(num_, other.den_);
  Wide g2 = wide_gcd(other.num_, den_);
  if (g1 == 0) g1 = 1;
  if (g2 == 0) g2 = 1;
  Wide n = (Wide(num_) / g1) * (Wide(other.num_) / g2);
  Wide d = (Wide(den_) / g2) * (Wide(other.den_) / g1);
  return *this = from_wide(n, d);
}

Rational& Rational::operator/=(const Rational& other) {
  return *this *= other.reciprocal();
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  Wide lhs = Wide(a.num_) * b.den_;
  Wide rhs = Wide(b.num_) * a.den_;
  if (lhs < rhs) return std::strong_ordering::less;
  if (lhs > rhs) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::ostream& operator<<(std::ostream& os, const Rational& q) { return os << q.str(); }

}  // namespace cuntz
