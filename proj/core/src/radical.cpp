#include "cuntz/radical.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>

#include "cuntz/error.hpp"

namespace cuntz {

namespace {

std::int64_t isqrt(std::int64_t n) {
  auto r = static_cast<std::int64_t>(std::sqrt(static_cast<long double>(n)));
  while (r > 0 && static_cast<__int128>(r) * r > n) --r;
  while (static_cast<__int128>(r + 1) * (r + 1) <= n) ++r;
  return r;
}

std::int64_t checked_radicand(__int128 r) {
  if (r > kMaxRadicand) throw OverflowError("radicand exceeds supported range");
  return static_cast<std::int64_t>(r);
}

}  // namespace

std::pair<std::int64_t, std::int64_t> squarefree_decomposition(std::int64_t n) {
  if (n <= 0) throw DomainError("square-free decomposition of non-positive integer");
  if (n > kMaxRadicand) throw OverflowError("radicand exceeds supported range");
  std::int64_t root = 1;
  std::int64_t free = 1;
  std::int64_t m = n;
  auto strip = [&](std::int64_t p) {
    int count = 0;
    while (m % p == 0) {
      m /= p;
      ++count;
    }
    for (int k = 0; k + 1 < count; k += 2) root *= p;
    if (count % 2 == 1) free *= p;
  };
  strip(2);
  for (std::int64_t p = 3; p <= kTrialDivisionBound && p * p <= m; p += 2) strip(p);
  if (m > 1) {
    // Every prime factor of m exceeds the trial bound (or m is prime), and
    // m <= 1e18 leaves at most two of them: m is prime, p*q, or p^2.
    std::int64_t s = isqrt(m);
    if (s * s == m && m > kTrialDivisionBound) {
      root *= s;
    } else {
      free *= m;
    }
  }
  return {root, free};
}

RadicalSum::RadicalSum(const Rational& q) {
  if (!q.is_zero()) terms_.push_back({1, q});
}

RadicalSum RadicalSum::term(const Rational& q, std::int64_t radicand) {
  if (radicand <= 0) throw DomainError("radicand must be positive");
  auto [root, free] = squarefree_decomposition(radicand);
  RadicalSum r;
  r.add_term(free, q * Rational(root));
  return r;
}

RadicalSum RadicalSum::from_terms(
    const std::vector<std::pair<Rational, std::int64_t>>& terms) {
  RadicalSum r;
  for (const auto& [q, radicand] : terms) r += term(q, radicand);
  return r;
}

void RadicalSum::add_term(std::int64_t radicand, const Rational& coeff) {
  if (coeff.is_zero()) return;
  auto it = std::lower_bound(
      terms_.begin(), terms_.end(), radicand,
      [](const Term& t, std::int64_t r) { return t.radicand < r; });
  if (it != terms_.end() && it->radicand == radicand) {
    it->coeff += coeff;
    if (it->coeff.is_zero()) terms_.erase(it);
  } else {
    terms_.insert(it, Term{radicand, coeff});
  }
}

bool RadicalSum::is_rational() const {
  return terms_.empty() || (terms_.size() == 1 && terms_[0].radicand == 1);
}

Rational RadicalSum::as_rational() const {
  if (!is_rational()) throw DomainError("radical sum " + str() + " is irrational");
  return terms_.empty() ? Rational(0) : terms_[0].coeff;
}

RadicalSum RadicalSum::reciprocal() const {
  if (terms_.size() != 1) {
    throw DomainError("reciprocal is defined only for single-term radicals, got " + str());
  }
  const Term& t = terms_[0];
  RadicalSum r;
  r.terms_.push_back({t.radicand, (t.coeff * Rational(t.radicand)).reciprocal()});
  return r;
}

double RadicalSum::to_double() const {
  double sum = 0.0;
  for (const Term& t : terms_) {
    sum += t.coeff.to_double() * std::sqrt(static_cast<double>(t.radicand));
  }
  return sum;
}

int RadicalSum::sign() const {
  if (terms_.empty()) return 0;
  if (terms_.size() == 1) return terms_[0].coeff.sign();
  bool all_pos = std::all_of(terms_.begin(), terms_.end(),
                             [](const Term& t) { return t.coeff.sign() > 0; });
  bool all_neg = std::all_of(terms_.begin(), terms_.end(),
                             [](const Term& t) { return t.coeff.sign() < 0; });
  if (all_pos) return 1;
  if (all_neg) return -1;
  // A nonzero sum of linearly independent radicals; the float estimate is far
  // from zero at desk scale.
  double v = to_double();
  return (v > 0) - (v < 0);
}

std::string RadicalSum::str() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (std::size_t k = 0; k < terms_.size(); ++k) {
    const Term& t = terms_[k];
    std::string c = t.coeff.str();
    if (k > 0) {
      if (t.coeff.sign() < 0) {
        out += " - ";
        c = (-t.coeff).str();
      } else {
        out += " + ";
      }
    }
    if (t.radicand == 1) {
      out += c;
    } else {
      out += (c == "1" ? "" : c == "-1" ? "-" : c + "*") + "sqrt(" +
             std::to_string(t.radicand) + ")";
    }
  }
  return out;
}

RadicalSum RadicalSum::operator-() const {
  RadicalSum r = *this;
  for (Term& t : r.terms_) t.coeff = -t.coeff;
  return r;
}

RadicalSum& RadicalSum::operator+=(const RadicalSum& other) {
  for (const Term& t : other.terms_) add_term(t.radicand, t.coeff);
  return *this;
}

RadicalSum& RadicalSum::operator-=(const RadicalSum& other) {
  for (const Term& t : other.terms_) add_term(t.radicand, -t.coeff);
  return *this;
}

RadicalSum& RadicalSum::operator*=(const RadicalSum& other) {
  if (terms_.empty() || other.terms_.empty()) {
    terms_.clear();
    return *this;
  }
  RadicalSum product;
  for (const Term& a : terms_) {
    for (const Term& b : other.terms_) {
      // Both radicands are square-free: sqrt(r) sqrt(s) = g sqrt((r/g)(s/g)).
      std::int64_t g = std::gcd(a.radicand, b.radicand);
      std::int64_t radicand =
          checked_radicand(static_cast<__int128>(a.radicand / g) * (b.radicand / g));
      product.add_term(radicand, a.coeff * b.coeff * Rational(g));
    }
  }
  return *this = std::move(product);
}

RadicalSum& RadicalSum::operator*=(const Rational& q) {
  if (q.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (Term& t : terms_) t.coeff *= q;
  return *this;
}

RadicalSum sqrt_positive_rational(const Rational& q) {
  if (q.sign() <= 0) throw DomainError("square root of non-positive rational " + q.str());
  // sqrt(p/d) = sqrt(p d) / d
  __int128 product = static_cast<__int128>(q.num()) * q.den();
  return RadicalSum::term(Rational(1, q.den()), checked_radicand(product));
}

std::ostream& operator<<(std::ostream& os, const RadicalSum& r) { return os << r.str(); }

}  // namespace cuntz
