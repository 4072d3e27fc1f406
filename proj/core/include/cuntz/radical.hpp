#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "cuntz/rational.hpp"

namespace cuntz {

// Largest radicand accepted after canonicalization. Square-free parts are
// certified by trial division up to kTrialDivisionBound plus a perfect-square
// test on the remaining cofactor, which is exact below this limit.
inline constexpr std::int64_t kMaxRadicand = 1'000'000'000'000'000'000;
inline constexpr std::int64_t kTrialDivisionBound = 1'000'000;

// Splits n > 0 as square * squarefree and returns {root of square, squarefree}.
std::pair<std::int64_t, std::int64_t> squarefree_decomposition(std::int64_t n);

// A finite sum  sum_k q_k * sqrt(r_k)  with rational q_k and distinct
// square-free radicands r_k >= 1. Terms are kept sorted by radicand and zero
// coefficients are never stored, so structural equality is numeric equality.
class RadicalSum {
 public:
  struct Term {
    std::int64_t radicand;
    Rational coeff;
    friend bool operator==(const Term&, const Term&) = default;
  };

  RadicalSum() = default;
  RadicalSum(const Rational& q);  // NOLINT: implicit
  RadicalSum(std::int64_t n) : RadicalSum(Rational(n)) {}  // NOLINT: implicit

  // q * sqrt(r); r is canonicalized.
  static RadicalSum term(const Rational& q, std::int64_t radicand);
  static RadicalSum from_terms(const std::vector<std::pair<Rational, std::int64_t>>& terms);

  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_rational() const;
  bool is_single_term() const { return terms_.size() == 1; }
  // Rational part (radicand 1) if is_rational(), throws otherwise.
  Rational as_rational() const;

  // Only single-term sums q*sqrt(r) are invertible: 1/(q sqrt r) = sqrt(r)/(q r).
  RadicalSum reciprocal() const;

  double to_double() const;
  int sign() const;
  std::string str() const;

  RadicalSum operator-() const;
  RadicalSum& operator+=(const RadicalSum& other);
  RadicalSum& operator-=(const RadicalSum& other);
  RadicalSum& operator*=(const RadicalSum& other);
  RadicalSum& operator*=(const Rational& q);

  friend RadicalSum operator+(RadicalSum a, const RadicalSum& b) { return a += b; }
  friend RadicalSum operator-(RadicalSum a, const RadicalSum& b) { return a -= b; }
  friend RadicalSum operator*(RadicalSum a, const RadicalSum& b) { return a *= b; }

  friend bool operator==(const RadicalSum&, const RadicalSum&) = default;

 private:
  void add_term(std::int64_t radicand, const Rational& coeff);

  std::vector<Term> terms_;
};

// sqrt(q) for q > 0, canonicalized.
RadicalSum sqrt_positive_rational(const Rational& q);

std::ostream& operator<<(std::ostream& os, const RadicalSum& r);

}  // namespace cuntz
