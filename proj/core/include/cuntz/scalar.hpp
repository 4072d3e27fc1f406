#pragma once

#include <complex>
#include <iosfwd>
#include <string>
#include <variant>

#include "cuntz/radical.hpp"
#include "cuntz/rational.hpp"

namespace cuntz {

// Comparison tolerance for approximate-mode identities.
inline constexpr double kDefaultTolerance = 1e-9;

// A complex number re + i*im with exact RadicalSum parts, or a double
// complex in approximate mode. Arithmetic mixing the two modes produces an
// approximate result.
class Scalar {
 public:
  struct Exact {
    RadicalSum re;
    RadicalSum im;
    friend bool operator==(const Exact&, const Exact&) = default;
  };

  Scalar() = default;
  Scalar(std::int64_t n) : value_(Exact{RadicalSum(n), {}}) {}  // NOLINT: implicit
  Scalar(const Rational& q) : value_(Exact{RadicalSum(q), {}}) {}  // NOLINT: implicit
  Scalar(const RadicalSum& re) : value_(Exact{re, {}}) {}  // NOLINT: implicit
  Scalar(const RadicalSum& re, const RadicalSum& im) : value_(Exact{re, im}) {}

  static Scalar approx(std::complex<double> z) { return Scalar(z); }
  static Scalar i() { return Scalar(RadicalSum(), RadicalSum(1)); }

  bool is_exact() const { return std::holds_alternative<Exact>(value_); }
  const Exact& exact() const { return std::get<Exact>(value_); }
  // Real part of an exact scalar with zero imaginary part; throws otherwise.
  const RadicalSum& real_radical() const;

  bool is_real() const;
  bool is_zero() const;
  // Exact: real with non-negative value. Approximate: im == 0, re >= 0.
  bool is_nonnegative_real() const;

  std::complex<double> to_complex() const;
  Scalar to_approx() const { return approx(to_complex()); }

  Scalar conj() const;
  // |z|^2, real.
  Scalar abs2() const;
  // 1/z. Exact mode requires |z|^2 to be a single-term radical.
  Scalar reciprocal() const;

  std::string str() const;

  Scalar operator-() const;
  Scalar& operator+=(const Scalar& other);
  Scalar& operator-=(const Scalar& other);
  Scalar& operator*=(const Scalar& other);

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }

  // Structural equality: exact values compare exactly, approximate values
  // compare bitwise. Use equal() for tolerance-aware comparison.
  friend bool operator==(const Scalar&, const Scalar&) = default;

 private:
  explicit Scalar(std::complex<double> z) : value_(z) {}

  std::variant<Exact, std::complex<double>> value_;
};

// Exact comparison when both operands are exact, |a - b| <= tol otherwise.
bool equal(const Scalar& a, const Scalar& b, double tol = kDefaultTolerance);

Scalar to_float(const Scalar& a);

std::ostream& operator<<(std::ostream& os, const Scalar& s);

}  // namespace cuntz
