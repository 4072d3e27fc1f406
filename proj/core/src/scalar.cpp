#include "cuntz/scalar.hpp"

#include <cmath>
#include <ostream>
#include <sstream>

#include "cuntz/error.hpp"

namespace cuntz {

const RadicalSum& Scalar::real_radical() const {
  if (!is_exact() || !exact().im.is_zero()) {
    throw DomainError("expected an exact real scalar, got " + str());
  }
  return exact().re;
}

bool Scalar::is_real() const {
  if (is_exact()) return exact().im.is_zero();
  return std::get<std::complex<double>>(value_).imag() == 0.0;
}

bool Scalar::is_zero() const {
  if (is_exact()) return exact().re.is_zero() && exact().im.is_zero();
  return std::get<std::complex<double>>(value_) == std::complex<double>();
}

bool Scalar::is_nonnegative_real() const {
  if (is_exact()) return exact().im.is_zero() && exact().re.sign() >= 0;
  auto z = std::get<std::complex<double>>(value_);
  return z.imag() == 0.0 && z.real() >= 0.0;
}

std::complex<double> Scalar::to_complex() const {
  if (is_exact()) return {exact().re.to_double(), exact().im.to_double()};
  return std::get<std::complex<double>>(value_);
}

Scalar Scalar::conj() const {
  if (is_exact()) return Scalar(exact().re, -exact().im);
  return approx(std::conj(std::get<std::complex<double>>(value_)));
}

Scalar Scalar::abs2() const {
  if (is_exact()) {
    const Exact& e = exact();
    return Scalar(e.re * e.re + e.im * e.im);
  }
  return approx(std::norm(std::get<std::complex<double>>(value_)));
}

Scalar Scalar::reciprocal() const {
  if (is_zero()) throw DomainError("reciprocal of zero");
  if (!is_exact()) return approx(1.0 / std::get<std::complex<double>>(value_));
  const Exact& e = exact();
  RadicalSum inv_norm = (e.re * e.re + e.im * e.im).reciprocal();
  return Scalar(e.re * inv_norm, -(e.im * inv_norm));
}

std::string Scalar::str() const {
  std::ostringstream os;
  if (is_exact()) {
    const Exact& e = exact();
    if (e.im.is_zero()) {
      os << e.re;
    } else if (e.re.is_zero()) {
      os << "i*(" << e.im << ")";
    } else {
      os << "(" << e.re << ") + i*(" << e.im << ")";
    }
  } else {
    auto z = std::get<std::complex<double>>(value_);
    os.precision(17);
    os << "~(" << z.real() << (z.imag() < 0 ? " - " : " + ") << std::abs(z.imag()) << "i)";
  }
  return os.str();
}

Scalar Scalar::operator-() const {
  if (is_exact()) return Scalar(-exact().re, -exact().im);
  return approx(-std::get<std::complex<double>>(value_));
}

Scalar& Scalar::operator+=(const Scalar& other) {
  if (is_exact() && other.is_exact()) {
    Exact e = exact();
    e.re += other.exact().re;
    e.im += other.exact().im;
    value_ = std::move(e);
  } else {
    value_ = to_complex() + other.to_complex();
  }
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& other) { return *this += -other; }

Scalar& Scalar::operator*=(const Scalar& other) {
  if (is_exact() && other.is_exact()) {
    const Exact& a = exact();
    const Exact& b = other.exact();
    if (a.im.is_zero() && b.im.is_zero()) {
      value_ = Exact{a.re * b.re, {}};
    } else {
      value_ = Exact{a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
  } else {
    value_ = to_complex() * other.to_complex();
  }
  return *this;
}

bool equal(const Scalar& a, const Scalar& b, double tol) {
  if (a.is_exact() && b.is_exact()) return a == b;
  return std::abs(a.to_complex() - b.to_complex()) <= tol;
}

Scalar to_float(const Scalar& a) { return a.to_approx(); }

std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.str(); }

}  // namespace cuntz
