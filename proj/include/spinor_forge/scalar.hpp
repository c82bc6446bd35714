#pragma once

// Scalar types shared by every module.
//
// Two arithmetic modes exist. Exact mode uses GaussianRational, a complex
// number whose real and imaginary parts are arbitrary-precision rationals;
// equality and nullness are decided without tolerance. Float mode uses
// std::complex<double>. Generic code is written against ScalarTraits<T>.

#include <gmpxx.h>

#include <complex>
#include <cstdint>
#include <ostream>
#include <string>

namespace spinor_forge {

using Rational = mpq_class;
using Complex = std::complex<double>;

class GaussianRational {
 public:
  GaussianRational() : re_(0), im_(0) {}
  GaussianRational(long v) : re_(v), im_(0) {}  // NOLINT(google-explicit-constructor)
  GaussianRational(Rational re, Rational im = 0) : re_(std::move(re)), im_(std::move(im)) {
    re_.canonicalize();
    im_.canonicalize();
  }

  const Rational& real() const { return re_; }
  const Rational& imag() const { return im_; }

  GaussianRational& operator+=(const GaussianRational& o) {
    re_ += o.re_;
    im_ += o.im_;
    return *this;
  }
  GaussianRational& operator-=(const GaussianRational& o) {
    re_ -= o.re_;
    im_ -= o.im_;
    return *this;
  }
  GaussianRational& operator*=(const GaussianRational& o) {
    Rational r = re_ * o.re_ - im_ * o.im_;
    Rational i = re_ * o.im_ + im_ * o.re_;
    re_ = std::move(r);
    im_ = std::move(i);
    return *this;
  }
  // Division by zero is a precondition violation and throws std::domain_error.
  GaussianRational& operator/=(const GaussianRational& o);

  friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
  friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
  friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
  friend GaussianRational operator/(GaussianRational a, const GaussianRational& b) { return a /= b; }
  friend GaussianRational operator-(const GaussianRational& a) { return {Rational(-a.re_), Rational(-a.im_)}; }

  friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }
  friend bool operator!=(const GaussianRational& a, const GaussianRational& b) { return !(a == b); }

  friend GaussianRational conj(const GaussianRational& a) { return {a.re_, Rational(-a.im_)}; }
  friend const Rational& real(const GaussianRational& a) { return a.re_; }
  friend const Rational& imag(const GaussianRational& a) { return a.im_; }
  /// |z|^2, exact.
  friend Rational norm(const GaussianRational& a) { return a.re_ * a.re_ + a.im_ * a.im_; }

  bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }

  std::string to_string() const;
  friend std::ostream& operator<<(std::ostream& os, const GaussianRational& z) { return os << z.to_string(); }

 private:
  Rational re_;
  Rational im_;
};

/// Parses "p/q", "p" or a decimal literal like "-0.25" into an exact rational.
Rational parse_rational(const std::string& text);
/// Canonical "p/q" form; integers are written with an explicit "/1".
std::string rational_to_string(const Rational& q);

enum class Mode { exact, floating };

template <class T>
struct ScalarTraits;

template <>
struct ScalarTraits<GaussianRational> {
  using Real = Rational;
  static constexpr Mode mode = Mode::exact;
  static constexpr bool exact = true;

  static GaussianRational from_int(long re, long im = 0) { return {Rational(re), Rational(im)}; }
  static GaussianRational from_real(const Real& r) { return {r, Rational(0)}; }
  static GaussianRational i() { return {Rational(0), Rational(1)}; }
  static Real abs_real(const Real& r) { return abs(r); }
  static double to_double(const Real& r) { return r.get_d(); }
  // Exact mode ignores the tolerance.
  static bool is_null(const Real& r, double /*tol*/) { return sgn(r) == 0; }
  static bool is_null(const GaussianRational& z, double /*tol*/) { return z.is_zero(); }
  static Real magnitude_bound(const GaussianRational& z) { return abs(z.real()) + abs(z.imag()); }
};

template <>
struct ScalarTraits<Complex> {
  using Real = double;
  static constexpr Mode mode = Mode::floating;
  static constexpr bool exact = false;

  static Complex from_int(long re, long im = 0) { return {static_cast<double>(re), static_cast<double>(im)}; }
  static Complex from_real(double r) { return {r, 0.0}; }
  static Complex i() { return {0.0, 1.0}; }
  static double abs_real(double r) { return r < 0 ? -r : r; }
  static double to_double(double r) { return r; }
  static bool is_null(double r, double tol) { return abs_real(r) <= tol; }
  static bool is_null(const Complex& z, double tol) { return std::abs(z) <= tol; }
  static double magnitude_bound(const Complex& z) { return std::abs(z); }
};

template <class T>
using RealOf = typename ScalarTraits<T>::Real;

template <class T>
concept SpinorScalar = requires { typename ScalarTraits<T>::Real; };

}  // namespace spinor_forge
