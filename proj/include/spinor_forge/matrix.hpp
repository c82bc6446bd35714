#pragma once

// Fixed-size linear algebra over either scalar mode: 4-component spinors,
// dual (row) spinors and 4x4 matrices.

#include <array>
#include <cstddef>
#include <optional>
#include <stdexcept>

#include "spinor_forge/scalar.hpp"

namespace spinor_forge {

template <class T>
struct Spinor {
  std::array<T, 4> c{};

  T& operator[](std::size_t i) { return c[i]; }
  const T& operator[](std::size_t i) const { return c[i]; }

  bool is_zero() const {
    for (const auto& x : c)
      if (!(x == T{})) return false;
    return true;
  }

  friend bool operator==(const Spinor&, const Spinor&) = default;
  friend Spinor operator+(Spinor a, const Spinor& b) {
    for (std::size_t i = 0; i < 4; ++i) a.c[i] += b.c[i];
    return a;
  }
  friend Spinor operator-(Spinor a, const Spinor& b) {
    for (std::size_t i = 0; i < 4; ++i) a.c[i] -= b.c[i];
    return a;
  }
  friend Spinor operator*(const T& z, Spinor a) {
    for (auto& x : a.c) x = z * x;
    return a;
  }
};

// Row vector; produced by dual().
template <class T>
struct DualSpinor {
  std::array<T, 4> c{};
  const T& operator[](std::size_t i) const { return c[i]; }
  friend bool operator==(const DualSpinor&, const DualSpinor&) = default;
};

template <class T>
class Matrix4 {
 public:
  Matrix4() = default;

  static Matrix4 identity() {
    Matrix4 m;
    for (std::size_t i = 0; i < 4; ++i) m(i, i) = ScalarTraits<T>::from_int(1);
    return m;
  }
  static Matrix4 diagonal(const std::array<T, 4>& d) {
    Matrix4 m;
    for (std::size_t i = 0; i < 4; ++i) m(i, i) = d[i];
    return m;
  }

  T& operator()(std::size_t r, std::size_t c) { return a_[r * 4 + c]; }
  const T& operator()(std::size_t r, std::size_t c) const { return a_[r * 4 + c]; }
  const std::array<T, 16>& data() const { return a_; }
  std::array<T, 16>& data() { return a_; }

  friend bool operator==(const Matrix4&, const Matrix4&) = default;

  friend Matrix4 operator+(Matrix4 a, const Matrix4& b) {
    for (std::size_t i = 0; i < 16; ++i) a.a_[i] += b.a_[i];
    return a;
  }
  friend Matrix4 operator-(Matrix4 a, const Matrix4& b) {
    for (std::size_t i = 0; i < 16; ++i) a.a_[i] -= b.a_[i];
    return a;
  }
  friend Matrix4 operator-(Matrix4 a) {
    for (auto& x : a.a_) x = -x;
    return a;
  }
  friend Matrix4 operator*(const T& z, Matrix4 a) {
    for (auto& x : a.a_) x = z * x;
    return a;
  }
  friend Matrix4 operator*(const Matrix4& a, const Matrix4& b) {
    Matrix4 r;
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t k = 0; k < 4; ++k) {
        if (ScalarTraits<T>::exact && a(i, k) == T{}) continue;
        for (std::size_t j = 0; j < 4; ++j) r(i, j) += a(i, k) * b(k, j);
      }
    return r;
  }
  friend Spinor<T> operator*(const Matrix4& a, const Spinor<T>& v) {
    Spinor<T> r;
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t k = 0; k < 4; ++k) r[i] += a(i, k) * v[k];
    return r;
  }
  friend DualSpinor<T> operator*(const DualSpinor<T>& v, const Matrix4& a) {
    DualSpinor<T> r;
    for (std::size_t j = 0; j < 4; ++j)
      for (std::size_t k = 0; k < 4; ++k) r.c[j] += v.c[k] * a(k, j);
    return r;
  }

  Matrix4 adjoint() const {
    Matrix4 r;
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 4; ++j) r(i, j) = conj((*this)(j, i));
    return r;
  }
  Matrix4 transpose() const {
    Matrix4 r;
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 4; ++j) r(i, j) = (*this)(j, i);
    return r;
  }
  Matrix4 conjugate() const {
    Matrix4 r;
    for (std::size_t i = 0; i < 16; ++i) r.a_[i] = conj(a_[i]);
    return r;
  }
  T trace() const { return a_[0] + a_[5] + a_[10] + a_[15]; }

 private:
  std::array<T, 16> a_{};
};

template <class T>
T inner(const DualSpinor<T>& row, const Spinor<T>& col) {
  T r{};
  for (std::size_t i = 0; i < 4; ++i) r += row.c[i] * col[i];
  return r;
}

template <class T>
Spinor<T> conjugate(const Spinor<T>& v) {
  Spinor<T> r;
  for (std::size_t i = 0; i < 4; ++i) r[i] = conj(v[i]);
  return r;
}

/// Sum of |component|^2.
template <class T>
RealOf<T> norm2(const Spinor<T>& v) {
  RealOf<T> r{};
  for (const auto& x : v.c) r += norm(x);
  return r;
}

/// Max over entries of a cheap magnitude bound (|re|+|im| exact, |z| float).
template <class T>
RealOf<T> max_abs(const Matrix4<T>& m) {
  RealOf<T> r{};
  for (const auto& x : m.data()) {
    RealOf<T> v = ScalarTraits<T>::magnitude_bound(x);
    if (v > r) r = v;
  }
  return r;
}

class SingularMatrixError : public std::runtime_error {
 public:
  SingularMatrixError() : std::runtime_error("matrix is singular") {}
};

/// Gauss-Jordan determinant. Exact in exact mode; partial pivoting in float.
template <class T>
T determinant(const Matrix4<T>& m);

/// Gauss-Jordan inverse; throws SingularMatrixError. In float mode a pivot
/// below 1e-300 counts as singular.
template <class T>
Matrix4<T> inverse(const Matrix4<T>& m);

/// Converts an exact matrix to floating point.
Matrix4<Complex> to_float(const Matrix4<GaussianRational>& m);
Spinor<Complex> to_float(const Spinor<GaussianRational>& v);

extern template GaussianRational determinant(const Matrix4<GaussianRational>&);
extern template Complex determinant(const Matrix4<Complex>&);
extern template Matrix4<GaussianRational> inverse(const Matrix4<GaussianRational>&);
extern template Matrix4<Complex> inverse(const Matrix4<Complex>&);

}  // namespace spinor_forge
