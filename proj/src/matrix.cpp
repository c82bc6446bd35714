#include "spinor_forge/matrix.hpp"

#include <cmath>
#include <utility>

namespace spinor_forge {
namespace {

bool pivot_is_zero(const GaussianRational& z) { return z.is_zero(); }
bool pivot_is_zero(const Complex& z) { return std::abs(z) < 1e-300; }

// Index of the row at or below `col` to pivot on, or -1.
int choose_pivot(const Matrix4<GaussianRational>& m, std::size_t col) {
  for (std::size_t r = col; r < 4; ++r)
    if (!m(r, col).is_zero()) return static_cast<int>(r);
  return -1;
}
int choose_pivot(const Matrix4<Complex>& m, std::size_t col) {
  int best = -1;
  double best_abs = 0.0;
  for (std::size_t r = col; r < 4; ++r) {
    double a = std::abs(m(r, col));
    if (a > best_abs) {
      best_abs = a;
      best = static_cast<int>(r);
    }
  }
  return best;
}

template <class T>
void swap_rows(Matrix4<T>& m, std::size_t a, std::size_t b) {
  for (std::size_t j = 0; j < 4; ++j) std::swap(m(a, j), m(b, j));
}

}  // namespace

template <class T>
T determinant(const Matrix4<T>& input) {
  Matrix4<T> m = input;
  T det = ScalarTraits<T>::from_int(1);
  for (std::size_t col = 0; col < 4; ++col) {
    int p = choose_pivot(m, col);
    if (p < 0 || pivot_is_zero(m(p, col))) return T{};
    if (static_cast<std::size_t>(p) != col) {
      swap_rows(m, col, p);
      det = -det;
    }
    det *= m(col, col);
    for (std::size_t r = col + 1; r < 4; ++r) {
      if (m(r, col) == T{}) continue;
      T f = m(r, col) / m(col, col);
      for (std::size_t j = col; j < 4; ++j) m(r, j) -= f * m(col, j);
    }
  }
  return det;
}

template <class T>
Matrix4<T> inverse(const Matrix4<T>& input) {
  Matrix4<T> m = input;
  Matrix4<T> inv = Matrix4<T>::identity();
  for (std::size_t col = 0; col < 4; ++col) {
    int p = choose_pivot(m, col);
    if (p < 0 || pivot_is_zero(m(p, col))) throw SingularMatrixError();
    swap_rows(m, col, p);
    swap_rows(inv, col, p);
    T piv = m(col, col);
    for (std::size_t j = 0; j < 4; ++j) {
      m(col, j) /= piv;
      inv(col, j) /= piv;
    }
    for (std::size_t r = 0; r < 4; ++r) {
      if (r == col || m(r, col) == T{}) continue;
      T f = m(r, col);
      for (std::size_t j = 0; j < 4; ++j) {
        m(r, j) -= f * m(col, j);
        inv(r, j) -= f * inv(col, j);
      }
    }
  }
  return inv;
}

template GaussianRational determinant(const Matrix4<GaussianRational>&);
template Complex determinant(const Matrix4<Complex>&);
template Matrix4<GaussianRational> inverse(const Matrix4<GaussianRational>&);
template Matrix4<Complex> inverse(const Matrix4<Complex>&);

Matrix4<Complex> to_float(const Matrix4<GaussianRational>& m) {
  Matrix4<Complex> r;
  for (std::size_t i = 0; i < 16; ++i) r.data()[i] = {m.data()[i].real().get_d(), m.data()[i].imag().get_d()};
  return r;
}

Spinor<Complex> to_float(const Spinor<GaussianRational>& v) {
  Spinor<Complex> r;
  for (std::size_t i = 0; i < 4; ++i) r[i] = {v[i].real().get_d(), v[i].imag().get_d()};
  return r;
}

}  // namespace spinor_forge
