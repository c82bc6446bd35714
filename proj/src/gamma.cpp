#include "spinor_forge/gamma.hpp"

namespace spinor_forge {

const char* sector_name(Sector s) {
  switch (s) {
    case Sector::scalar: return "scalar";
    case Sector::pseudoscalar: return "pseudoscalar";
    case Sector::vector: return "vector";
    case Sector::axial: return "axial";
    case Sector::bivector: return "bivector";
  }
  return "?";
}

std::string basis_label(std::size_t a) {
  if (a == 0) return "I";
  if (a == 1) return "g5";
  if (a < 6) return "g" + std::to_string(a - 2);
  if (a < 10) return "g5g" + std::to_string(a - 6);
  const auto [mu, nu] = kBivectorPairs[a - 10];
  return "g" + std::to_string(mu) + "g" + std::to_string(nu);
}

template <class T>
GammaBasis<T> build_gamma_basis() {
  using Tr = ScalarTraits<T>;
  GammaBasis<T> b;
  const T one = Tr::from_int(1);
  const T i = Tr::i();

  // Off-diagonal 2x2 blocks: upper-right U, lower-left L.
  auto block = [](const std::array<T, 4>& upper_right, const std::array<T, 4>& lower_left) {
    Matrix4<T> m;
    m(0, 2) = upper_right[0];
    m(0, 3) = upper_right[1];
    m(1, 2) = upper_right[2];
    m(1, 3) = upper_right[3];
    m(2, 0) = lower_left[0];
    m(2, 1) = lower_left[1];
    m(3, 0) = lower_left[2];
    m(3, 1) = lower_left[3];
    return m;
  };
  const T zero{};
  const std::array<T, 4> id2{one, zero, zero, one};
  const std::array<T, 4> s1{zero, one, one, zero};
  const std::array<T, 4> s2{zero, -i, i, zero};
  const std::array<T, 4> s3{one, zero, zero, -one};
  auto neg = [](std::array<T, 4> a) {
    for (auto& x : a) x = -x;
    return a;
  };

  b.gamma[0] = block(id2, id2);
  b.gamma[1] = block(s1, neg(s1));
  b.gamma[2] = block(s2, neg(s2));
  b.gamma[3] = block(s3, neg(s3));
  b.gamma5 = i * (b.gamma[0] * b.gamma[1] * b.gamma[2] * b.gamma[3]);

  b.elements[0] = Matrix4<T>::identity();
  b.elements[1] = b.gamma5;
  for (std::size_t mu = 0; mu < 4; ++mu) {
    b.elements[2 + mu] = b.gamma[mu];
    b.elements[6 + mu] = b.gamma5 * b.gamma[mu];
  }
  for (std::size_t k = 0; k < 6; ++k) {
    const auto [mu, nu] = kBivectorPairs[k];
    b.elements[10 + k] = b.gamma[mu] * b.gamma[nu];
  }
  const Matrix4<T> id = Matrix4<T>::identity();
  for (std::size_t a = 0; a < kBasisSize; ++a) {
    const Matrix4<T> sq = b.elements[a] * b.elements[a];
    b.square_sign[a] = (sq == id) ? 1 : -1;
  }
  return b;
}

template <class T>
const GammaBasis<T>& gamma_basis() {
  static const GammaBasis<T> basis = build_gamma_basis<T>();
  return basis;
}

template <class T>
RealOf<T> clifford_residual(const GammaBasis<T>& basis) {
  RealOf<T> worst{};
  for (int mu = 0; mu < 4; ++mu)
    for (int nu = 0; nu < 4; ++nu) {
      Matrix4<T> ac = basis.gamma[mu] * basis.gamma[nu] + basis.gamma[nu] * basis.gamma[mu];
      ac = ac - ScalarTraits<T>::from_int(2 * metric(mu, nu)) * Matrix4<T>::identity();
      RealOf<T> r = max_abs(ac);
      if (r > worst) worst = r;
    }
  return worst;
}

template <class T>
std::array<T, kBasisSize> gamma_basis_expand(const Matrix4<T>& m) {
  const auto& b = gamma_basis<T>();
  std::array<T, kBasisSize> c{};
  const T quarter = ScalarTraits<T>::from_int(1) / ScalarTraits<T>::from_int(4);
  for (std::size_t a = 0; a < kBasisSize; ++a) {
    // Tr(E^{-1} M) = sign * Tr(E M); E is a signed permutation-like matrix, so
    // only one entry per row contributes.
    const Matrix4<T>& e = b.elements[a];
    T tr{};
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t k = 0; k < 4; ++k) {
        if (e(i, k) == T{}) continue;
        tr += e(i, k) * m(k, i);
      }
    c[a] = ScalarTraits<T>::from_int(b.square_sign[a]) * tr * quarter;
  }
  return c;
}

template <class T>
Matrix4<T> gamma_basis_reconstruct(const std::array<T, kBasisSize>& coeffs) {
  const auto& b = gamma_basis<T>();
  Matrix4<T> m;
  for (std::size_t a = 0; a < kBasisSize; ++a) {
    if (coeffs[a] == T{}) continue;
    m = m + coeffs[a] * b.elements[a];
  }
  return m;
}

#define SF_INSTANTIATE(T)                                                          \
  template GammaBasis<T> build_gamma_basis<T>();                                   \
  template const GammaBasis<T>& gamma_basis<T>();                                  \
  template RealOf<T> clifford_residual<T>(const GammaBasis<T>&);                   \
  template std::array<T, kBasisSize> gamma_basis_expand<T>(const Matrix4<T>&);     \
  template Matrix4<T> gamma_basis_reconstruct<T>(const std::array<T, kBasisSize>&);

SF_INSTANTIATE(GaussianRational)
SF_INSTANTIATE(Complex)
#undef SF_INSTANTIATE

}  // namespace spinor_forge
