#pragma once

// Gamma-matrix basis in the Weyl (chiral) representation, signature
// (+,-,-,-), Levi-Civita with eps_0123 = +1.
//
//   gamma[0] = [[0, 1], [1, 0]]
//   gamma[i] = [[0, sigma_i], [-sigma_i, 0]]
//   gamma5   = i gamma[0] gamma[1] gamma[2] gamma[3] = diag(-1, -1, 1, 1)
//
// The 16-element basis is ordered
//   0        identity
//   1        gamma5
//   2..5     gamma[mu]
//   6..9     gamma5 gamma[mu]
//   10..15   gamma[mu] gamma[nu] for (mu,nu) = 01, 02, 03, 12, 13, 23

#include <array>
#include <cstddef>
#include <string>
#include <utility>

#include "spinor_forge/matrix.hpp"

namespace spinor_forge {

enum class Sector { scalar, pseudoscalar, vector, axial, bivector };

inline constexpr std::size_t kBasisSize = 16;

struct SectorRange {
  std::size_t first;
  std::size_t size;
};

constexpr SectorRange sector_range(Sector s) {
  switch (s) {
    case Sector::scalar: return {0, 1};
    case Sector::pseudoscalar: return {1, 1};
    case Sector::vector: return {2, 4};
    case Sector::axial: return {6, 4};
    case Sector::bivector: return {10, 6};
  }
  return {0, 0};
}

constexpr Sector sector_of(std::size_t basis_index) {
  if (basis_index == 0) return Sector::scalar;
  if (basis_index == 1) return Sector::pseudoscalar;
  if (basis_index < 6) return Sector::vector;
  if (basis_index < 10) return Sector::axial;
  return Sector::bivector;
}

inline constexpr std::array<Sector, 5> kSectors = {Sector::scalar, Sector::pseudoscalar, Sector::vector,
                                                   Sector::axial, Sector::bivector};

const char* sector_name(Sector s);

/// Index pairs (mu,nu), mu<nu, of the bivector slots in basis order.
inline constexpr std::array<std::pair<int, int>, 6> kBivectorPairs = {
    std::pair{0, 1}, std::pair{0, 2}, std::pair{0, 3}, std::pair{1, 2}, std::pair{1, 3}, std::pair{2, 3}};

/// Human-readable label for basis element a ("I", "g5", "g2", "g5g1", "g0g3", ...).
std::string basis_label(std::size_t a);

/// eta_{mu nu} = diag(+1,-1,-1,-1).
constexpr int metric(int mu, int nu) { return mu != nu ? 0 : (mu == 0 ? 1 : -1); }

/// eps_{abcd}, eps_{0123} = +1.
constexpr int levi_civita(int a, int b, int c, int d) {
  const int p[4] = {a, b, c, d};
  for (int i = 0; i < 4; ++i) {
    if (p[i] < 0 || p[i] > 3) return 0;
    for (int j = i + 1; j < 4; ++j)
      if (p[i] == p[j]) return 0;
  }
  int sign = 1;
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      if (p[i] > p[j]) sign = -sign;
  return sign;
}

template <class T>
struct GammaBasis {
  std::array<Matrix4<T>, 4> gamma;
  Matrix4<T> gamma5;
  std::array<Matrix4<T>, kBasisSize> elements;
  // elements[a]^2 = square_sign[a] * identity, so the inverse is square_sign[a] * elements[a].
  std::array<int, kBasisSize> square_sign{};
};

template <class T>
GammaBasis<T> build_gamma_basis();

/// Shared immutable instance of build_gamma_basis<T>().
template <class T>
const GammaBasis<T>& gamma_basis();

/// max_{mu,nu} |{gamma_mu, gamma_nu} - 2 eta_{mu nu} I|, entrywise magnitude.
template <class T>
RealOf<T> clifford_residual(const GammaBasis<T>& basis);

/// Coefficients c_a with m = sum_a c_a elements[a], via c_a = Tr(elements[a]^{-1} m) / 4.
template <class T>
std::array<T, kBasisSize> gamma_basis_expand(const Matrix4<T>& m);

template <class T>
Matrix4<T> gamma_basis_reconstruct(const std::array<T, kBasisSize>& coeffs);

}  // namespace spinor_forge
