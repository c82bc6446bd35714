#pragma once

// Bilinear covariants of a Dirac spinor and the Fierz-Pauli-Kofink checks.
//
// With psibar = psi^dagger gamma0:
//   sigma  = psibar psi
//   J_mu   = psibar gamma_mu psi
//   S_munu = (i/2) psibar [gamma_mu, gamma_nu] psi
//   K_mu   = psibar gamma_mu gamma5 psi
//   omega  = i psibar gamma5 psi
// Components are taken with the stored Weyl matrices (see gamma.hpp) and S is
// kept with both indices down.

#include <array>

#include "spinor_forge/errors.hpp"
#include "spinor_forge/gamma.hpp"
#include "spinor_forge/matrix.hpp"

namespace spinor_forge {

template <class T>
struct BilinearSet {
  using Real = RealOf<T>;
  Real sigma{};
  Real omega{};
  std::array<Real, 4> J{};
  std::array<Real, 4> K{};
  std::array<std::array<Real, 4>, 4> S{};

  friend bool operator==(const BilinearSet&, const BilinearSet&) = default;
};

template <class T>
struct FpkResiduals {
  using Real = RealOf<T>;
  std::array<std::array<Real, 4>, 4> r1{};
  Real r2a{};  // J.J + K.K
  Real r2b{};  // J.K
  Real r3{};   // J.J - sigma^2 - omega^2
  Real max_abs{};
};

template <class T>
DualSpinor<T> dual(const Spinor<T>& psi);

/// Throws Error(consistency) if a float-mode covariant has an imaginary part
/// above 1e-10 * |psi|^2 (exact mode: any nonzero imaginary part).
template <class T>
BilinearSet<T> bilinears(const Spinor<T>& psi);

/// Minkowski contraction a^mu b_mu with eta = diag(+,-,-,-).
template <class R>
R minkowski_dot(const std::array<R, 4>& a, const std::array<R, 4>& b) {
  return a[0] * b[0] - a[1] * b[1] - a[2] * b[2] - a[3] * b[3];
}

/// r1_{mu nu} = -omega S_{mu nu} - (sigma/2) eps_{mu nu a b} S^{ab} + (J_mu K_nu - K_mu J_nu).
/// The sign of the last term is the one for which the identity holds in the
/// frozen convention of gamma.hpp.
template <class T>
FpkResiduals<T> fpk_residuals(const BilinearSet<T>& b);

/// True iff every FPK residual is within tol (exact mode: exactly zero).
template <class T>
bool is_fierz_aggregate(const BilinearSet<T>& b, double tol);

}  // namespace spinor_forge
