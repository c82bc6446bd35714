#include "spinor_forge/bilinear.hpp"

#include <string>

namespace spinor_forge {
namespace {

template <class T>
RealOf<T> checked_real(const T& z, const RealOf<T>& scale, const char* what) {
  using Tr = ScalarTraits<T>;
  if constexpr (Tr::exact) {
    if (sgn(imag(z)) != 0)
      throw Error(ErrorCode::consistency, std::string("non-real bilinear ") + what + ": " + z.to_string());
    return real(z);
  } else {
    if (std::abs(z.imag()) > 1e-10 * scale)
      throw Error(ErrorCode::consistency, std::string("non-real bilinear ") + what);
    return z.real();
  }
}

template <class R>
R abs_of(const R& r) {
  return r < R(0) ? R(-r) : r;
}

}  // namespace

template <class T>
DualSpinor<T> dual(const Spinor<T>& psi) {
  DualSpinor<T> row;
  for (std::size_t i = 0; i < 4; ++i) row.c[i] = conj(psi[i]);
  return row * gamma_basis<T>().gamma[0];
}

template <class T>
BilinearSet<T> bilinears(const Spinor<T>& psi) {
  const auto& g = gamma_basis<T>();
  const T i = ScalarTraits<T>::i();
  const DualSpinor<T> bar = dual(psi);
  RealOf<T> scale = norm2(psi);
  if constexpr (!ScalarTraits<T>::exact) {
    if (scale < 1e-300) scale = 1e-300;
  }

  auto sandwich = [&](const Matrix4<T>& m) { return inner(bar, m * psi); };

  BilinearSet<T> b;
  b.sigma = checked_real<T>(inner(bar, psi), scale, "sigma");
  b.omega = checked_real<T>(i * sandwich(g.gamma5), scale, "omega");
  const Spinor<T> g5psi = g.gamma5 * psi;
  for (std::size_t mu = 0; mu < 4; ++mu) {
    b.J[mu] = checked_real<T>(sandwich(g.gamma[mu]), scale, "J");
    b.K[mu] = checked_real<T>(inner(bar, g.gamma[mu] * g5psi), scale, "K");
  }
  for (std::size_t k = 0; k < 6; ++k) {
    const auto [mu, nu] = kBivectorPairs[k];
    // (i/2)[g_mu, g_nu] = i g_mu g_nu for mu != nu.
    RealOf<T> s = checked_real<T>(i * sandwich(g.elements[10 + k]), scale, "S");
    b.S[nu][mu] = -s;
    b.S[mu][nu] = std::move(s);
  }
  return b;
}

template <class T>
FpkResiduals<T> fpk_residuals(const BilinearSet<T>& b) {
  using R = RealOf<T>;
  FpkResiduals<T> r;

  std::array<std::array<R, 4>, 4> s_up{};
  for (int a = 0; a < 4; ++a)
    for (int c = 0; c < 4; ++c) s_up[a][c] = R(metric(a, a) * metric(c, c)) * b.S[a][c];

  R worst{};
  auto track = [&worst](const R& v) {
    R a = abs_of(v);
    if (a > worst) worst = a;
  };

  for (int mu = 0; mu < 4; ++mu)
    for (int nu = 0; nu < 4; ++nu) {
      R dual_s{};
      for (int a = 0; a < 4; ++a)
        for (int c = 0; c < 4; ++c) {
          const int e = levi_civita(mu, nu, a, c);
          if (e != 0) dual_s += R(e) * s_up[a][c];
        }
      R v = -b.omega * b.S[mu][nu] - b.sigma * dual_s / R(2) + (b.J[mu] * b.K[nu] - b.K[mu] * b.J[nu]);
      track(v);
      r.r1[mu][nu] = std::move(v);
    }
  const R jj = minkowski_dot(b.J, b.J);
  const R kk = minkowski_dot(b.K, b.K);
  r.r2a = jj + kk;
  r.r2b = minkowski_dot(b.J, b.K);
  r.r3 = jj - b.sigma * b.sigma - b.omega * b.omega;
  track(r.r2a);
  track(r.r2b);
  track(r.r3);
  r.max_abs = worst;
  return r;
}

template <class T>
bool is_fierz_aggregate(const BilinearSet<T>& b, double tol) {
  const auto r = fpk_residuals(b);
  if constexpr (ScalarTraits<T>::exact) {
    return sgn(r.max_abs) == 0;
  } else {
    return r.max_abs <= tol;
  }
}

#define SF_INSTANTIATE(T)                                                   \
  template DualSpinor<T> dual<T>(const Spinor<T>&);                         \
  template BilinearSet<T> bilinears<T>(const Spinor<T>&);                   \
  template FpkResiduals<T> fpk_residuals<T>(const BilinearSet<T>&);         \
  template bool is_fierz_aggregate<T>(const BilinearSet<T>&, double);

SF_INSTANTIATE(GaussianRational)
SF_INSTANTIATE(Complex)
#undef SF_INSTANTIATE

}  // namespace spinor_forge
