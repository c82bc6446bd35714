#include "spinor_forge/lounesto.hpp"

namespace spinor_forge {

LounestoClass::LounestoClass(int value) : value_(value) {
  if (value < 1 || value > 6)
    throw Error(ErrorCode::invalid_argument, "Lounesto class must be in 1..6, got " + std::to_string(value));
}

std::string NullnessPattern::to_string() const {
  auto f = [](const char* name, bool null) { return std::string(name) + (null ? "=0" : "!=0"); };
  return f("J", J_null) + " " + f("K", K_null) + " " + f("S", S_null) + " " + f("omega", omega_null) + " " +
         f("sigma", sigma_null);
}

template <class T>
NullnessPattern nullness_pattern(const BilinearSet<T>& b, const ClassifierConfig& cfg) {
  using Tr = ScalarTraits<T>;
  double tol = 0.0;
  if constexpr (!Tr::exact) {
    if (!(cfg.null_tol > 0.0)) throw Error(ErrorCode::invalid_argument, "null_tol must be > 0 in float mode");
    tol = cfg.null_tol * b.J[0];
  }
  auto all_null = [&](const auto& arr) {
    for (const auto& x : arr)
      if (!Tr::is_null(x, tol)) return false;
    return true;
  };
  NullnessPattern p;
  p.J_null = all_null(b.J);
  p.K_null = all_null(b.K);
  p.S_null = true;
  for (const auto& row : b.S) p.S_null = p.S_null && all_null(row);
  p.omega_null = Tr::is_null(b.omega, tol);
  p.sigma_null = Tr::is_null(b.sigma, tol);
  return p;
}

std::optional<LounestoClass> class_from_pattern(const NullnessPattern& p) {
  if (p.J_null) return std::nullopt;
  if (!p.K_null && !p.S_null) {
    if (!p.omega_null && !p.sigma_null) return LounestoClass(1);
    if (!p.omega_null && p.sigma_null) return LounestoClass(2);
    if (p.omega_null && !p.sigma_null) return LounestoClass(3);
    return LounestoClass(4);
  }
  if (!p.omega_null || !p.sigma_null) return std::nullopt;
  if (p.K_null && !p.S_null) return LounestoClass(5);
  if (!p.K_null && p.S_null) return LounestoClass(6);
  return std::nullopt;
}

template <class T>
Classification<T> classify_detailed(const Spinor<T>& psi, const ClassifierConfig& cfg) {
  BilinearSet<T> b = bilinears(psi);
  // J0 = |psi|^2, so J = 0 iff psi = 0; the tolerance scale below is J0.
  if (ScalarTraits<T>::is_null(b.J[0], 0.0) || (!ScalarTraits<T>::exact && !(ScalarTraits<T>::to_double(b.J[0]) > 0)))
    throw Error(ErrorCode::zero_current, "spinor has zero current J (unclassifiable)");
  NullnessPattern p = nullness_pattern(b, cfg);
  auto cls = class_from_pattern(p);
  if (!cls) throw Error(ErrorCode::unknown_pattern, "nullness pattern matches no Lounesto class: " + p.to_string());
  return {*cls, p, std::move(b)};
}

template <class T>
bool component_relation(const Spinor<T>& psi, double tol) {
  const T lhs = psi[0] * conj(psi[2]);
  const T rhs = psi[1] * conj(psi[3]);
  if constexpr (ScalarTraits<T>::exact) {
    (void)tol;
    return lhs == rhs;
  } else {
    return std::abs(lhs - rhs) <= tol;
  }
}

GaussianRational random_gaussian_rational(std::mt19937_64& rng) {
  std::uniform_int_distribution<long> num(-9, 9);
  std::uniform_int_distribution<long> den(1, 6);
  return {Rational(num(rng), den(rng)), Rational(num(rng), den(rng))};
}

Spinor<GaussianRational> random_rational_spinor(std::mt19937_64& rng) {
  Spinor<GaussianRational> s;
  for (auto& x : s.c) x = random_gaussian_rational(rng);
  return s;
}

namespace {

Rational nonzero_rational(std::mt19937_64& rng) {
  std::uniform_int_distribution<long> num(1, 9);
  std::uniform_int_distribution<long> den(1, 6);
  std::bernoulli_distribution neg(0.5);
  Rational q(num(rng), den(rng));
  q.canonicalize();
  return neg(rng) ? Rational(-q) : q;
}

// Unimodular Gaussian rational (1 - t^2 + 2 t i) / (1 + t^2) for rational t.
GaussianRational unimodular(std::mt19937_64& rng) {
  std::uniform_int_distribution<long> num(-7, 7);
  std::uniform_int_distribution<long> den(1, 5);
  Rational t(num(rng), den(rng));
  t.canonicalize();
  Rational d = 1 + t * t;
  return {Rational((1 - t * t) / d), Rational(2 * t / d)};
}

Spinor<GaussianRational> construct_candidate(int cls, std::mt19937_64& rng) {
  Spinor<GaussianRational> s;
  switch (cls) {
    case 1:
    case 2:
    case 3:
    case 4: {
      // sigma = 2 Re x, omega = -2 Im x with x = a* c + b* d; fix d to hit x.
      GaussianRational x;
      if (cls == 1) x = {nonzero_rational(rng), nonzero_rational(rng)};
      if (cls == 2) x = {Rational(0), nonzero_rational(rng)};
      if (cls == 3) x = {nonzero_rational(rng), Rational(0)};
      s[0] = random_gaussian_rational(rng);
      s[1] = random_gaussian_rational(rng);
      s[2] = random_gaussian_rational(rng);
      if (s[1].is_zero()) return s;
      s[3] = (x - conj(s[0]) * s[2]) / conj(s[1]);
      return s;
    }
    case 5: {
      const GaussianRational a = random_gaussian_rational(rng);
      const GaussianRational b = random_gaussian_rational(rng);
      const GaussianRational lambda = unimodular(rng);
      s[0] = a;
      s[1] = b;
      s[2] = -(lambda * conj(b));
      s[3] = lambda * conj(a);
      return s;
    }
    default: {
      std::bernoulli_distribution left(0.5);
      const std::size_t off = left(rng) ? 0 : 2;
      s[off] = random_gaussian_rational(rng);
      s[off + 1] = random_gaussian_rational(rng);
      return s;
    }
  }
}

}  // namespace

Spinor<GaussianRational> sample_class(LounestoClass cls, std::uint64_t seed, int max_attempts) {
  std::mt19937_64 rng(seed * 0x9E3779B97F4A7C15ull + static_cast<std::uint64_t>(cls.value()));
  for (int attempt = 0; attempt < max_attempts; ++attempt) {
    Spinor<GaussianRational> s = construct_candidate(cls.value(), rng);
    if (s.is_zero()) continue;
    try {
      if (classify(s) == cls) return s;
    } catch (const Error&) {
      // rejected candidate
    }
  }
  throw Error(ErrorCode::sampler_exhausted,
              "sampler exhausted for class " + std::to_string(cls.value()) + " after " +
                  std::to_string(max_attempts) + " attempts");
}

#define SF_INSTANTIATE(T)                                                                          \
  template NullnessPattern nullness_pattern<T>(const BilinearSet<T>&, const ClassifierConfig&);    \
  template Classification<T> classify_detailed<T>(const Spinor<T>&, const ClassifierConfig&);      \
  template bool component_relation<T>(const Spinor<T>&, double);

SF_INSTANTIATE(GaussianRational)
SF_INSTANTIATE(Complex)
#undef SF_INSTANTIATE

}  // namespace spinor_forge
