#pragma once

// Lounesto classification of Dirac spinors by the nullness pattern of
// (K, S, omega, sigma):
//
//   class  K      S      omega  sigma
//   1      !=0    !=0    !=0    !=0
//   2      !=0    !=0    !=0    =0
//   3      !=0    !=0    =0     !=0
//   4      !=0    !=0    =0     =0
//   5      =0     !=0    =0     =0
//   6      !=0    =0     =0     =0
//
// Classes 1-3 are regular, 4-6 singular. A spinor with J = 0 is not
// classifiable.

#include <cstdint>
#include <random>
#include <string>

#include "spinor_forge/bilinear.hpp"

namespace spinor_forge {

class LounestoClass {
 public:
  /// Throws Error(invalid_argument) unless 1 <= value <= 6.
  explicit LounestoClass(int value);
  int value() const { return value_; }
  bool singular() const { return value_ >= 4; }
  friend bool operator==(LounestoClass, LounestoClass) = default;

 private:
  int value_;
};

struct ClassifierConfig {
  Mode mode = Mode::exact;
  // Float mode: component x is null iff |x| <= null_tol * J0.
  double null_tol = 1e-9;
};

struct NullnessPattern {
  bool J_null = false;
  bool K_null = false;
  bool S_null = false;
  bool omega_null = false;
  bool sigma_null = false;

  /// e.g. "K!=0 S!=0 omega=0 sigma=0"
  std::string to_string() const;
  friend bool operator==(const NullnessPattern&, const NullnessPattern&) = default;
};

template <class T>
NullnessPattern nullness_pattern(const BilinearSet<T>& b, const ClassifierConfig& cfg);

/// Maps a pattern to its class; nullopt when it matches none of the six.
std::optional<LounestoClass> class_from_pattern(const NullnessPattern& p);

template <class T>
struct Classification {
  LounestoClass cls;
  NullnessPattern pattern;
  BilinearSet<T> bilinears;
};

/// Throws Error(zero_current) if J = 0 and Error(unknown_pattern) if the
/// pattern is not one of the six.
template <class T>
Classification<T> classify_detailed(const Spinor<T>& psi, const ClassifierConfig& cfg = {});

template <class T>
LounestoClass classify(const Spinor<T>& psi, const ClassifierConfig& cfg = {}) {
  return classify_detailed(psi, cfg).cls;
}

template <class T>
bool is_singular(const Spinor<T>& psi, const ClassifierConfig& cfg = {}) {
  return classify(psi, cfg).singular();
}

/// a c* == b d*, the component relation quoted for singular spinors. It
/// depends on the gamma representation and does not coincide with
/// sigma = omega = 0 in the Weyl basis used here; it is not used by classify.
template <class T>
bool component_relation(const Spinor<T>& psi, double tol = 0.0);

/// Random Gaussian-rational spinor: numerators in [-9, 9], denominators in [1, 6].
Spinor<GaussianRational> random_rational_spinor(std::mt19937_64& rng);
GaussianRational random_gaussian_rational(std::mt19937_64& rng);

/// Deterministic per (cls, seed). The result classifies as `cls` in exact mode.
/// Throws Error(sampler_exhausted) after max_attempts failed constructions.
Spinor<GaussianRational> sample_class(LounestoClass cls, std::uint64_t seed, int max_attempts = 1000);

}  // namespace spinor_forge
