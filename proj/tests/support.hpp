#pragma once

#include <fstream>
#include <random>
#include <sstream>
#include <string>

#include "spinor_forge/json_io.hpp"

namespace sft {

using namespace spinor_forge;
using GR = GaussianRational;
using ESpinor = Spinor<GaussianRational>;
using EMatrix = Matrix4<GaussianRational>;

inline Rational Q(const std::string& s) { return parse_rational(s); }
inline GR G(long re, long im = 0) { return {Rational(re), Rational(im)}; }

inline ESpinor espinor(long a, long b, long c, long d) { return ESpinor{{G(a), G(b), G(c), G(d)}}; }

inline const Json& oracle() {
  static const Json j = [] {
    std::ifstream in(SF_ORACLE_PATH);
    std::stringstream ss;
    ss << in.rdbuf();
    return Json::parse(ss.str());
  }();
  return j;
}

inline const Json& oracle_entry(const char* section, const std::string& name) {
  for (const auto& e : oracle()[section])
    if (e["name"] == name) return e;
  throw std::runtime_error("no oracle entry " + name);
}

template <std::size_t N>
RealMatrix<Rational, N> oracle_matrix(const Json& j) {
  RealMatrix<Rational, N> m;
  for (std::size_t r = 0; r < N; ++r)
    for (std::size_t c = 0; c < N; ++c) m(r, c) = Q(j[r][c].get<std::string>());
  return m;
}

inline BetaMap<GR> oracle_beta(const Json& e) {
  BetaMap<GR> b;
  b.beta_scalar = Q(e["beta_scalar"].get<std::string>());
  b.beta_pseudoscalar = Q(e["beta_pseudoscalar"].get<std::string>());
  b.L_J = oracle_matrix<4>(e["L_J"]);
  b.L_K = oracle_matrix<4>(e["L_K"]);
  b.L_S = oracle_matrix<6>(e["L_S"]);
  return b;
}

inline bool same_transforms(const BetaMap<GR>& x, const BetaMap<GR>& y) {
  return x.beta_scalar == y.beta_scalar && x.beta_pseudoscalar == y.beta_pseudoscalar && x.L_J == y.L_J &&
         x.L_K == y.L_K && x.L_S == y.L_S;
}

inline ESpinor random_spinor(std::mt19937_64& rng) {
  ESpinor s = random_rational_spinor(rng);
  while (s.is_zero()) s = random_rational_spinor(rng);
  return s;
}

inline EMatrix random_matrix(std::mt19937_64& rng) {
  EMatrix m;
  for (auto& z : m.data()) z = random_gaussian_rational(rng);
  return m;
}

}  // namespace sft
