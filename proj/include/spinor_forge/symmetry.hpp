#pragma once

// Class-preserving transformations of spinor space.
//
// A candidate S acts as psi -> S psi (linear) or psi -> S conj(psi)
// (antilinear). Its action on a bilinear psibar Gamma psi is psibar Gamma' psi
// with Gamma' = conjugate_action(S, Gamma). Expanding Gamma' in the gamma
// basis gives, sector by sector, the real matrices that map the old
// covariants to the new ones:
//   sigma' = beta_I sigma,  omega' = beta_5 omega,
//   J' = L_J J,  K' = L_K K,  S' = L_S S  (S over the six bivector slots).

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "spinor_forge/lounesto.hpp"

namespace spinor_forge {

template <class R, std::size_t N>
struct RealMatrix {
  std::array<std::array<R, N>, N> a{};

  static RealMatrix identity() {
    RealMatrix m;
    for (std::size_t i = 0; i < N; ++i) m.a[i][i] = R(1);
    return m;
  }
  static RealMatrix diagonal(const std::array<R, N>& d) {
    RealMatrix m;
    for (std::size_t i = 0; i < N; ++i) m.a[i][i] = d[i];
    return m;
  }
  R& operator()(std::size_t r, std::size_t c) { return a[r][c]; }
  const R& operator()(std::size_t r, std::size_t c) const { return a[r][c]; }

  friend bool operator==(const RealMatrix&, const RealMatrix&) = default;
  friend RealMatrix operator*(const RealMatrix& x, const RealMatrix& y) {
    RealMatrix r;
    for (std::size_t i = 0; i < N; ++i)
      for (std::size_t k = 0; k < N; ++k)
        for (std::size_t j = 0; j < N; ++j) r.a[i][j] += x.a[i][k] * y.a[k][j];
    return r;
  }
  friend RealMatrix operator*(const R& s, RealMatrix x) {
    for (auto& row : x.a)
      for (auto& v : row) v = s * v;
    return x;
  }
  /// Scalar s with this == s * identity, if any.
  std::optional<R> as_scalar() const {
    for (std::size_t i = 0; i < N; ++i)
      for (std::size_t j = 0; j < N; ++j)
        if (i != j && a[i][j] != R(0)) return std::nullopt;
    for (std::size_t i = 1; i < N; ++i)
      if (a[i][i] != a[0][0]) return std::nullopt;
    return a[0][0];
  }
};

inline double as_double(double v) { return v; }
inline double as_double(const Rational& v) { return v.get_d(); }

/// max |x_ij - y_ij| as double.
template <class R, std::size_t N>
double max_abs_diff(const RealMatrix<R, N>& x, const RealMatrix<R, N>& y) {
  double worst = 0;
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j) {
      const double d = std::abs(as_double(R(x.a[i][j] - y.a[i][j])));
      if (d > worst) worst = d;
    }
  return worst;
}

/// Gauss-Jordan inverse; throws SingularMatrixError.
template <class R, std::size_t N>
RealMatrix<R, N> inverse(const RealMatrix<R, N>& m);

template <class T>
struct SymmetryCandidate {
  Matrix4<T> matrix = Matrix4<T>::identity();
  bool antilinear = false;
  std::string label;

  friend bool operator==(const SymmetryCandidate& x, const SymmetryCandidate& y) {
    return x.antilinear == y.antilinear && x.matrix == y.matrix;
  }
};

template <class T>
Spinor<T> act(const SymmetryCandidate<T>& s, const Spinor<T>& psi) {
  return s.antilinear ? s.matrix * conjugate(psi) : s.matrix * psi;
}

/// gamma0 S^dagger gamma0 Gamma S (linear) or gamma0 (S^dagger gamma0 Gamma S)^T (antilinear).
template <class T>
Matrix4<T> conjugate_action(const SymmetryCandidate<T>& s, const Matrix4<T>& gamma);

template <class T>
struct BetaMap {
  using Real = RealOf<T>;
  Real beta_scalar{};
  Real beta_pseudoscalar{};
  RealMatrix<Real, 4> L_J;
  RealMatrix<Real, 4> L_K;
  RealMatrix<Real, 6> L_S;
  // Every sector transform is a multiple of the identity.
  bool strict = false;

  friend bool operator==(const BetaMap&, const BetaMap&) = default;
};

struct LeakedCoefficient {
  std::size_t basis_index;
  std::string value;  // "(re,im)" exact, or "re+imi" float
};

class NotASymmetryError : public Error {
 public:
  NotASymmetryError(std::size_t source_index, std::vector<LeakedCoefficient> leaks);
  std::size_t source_index() const { return source_; }
  const std::vector<LeakedCoefficient>& leaks() const { return leaks_; }

 private:
  std::size_t source_;
  std::vector<LeakedCoefficient> leaks_;
};

/// Throws NotASymmetryError when some conjugated basis element leaves its
/// sector (or picks up a non-real in-sector coefficient). `tol` is used in
/// float mode only, relative to the largest coefficient.
template <class T>
BetaMap<T> beta_extract(const SymmetryCandidate<T>& s, double tol = 1e-10);

/// Largest entrywise difference between the sector transforms of two maps.
template <class T>
double beta_map_distance(const BetaMap<T>& x, const BetaMap<T>& y);

/// Sector transforms multiplied sector by sector (the map of x followed by y
/// on the Gamma side, which is the map of the product candidate x*y).
template <class T>
BetaMap<T> beta_product(const BetaMap<T>& x, const BetaMap<T>& y);

/// Sectorwise matrix inverse. Throws SingularMatrixError.
template <class T>
BetaMap<T> beta_inverse(const BetaMap<T>& x);

struct ClassCounterexample {
  std::string input;   // exact spinor as JSON text: [["p/q","p/q"] x4]
  std::string result;  // class number, "zero-current" or "unknown-pattern"
};

struct ClassPreservationReport {
  int target_class = 0;
  int samples = 0;
  int preserved = 0;
  int changed = 0;
  int zero_current = 0;
  int fpk_violations = 0;
  bool invertible = true;
  bool pass = false;
  std::vector<ClassCounterexample> counterexamples;  // at most 5
};

/// Samples n exact spinors of class `cls` (seeds seed..seed+n-1), applies s
/// and reclassifies. Zero-current images are tolerated only when s is
/// singular. Float candidates classify in float mode with `null_tol`.
template <class T>
ClassPreservationReport preserves_class(const SymmetryCandidate<T>& s, LounestoClass cls, int n, std::uint64_t seed,
                                        double null_tol = 1e-9);

template <class T>
struct LemmaReport {
  RealOf<T> alpha{};
  RealOf<T> beta{};
  bool holds = false;
  T det_lhs{};  // det(alpha S^-1 gamma5 S)
  T det_rhs{};  // det(+-beta gamma5)
  bool determinant_route_holds = false;
  RealOf<T> identity_residual{};  // |alpha S^-1 gamma5 S -+ beta gamma5|
};

/// Requires beta_extract to succeed and S invertible; otherwise throws
/// Error(precondition).
template <class T>
LemmaReport<T> verify_rescaling_lemma(const SymmetryCandidate<T>& s, double tol = 1e-10);

/// Operator composition: apply y first, then x. For linear x, y this is the
/// matrix product x*y.
template <class T>
SymmetryCandidate<T> compose(const SymmetryCandidate<T>& x, const SymmetryCandidate<T>& y);

/// Throws Error(singular_matrix) if det S = 0.
template <class T>
SymmetryCandidate<T> inverse(const SymmetryCandidate<T>& s);

enum class BlockLayout { diagonal, antidiagonal };

template <class T>
using Block2 = std::array<T, 4>;  // row-major 2x2

/// [[A,0],[0,B]] or [[0,A],[B,0]]. Throws Error(both_blocks_zero).
template <class T>
SymmetryCandidate<T> type6_block(const Block2<T>& a, const Block2<T>& b, BlockLayout layout);

/// psi2 = z psi1 with |z| = 1. Throws Error(zero_spinor).
template <class T>
bool ray_equal(const Spinor<T>& psi1, const Spinor<T>& psi2, double tol = 1e-12);

/// phi_mn with e^{i phi_m} psi_m + e^{i phi_n} psi_n = e^{i phi_mn}(psi_m + psi_n),
/// returned as phi_m when it exists. Throws Error(linearly_dependent).
std::optional<double> phase_consistency(const Spinor<Complex>& psi_m, const Spinor<Complex>& psi_n, double phi_m,
                                        double phi_n, double tol = 1e-9);
std::optional<double> phase_consistency(const Spinor<GaussianRational>& psi_m, const Spinor<GaussianRational>& psi_n,
                                        double phi_m, double phi_n, double tol = 1e-9);

template <class T>
struct GroupCheckReport {
  std::vector<SymmetryCandidate<T>> elements;
  int max_word_length = 4;
  int word_length_reached = 0;
  bool closed = false;            // no new elements at the last word length
  bool cayley_closed = false;     // every pairwise product is in the set
  bool inverses_present = false;  // every inverse is in the set
  bool associative = false;
  bool is_group() const { return closed && cayley_closed && inverses_present && associative; }
};

/// Generates all words in the generators up to max_word_length. Generators
/// must be invertible (throws Error(singular_matrix)).
template <class T>
GroupCheckReport<T> group_check(const std::vector<SymmetryCandidate<T>>& generators, int max_word_length = 4,
                                double tol = 1e-10);

// Generator family.

/// Named candidates: identity, gamma0..gamma3, gamma5, optionally prefixed by '-'.
template <class T>
std::optional<SymmetryCandidate<T>> named_candidate(const std::string& name);

/// cos I + sin gamma_i gamma_j with (cos, sin) = ((1-t^2), 2t)/(1+t^2); 1 <= i < j <= 3.
template <class T>
SymmetryCandidate<T> rotation_candidate(int i, int j, const RealOf<T>& t);

/// cosh I + sinh gamma_0 gamma_i with (cosh, sinh) = ((1+t^2), 2t)/(1-t^2); |t| < 1.
template <class T>
SymmetryCandidate<T> boost_candidate(int i, const RealOf<T>& t);

template <class T>
SymmetryCandidate<T> scalar_candidate(const T& c);

}  // namespace spinor_forge
