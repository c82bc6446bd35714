#include "spinor_forge/symmetry.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace spinor_forge {
namespace {

std::string format_coefficient(const GaussianRational& z) { return z.to_string(); }
std::string format_coefficient(const Complex& z) {
  std::ostringstream os;
  os.precision(17);
  os << z.real() << (z.imag() < 0 ? "" : "+") << z.imag() << "i";
  return os.str();
}

// JSON text in the exact spinor encoding.
std::string format_spinor(const Spinor<GaussianRational>& psi) {
  std::string out = "[";
  for (std::size_t i = 0; i < 4; ++i)
    out += std::string(i ? "," : "") + "[\"" + rational_to_string(psi[i].real()) + "\",\"" +
           rational_to_string(psi[i].imag()) + "\"]";
  return out + "]";
}

template <class R>
R abs_of(const R& r) {
  return r < R(0) ? R(-r) : r;
}

// Per-sector factors relative to the Dirac-selfadjoint bilinear, so the
// in-sector coefficient matrix is real: omega carries i, S carries i, K is
// -psibar g5 g_mu psi. A constant factor per sector cancels in the transform.
template <class T>
bool in_sector_real(const T& z, double tol, RealOf<T>& out) {
  if constexpr (ScalarTraits<T>::exact) {
    (void)tol;
    if (sgn(z.imag()) != 0) return false;
    out = z.real();
    return true;
  } else {
    if (std::abs(z.imag()) > tol) return false;
    out = z.real();
    return true;
  }
}

template <class T>
bool coefficient_is_null(const T& z, double tol) {
  if constexpr (ScalarTraits<T>::exact) {
    (void)tol;
    return z.is_zero();
  } else {
    return std::abs(z) <= tol;
  }
}

template <class R, std::size_t N>
void fill_sector(RealMatrix<R, N>& m, const std::vector<std::vector<R>>& rows, std::size_t first) {
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j) m.a[i][j] = rows[first + i][first + j];
}

}  // namespace

NotASymmetryError::NotASymmetryError(std::size_t source_index, std::vector<LeakedCoefficient> leaks)
    : Error(ErrorCode::not_a_symmetry,
            "conjugated basis element " + basis_label(source_index) + " leaves its sector (" +
                std::to_string(leaks.size()) + " leaked coefficient(s))"),
      source_(source_index),
      leaks_(std::move(leaks)) {}

template <class R, std::size_t N>
RealMatrix<R, N> inverse(const RealMatrix<R, N>& input) {
  RealMatrix<R, N> m = input;
  RealMatrix<R, N> inv = RealMatrix<R, N>::identity();
  for (std::size_t col = 0; col < N; ++col) {
    std::size_t piv = N;
    R best(0);
    for (std::size_t r = col; r < N; ++r) {
      R a = abs_of(m.a[r][col]);
      if (a > best) {
        best = a;
        piv = r;
      }
    }
    if (piv == N) throw SingularMatrixError();
    std::swap(m.a[col], m.a[piv]);
    std::swap(inv.a[col], inv.a[piv]);
    const R p = m.a[col][col];
    for (std::size_t j = 0; j < N; ++j) {
      m.a[col][j] /= p;
      inv.a[col][j] /= p;
    }
    for (std::size_t r = 0; r < N; ++r) {
      if (r == col || m.a[r][col] == R(0)) continue;
      const R f = m.a[r][col];
      for (std::size_t j = 0; j < N; ++j) {
        m.a[r][j] -= f * m.a[col][j];
        inv.a[r][j] -= f * inv.a[col][j];
      }
    }
  }
  return inv;
}

template <class T>
Matrix4<T> conjugate_action(const SymmetryCandidate<T>& s, const Matrix4<T>& gamma) {
  const Matrix4<T>& g0 = gamma_basis<T>().gamma[0];
  if (!s.antilinear) return g0 * s.matrix.adjoint() * g0 * gamma * s.matrix;
  return g0 * (s.matrix.adjoint() * g0 * gamma * s.matrix).transpose();
}

template <class T>
BetaMap<T> beta_extract(const SymmetryCandidate<T>& s, double tol) {
  using R = RealOf<T>;
  const auto& basis = gamma_basis<T>();

  std::array<std::array<T, kBasisSize>, kBasisSize> coeffs;
  double scale = 0.0;
  for (std::size_t a = 0; a < kBasisSize; ++a) {
    coeffs[a] = gamma_basis_expand(conjugate_action(s, basis.elements[a]));
    if constexpr (!ScalarTraits<T>::exact)
      for (const auto& c : coeffs[a]) scale = std::max(scale, std::abs(c));
  }
  const double abs_tol = tol * (1.0 + scale);

  std::vector<std::vector<R>> real_rows(kBasisSize, std::vector<R>(kBasisSize));
  for (std::size_t a = 0; a < kBasisSize; ++a) {
    const Sector sec = sector_of(a);
    std::vector<LeakedCoefficient> leaks;
    for (std::size_t b = 0; b < kBasisSize; ++b) {
      const T& c = coeffs[a][b];
      if (sector_of(b) != sec) {
        if (!coefficient_is_null(c, abs_tol)) leaks.push_back({b, format_coefficient(c)});
        continue;
      }
      if (!in_sector_real(c, abs_tol, real_rows[a][b])) leaks.push_back({b, format_coefficient(c)});
    }
    if (!leaks.empty()) throw NotASymmetryError(a, std::move(leaks));
  }

  BetaMap<T> m;
  m.beta_scalar = real_rows[0][0];
  m.beta_pseudoscalar = real_rows[1][1];
  fill_sector(m.L_J, real_rows, sector_range(Sector::vector).first);
  fill_sector(m.L_K, real_rows, sector_range(Sector::axial).first);
  fill_sector(m.L_S, real_rows, sector_range(Sector::bivector).first);
  if constexpr (ScalarTraits<T>::exact) {
    m.strict = m.L_J.as_scalar().has_value() && m.L_K.as_scalar().has_value() && m.L_S.as_scalar().has_value();
  } else {
    auto near_scalar = [&](const auto& mat) {
      auto id = std::decay_t<decltype(mat)>::identity();
      return max_abs_diff(mat, mat.a[0][0] * id) <= abs_tol;
    };
    m.strict = near_scalar(m.L_J) && near_scalar(m.L_K) && near_scalar(m.L_S);
  }
  return m;
}

template <class T>
double beta_map_distance(const BetaMap<T>& x, const BetaMap<T>& y) {
  double d = std::abs(as_double(RealOf<T>(x.beta_scalar - y.beta_scalar)));
  d = std::max(d, std::abs(as_double(RealOf<T>(x.beta_pseudoscalar - y.beta_pseudoscalar))));
  d = std::max(d, max_abs_diff(x.L_J, y.L_J));
  d = std::max(d, max_abs_diff(x.L_K, y.L_K));
  d = std::max(d, max_abs_diff(x.L_S, y.L_S));
  return d;
}

template <class T>
BetaMap<T> beta_product(const BetaMap<T>& x, const BetaMap<T>& y) {
  BetaMap<T> r;
  r.beta_scalar = x.beta_scalar * y.beta_scalar;
  r.beta_pseudoscalar = x.beta_pseudoscalar * y.beta_pseudoscalar;
  r.L_J = x.L_J * y.L_J;
  r.L_K = x.L_K * y.L_K;
  r.L_S = x.L_S * y.L_S;
  r.strict = x.strict && y.strict;
  return r;
}

template <class T>
BetaMap<T> beta_inverse(const BetaMap<T>& x) {
  using R = RealOf<T>;
  if (x.beta_scalar == R(0) || x.beta_pseudoscalar == R(0)) throw SingularMatrixError();
  BetaMap<T> r;
  r.beta_scalar = R(1) / x.beta_scalar;
  r.beta_pseudoscalar = R(1) / x.beta_pseudoscalar;
  r.L_J = inverse(x.L_J);
  r.L_K = inverse(x.L_K);
  r.L_S = inverse(x.L_S);
  r.strict = x.strict;
  return r;
}

template <class T>
ClassPreservationReport preserves_class(const SymmetryCandidate<T>& s, LounestoClass cls, int n, std::uint64_t seed,
                                        double null_tol) {
  if (n < 1) throw Error(ErrorCode::invalid_argument, "preserves_class needs n >= 1");
  ClassPreservationReport rep;
  rep.target_class = cls.value();
  rep.samples = n;
  if constexpr (ScalarTraits<T>::exact) {
    rep.invertible = !determinant(s.matrix).is_zero();
  } else {
    try {
      (void)spinor_forge::inverse(s.matrix);
    } catch (const SingularMatrixError&) {
      rep.invertible = false;
    }
  }
  ClassifierConfig cfg;
  cfg.null_tol = null_tol;
  cfg.mode = ScalarTraits<T>::mode;

  auto note = [&rep](const std::string& input, const std::string& result) {
    if (rep.counterexamples.size() < 5) rep.counterexamples.push_back({input, result});
  };

  for (int k = 0; k < n; ++k) {
    const Spinor<GaussianRational> sample = sample_class(cls, seed + static_cast<std::uint64_t>(k));
    Spinor<T> psi;
    if constexpr (ScalarTraits<T>::exact) {
      psi = sample;
    } else {
      psi = to_float(sample);
    }
    const Spinor<T> image = act(s, psi);
    try {
      const auto result = classify_detailed(image, cfg);
      const double fpk_tol = ScalarTraits<T>::exact ? 0.0 : 1e-9 * ScalarTraits<T>::to_double(result.bilinears.J[0]);
      if (!is_fierz_aggregate(result.bilinears, fpk_tol)) {
        ++rep.fpk_violations;
        note(format_spinor(sample), "fpk-violation");
      }
      if (result.cls == cls) {
        ++rep.preserved;
      } else {
        ++rep.changed;
        note(format_spinor(sample), std::to_string(result.cls.value()));
      }
    } catch (const Error& e) {
      if (e.code() == ErrorCode::zero_current) {
        ++rep.zero_current;
        if (rep.invertible) note(format_spinor(sample), "zero-current");
      } else if (e.code() == ErrorCode::unknown_pattern) {
        ++rep.changed;
        note(format_spinor(sample), "unknown-pattern");
      } else {
        throw;
      }
    }
  }
  const bool zero_ok = rep.zero_current == 0 || !rep.invertible;
  rep.pass = rep.changed == 0 && rep.fpk_violations == 0 && zero_ok && rep.preserved > 0;
  return rep;
}

template <class T>
LemmaReport<T> verify_rescaling_lemma(const SymmetryCandidate<T>& s, double tol) {
  using R = RealOf<T>;
  BetaMap<T> bm;
  try {
    bm = beta_extract(s, tol);
  } catch (const NotASymmetryError& e) {
    throw Error(ErrorCode::precondition, std::string("rescaling lemma needs a sector-preserving candidate: ") + e.what());
  }
  Matrix4<T> s_inv;
  try {
    s_inv = spinor_forge::inverse(s.matrix);
  } catch (const SingularMatrixError&) {
    throw Error(ErrorCode::precondition, "rescaling lemma needs an invertible candidate");
  }
  const auto& g5 = gamma_basis<T>().gamma5;
  LemmaReport<T> rep;
  rep.alpha = bm.beta_scalar;
  rep.beta = bm.beta_pseudoscalar;
  // For antilinear S the same elimination gives alpha S^-1 g5 S = -beta g5.
  const R signed_beta = s.antilinear ? R(-rep.beta) : rep.beta;
  const Matrix4<T> lhs = ScalarTraits<T>::from_real(rep.alpha) * (s_inv * g5 * s.matrix);
  const Matrix4<T> rhs = ScalarTraits<T>::from_real(signed_beta) * g5;
  rep.det_lhs = determinant(lhs);
  rep.det_rhs = determinant(rhs);
  rep.identity_residual = max_abs(Matrix4<T>(lhs - rhs));
  if constexpr (ScalarTraits<T>::exact) {
    rep.holds = rep.alpha == rep.beta || rep.alpha == R(-rep.beta);
    rep.determinant_route_holds = rep.det_lhs == rep.det_rhs;
  } else {
    const double scale = 1.0 + std::abs(rep.alpha) + std::abs(rep.beta);
    rep.holds = std::abs(rep.alpha - rep.beta) <= tol * scale || std::abs(rep.alpha + rep.beta) <= tol * scale;
    const double dscale = 1.0 + std::abs(rep.det_lhs) + std::abs(rep.det_rhs);
    rep.determinant_route_holds = std::abs(rep.det_lhs - rep.det_rhs) <= tol * dscale;
  }
  return rep;
}

template <class T>
SymmetryCandidate<T> compose(const SymmetryCandidate<T>& x, const SymmetryCandidate<T>& y) {
  SymmetryCandidate<T> r;
  // x(y psi): an antilinear x conjugates whatever y produced.
  r.matrix = x.antilinear ? x.matrix * y.matrix.conjugate() : x.matrix * y.matrix;
  r.antilinear = x.antilinear != y.antilinear;
  if (!x.label.empty() && !y.label.empty()) r.label = x.label + "*" + y.label;
  return r;
}

template <class T>
SymmetryCandidate<T> inverse(const SymmetryCandidate<T>& s) {
  SymmetryCandidate<T> r;
  try {
    r.matrix = spinor_forge::inverse(s.matrix);
  } catch (const SingularMatrixError&) {
    throw Error(ErrorCode::singular_matrix, "candidate is singular (det S = 0)");
  }
  // psi = M conj(phi) inverts to phi = conj(M^-1) conj(psi).
  if (s.antilinear) r.matrix = r.matrix.conjugate();
  r.antilinear = s.antilinear;
  if (!s.label.empty()) r.label = s.label + "^-1";
  return r;
}

template <class T>
SymmetryCandidate<T> type6_block(const Block2<T>& a, const Block2<T>& b, BlockLayout layout) {
  auto zero = [](const Block2<T>& m) {
    for (const auto& x : m)
      if (!(x == T{})) return false;
    return true;
  };
  if (zero(a) && zero(b)) throw Error(ErrorCode::both_blocks_zero, "type-6 block candidate needs A != 0 or B != 0");
  SymmetryCandidate<T> s;
  s.matrix = Matrix4<T>{};
  const std::size_t a_col = layout == BlockLayout::diagonal ? 0 : 2;
  const std::size_t b_col = layout == BlockLayout::diagonal ? 2 : 0;
  for (std::size_t r = 0; r < 2; ++r)
    for (std::size_t c = 0; c < 2; ++c) {
      s.matrix(r, a_col + c) = a[r * 2 + c];
      s.matrix(2 + r, b_col + c) = b[r * 2 + c];
    }
  s.label = layout == BlockLayout::diagonal ? "type6-diag" : "type6-antidiag";
  return s;
}

template <class T>
bool ray_equal(const Spinor<T>& psi1, const Spinor<T>& psi2, double tol) {
  if (psi1.is_zero() || psi2.is_zero()) throw Error(ErrorCode::zero_spinor, "ray_equal needs nonzero spinors");
  if constexpr (ScalarTraits<T>::exact) {
    (void)tol;
    std::size_t k = 0;
    while (psi1[k].is_zero()) ++k;
    const T z = psi2[k] / psi1[k];
    if (norm(z) != 1) return false;
    return z * psi1 == psi2;
  } else {
    std::size_t k = 0;
    for (std::size_t i = 1; i < 4; ++i)
      if (std::abs(psi1[i]) > std::abs(psi1[k])) k = i;
    const Complex z = psi2[k] / psi1[k];
    if (std::abs(std::abs(z) - 1.0) > tol) return false;
    const double scale = std::sqrt(norm2(psi2));
    return std::sqrt(norm2(Spinor<Complex>(z * psi1 - psi2))) <= tol * scale;
  }
}

std::optional<double> phase_consistency(const Spinor<Complex>& psi_m, const Spinor<Complex>& psi_n, double phi_m,
                                        double phi_n, double tol) {
  const double nm = norm2(psi_m);
  const double nn = norm2(psi_n);
  Complex overlap{};
  for (std::size_t i = 0; i < 4; ++i) overlap += std::conj(psi_m[i]) * psi_n[i];
  // Cauchy-Schwarz equality <=> parallel.
  if (nm == 0.0 || nn == 0.0 || nm * nn - std::norm(overlap) <= tol * nm * nn)
    throw Error(ErrorCode::linearly_dependent, "phase_consistency needs linearly independent spinors");

  const Complex em = std::polar(1.0, phi_m);
  const Complex en = std::polar(1.0, phi_n);
  const Spinor<Complex> lhs = em * psi_m + en * psi_n;
  const Spinor<Complex> sum = psi_m + psi_n;
  // Least-squares z with lhs = z * sum, then test the residual and |z| = 1.
  Complex num{};
  for (std::size_t i = 0; i < 4; ++i) num += std::conj(sum[i]) * lhs[i];
  const double den = norm2(sum);
  const Complex z = num / den;
  const double residual = std::sqrt(norm2(Spinor<Complex>(lhs - z * sum)));
  const double scale = std::sqrt(nm) + std::sqrt(nn);
  if (residual > tol * scale || std::abs(std::abs(z) - 1.0) > tol) return std::nullopt;
  return phi_m;
}

std::optional<double> phase_consistency(const Spinor<GaussianRational>& psi_m, const Spinor<GaussianRational>& psi_n,
                                        double phi_m, double phi_n, double tol) {
  // Exact linear-dependence test first, then the float solve.
  bool dependent = true;
  for (std::size_t i = 0; i < 4 && dependent; ++i)
    for (std::size_t j = i + 1; j < 4 && dependent; ++j)
      if (!(psi_m[i] * psi_n[j] - psi_m[j] * psi_n[i]).is_zero()) dependent = false;
  if (dependent) throw Error(ErrorCode::linearly_dependent, "phase_consistency needs linearly independent spinors");
  return phase_consistency(to_float(psi_m), to_float(psi_n), phi_m, phi_n, tol);
}

namespace {

template <class T>
bool same_candidate(const SymmetryCandidate<T>& x, const SymmetryCandidate<T>& y, double tol) {
  if (x.antilinear != y.antilinear) return false;
  if constexpr (ScalarTraits<T>::exact) {
    (void)tol;
    return x.matrix == y.matrix;
  } else {
    return max_abs(Matrix4<T>(x.matrix - y.matrix)) <= tol * (1.0 + max_abs(x.matrix));
  }
}

template <class T>
bool contains(const std::vector<SymmetryCandidate<T>>& set, const SymmetryCandidate<T>& s, double tol) {
  for (const auto& e : set)
    if (same_candidate(e, s, tol)) return true;
  return false;
}

}  // namespace

template <class T>
GroupCheckReport<T> group_check(const std::vector<SymmetryCandidate<T>>& generators, int max_word_length, double tol) {
  if (generators.empty()) throw Error(ErrorCode::invalid_argument, "group_check needs at least one generator");
  if (max_word_length < 1) throw Error(ErrorCode::invalid_argument, "max word length must be >= 1");
  for (const auto& g : generators) (void)inverse(g);

  GroupCheckReport<T> rep;
  rep.max_word_length = max_word_length;
  std::vector<SymmetryCandidate<T>> frontier;
  for (const auto& g : generators)
    if (!contains(rep.elements, g, tol)) {
      rep.elements.push_back(g);
      frontier.push_back(g);
    }
  rep.word_length_reached = 1;
  for (int len = 2; len <= max_word_length && !frontier.empty(); ++len) {
    std::vector<SymmetryCandidate<T>> next;
    for (const auto& w : frontier)
      for (const auto& g : generators) {
        SymmetryCandidate<T> p = compose(w, g);
        p.label.clear();
        if (!contains(rep.elements, p, tol)) {
          rep.elements.push_back(p);
          next.push_back(std::move(p));
        }
      }
    frontier = std::move(next);
    rep.word_length_reached = len;
  }
  rep.closed = frontier.empty();
  if (!rep.closed) {
    // One more step decides whether the words of maximal length already close.
    bool grows = false;
    for (const auto& w : frontier)
      for (const auto& g : generators)
        if (!contains(rep.elements, compose(w, g), tol)) grows = true;
    rep.closed = !grows;
  }

  rep.cayley_closed = true;
  for (const auto& x : rep.elements)
    for (const auto& y : rep.elements)
      if (!contains(rep.elements, compose(x, y), tol)) rep.cayley_closed = false;
  rep.inverses_present = true;
  for (const auto& x : rep.elements)
    if (!contains(rep.elements, inverse(x), tol)) rep.inverses_present = false;
  rep.associative = true;
  const std::size_t n = std::min<std::size_t>(rep.elements.size(), 12);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        const auto& a = rep.elements[i];
        const auto& b = rep.elements[j];
        const auto& c = rep.elements[k];
        if (!same_candidate(compose(compose(a, b), c), compose(a, compose(b, c)), tol)) rep.associative = false;
      }
  return rep;
}

template <class T>
std::optional<SymmetryCandidate<T>> named_candidate(const std::string& name_in) {
  std::string name = name_in;
  bool negate = false;
  if (!name.empty() && name[0] == '-') {
    negate = true;
    name.erase(0, 1);
  }
  const auto& b = gamma_basis<T>();
  SymmetryCandidate<T> s;
  if (name == "identity" || name == "I") {
    s.matrix = Matrix4<T>::identity();
  } else if (name == "gamma5" || name == "g5") {
    s.matrix = b.gamma5;
  } else if (name.size() == 6 && name.rfind("gamma", 0) == 0 && name[5] >= '0' && name[5] <= '3') {
    s.matrix = b.gamma[name[5] - '0'];
  } else {
    return std::nullopt;
  }
  if (negate) s.matrix = -s.matrix;
  s.label = name_in;
  return s;
}

template <class T>
SymmetryCandidate<T> rotation_candidate(int i, int j, const RealOf<T>& t) {
  using R = RealOf<T>;
  if (i < 1 || j > 3 || i >= j) throw Error(ErrorCode::invalid_argument, "rotation needs 1 <= i < j <= 3");
  const auto& b = gamma_basis<T>();
  const R d = R(1) + t * t;
  const R c = (R(1) - t * t) / d;
  const R s = R(2) * t / d;
  SymmetryCandidate<T> out;
  out.matrix = ScalarTraits<T>::from_real(c) * Matrix4<T>::identity() +
               ScalarTraits<T>::from_real(s) * (b.gamma[i] * b.gamma[j]);
  out.label = "rot" + std::to_string(i) + std::to_string(j);
  return out;
}

template <class T>
SymmetryCandidate<T> boost_candidate(int i, const RealOf<T>& t) {
  using R = RealOf<T>;
  if (i < 1 || i > 3) throw Error(ErrorCode::invalid_argument, "boost axis must be 1..3");
  if (!(t * t < R(1))) throw Error(ErrorCode::invalid_argument, "boost parameter needs |t| < 1");
  const auto& b = gamma_basis<T>();
  const R d = R(1) - t * t;
  const R ch = (R(1) + t * t) / d;
  const R sh = R(2) * t / d;
  SymmetryCandidate<T> out;
  out.matrix = ScalarTraits<T>::from_real(ch) * Matrix4<T>::identity() +
               ScalarTraits<T>::from_real(sh) * (b.gamma[0] * b.gamma[i]);
  out.label = "boost" + std::to_string(i);
  return out;
}

template <class T>
SymmetryCandidate<T> scalar_candidate(const T& c) {
  SymmetryCandidate<T> out;
  out.matrix = c * Matrix4<T>::identity();
  out.label = "scalar";
  return out;
}

template RealMatrix<Rational, 4> inverse(const RealMatrix<Rational, 4>&);
template RealMatrix<Rational, 6> inverse(const RealMatrix<Rational, 6>&);
template RealMatrix<double, 4> inverse(const RealMatrix<double, 4>&);
template RealMatrix<double, 6> inverse(const RealMatrix<double, 6>&);

#define SF_INSTANTIATE(T)                                                                                        \
  template Matrix4<T> conjugate_action<T>(const SymmetryCandidate<T>&, const Matrix4<T>&);                       \
  template BetaMap<T> beta_extract<T>(const SymmetryCandidate<T>&, double);                                      \
  template double beta_map_distance<T>(const BetaMap<T>&, const BetaMap<T>&);                                    \
  template BetaMap<T> beta_product<T>(const BetaMap<T>&, const BetaMap<T>&);                                     \
  template BetaMap<T> beta_inverse<T>(const BetaMap<T>&);                                                        \
  template ClassPreservationReport preserves_class<T>(const SymmetryCandidate<T>&, LounestoClass, int,           \
                                                      std::uint64_t, double);                                    \
  template LemmaReport<T> verify_rescaling_lemma<T>(const SymmetryCandidate<T>&, double);                        \
  template SymmetryCandidate<T> compose<T>(const SymmetryCandidate<T>&, const SymmetryCandidate<T>&);            \
  template SymmetryCandidate<T> inverse<T>(const SymmetryCandidate<T>&);                                         \
  template SymmetryCandidate<T> type6_block<T>(const Block2<T>&, const Block2<T>&, BlockLayout);                 \
  template bool ray_equal<T>(const Spinor<T>&, const Spinor<T>&, double);                                        \
  template GroupCheckReport<T> group_check<T>(const std::vector<SymmetryCandidate<T>>&, int, double);            \
  template std::optional<SymmetryCandidate<T>> named_candidate<T>(const std::string&);                           \
  template SymmetryCandidate<T> rotation_candidate<T>(int, int, const RealOf<T>&);                               \
  template SymmetryCandidate<T> boost_candidate<T>(int, const RealOf<T>&);                                       \
  template SymmetryCandidate<T> scalar_candidate<T>(const T&);

SF_INSTANTIATE(GaussianRational)
SF_INSTANTIATE(Complex)
#undef SF_INSTANTIATE

}  // namespace spinor_forge
