#include "spinor_forge/json_io.hpp"

#include <cmath>
#include <stdexcept>

namespace spinor_forge {
namespace {

[[noreturn]] void bad(const std::string& msg) { throw Error(ErrorCode::parse_error, msg); }

std::string kind_of(const Json& j) { return j.type_name(); }

template <class R>
Json real_array(const std::array<R, 4>& a) {
  Json out = Json::array();
  for (const auto& x : a) out.push_back(real_to_json(x));
  return out;
}

template <class R, std::size_t N>
Json real_matrix_to_json(const RealMatrix<R, N>& m) {
  Json out = Json::array();
  for (std::size_t i = 0; i < N; ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < N; ++j) row.push_back(real_to_json(m(i, j)));
    out.push_back(row);
  }
  return out;
}

template <class R, std::size_t N>
RealMatrix<R, N> real_matrix_from_json(const Json& j, const char* name) {
  if (!j.is_array() || j.size() != N) bad(std::string(name) + " must be a " + std::to_string(N) + "x" + std::to_string(N) + " array");
  RealMatrix<R, N> m;
  for (std::size_t r = 0; r < N; ++r) {
    if (!j[r].is_array() || j[r].size() != N) bad(std::string(name) + " row " + std::to_string(r) + " has wrong length");
    for (std::size_t c = 0; c < N; ++c) m(r, c) = real_from_json<R>(j[r][c]);
  }
  return m;
}

template <class R>
std::array<R, 4> real_array_from_json(const Json& j, const char* name) {
  if (!j.is_array() || j.size() != 4) bad(std::string(name) + " must be an array of 4 numbers");
  std::array<R, 4> a;
  for (std::size_t i = 0; i < 4; ++i) a[i] = real_from_json<R>(j[i]);
  return a;
}

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) bad(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

}  // namespace

Json parse_json_text(const std::string& text, const std::string& what) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    std::size_t line = 1;
    std::size_t col = 1;
    const std::size_t stop = std::min<std::size_t>(e.byte > 0 ? e.byte - 1 : 0, text.size());
    for (std::size_t i = 0; i < stop; ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw Error(ErrorCode::parse_error, what + ": JSON syntax error at line " + std::to_string(line) + ", column " +
                                            std::to_string(col));
  }
}

Json real_to_json(double v) { return v; }
Json real_to_json(const Rational& v) { return rational_to_string(v); }
Json scalar_to_json(const Complex& z) { return Json::array({z.real(), z.imag()}); }
Json scalar_to_json(const GaussianRational& z) {
  return Json::array({rational_to_string(z.real()), rational_to_string(z.imag())});
}

template <>
Rational real_from_json<Rational>(const Json& j) {
  if (j.is_number_integer()) return Rational(j.get<long>());
  if (j.is_number_float()) {
    const double d = j.get<double>();
    if (!std::isfinite(d)) bad("non-finite number");
    try {
      return parse_rational(j.dump());
    } catch (const std::invalid_argument&) {
      Rational q(d);  // exponent form: take the binary value exactly
      return q;
    }
  }
  if (j.is_string()) {
    try {
      return parse_rational(j.get<std::string>());
    } catch (const std::invalid_argument& e) {
      bad(e.what());
    }
  }
  bad("expected a number or \"p/q\" string, got " + kind_of(j));
}

template <>
double real_from_json<double>(const Json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    try {
      return parse_rational(s).get_d();
    } catch (const std::invalid_argument&) {
      try {
        std::size_t used = 0;
        const double d = std::stod(s, &used);
        if (used == s.size()) return d;
      } catch (const std::exception&) {
      }
      bad("malformed number: " + s);
    }
  }
  bad("expected a number or \"p/q\" string, got " + kind_of(j));
}

template <class T>
T scalar_from_json(const Json& j) {
  using R = RealOf<T>;
  if (j.is_array()) {
    if (j.size() != 2) bad("complex value must be [re, im]");
    return T(real_from_json<R>(j[0]), real_from_json<R>(j[1]));
  }
  return T(real_from_json<R>(j), R(0));
}

template <class T>
Json spinor_to_json(const Spinor<T>& psi) {
  Json arr = Json::array();
  for (const auto& z : psi.c) arr.push_back(scalar_to_json(z));
  Json out;
  out["spinor"] = arr;
  return out;
}

template <class T>
Spinor<T> spinor_from_json(const Json& j) {
  const Json& arr = j.is_object() ? field(j, "spinor") : j;
  if (!arr.is_array() || arr.size() != 4) bad("spinor must be an array of 4 [re, im] pairs");
  Spinor<T> psi;
  for (std::size_t i = 0; i < 4; ++i) psi[i] = scalar_from_json<T>(arr[i]);
  return psi;
}

template <class T>
Json matrix_to_json(const Matrix4<T>& m) {
  Json arr = Json::array();
  for (const auto& z : m.data()) arr.push_back(scalar_to_json(z));
  return arr;
}

template <class T>
Matrix4<T> matrix_from_json(const Json& j) {
  if (j.is_string()) {
    auto named = named_candidate<T>(j.get<std::string>());
    if (!named) bad("unknown matrix name \"" + j.get<std::string>() + "\"");
    return named->matrix;
  }
  if (!j.is_array()) bad("matrix must be an array, got " + kind_of(j));
  Matrix4<T> m;
  if (j.size() == 16) {
    for (std::size_t i = 0; i < 16; ++i) m.data()[i] = scalar_from_json<T>(j[i]);
    return m;
  }
  if (j.size() == 4) {
    for (std::size_t r = 0; r < 4; ++r) {
      if (!j[r].is_array() || j[r].size() != 4) bad("matrix row " + std::to_string(r) + " must have 4 entries");
      for (std::size_t c = 0; c < 4; ++c) m(r, c) = scalar_from_json<T>(j[r][c]);
    }
    return m;
  }
  bad("matrix must have 16 entries (flat) or 4 rows, got " + std::to_string(j.size()));
}

template <class T>
Json candidate_to_json(const SymmetryCandidate<T>& s) {
  Json out;
  out["matrix"] = matrix_to_json(s.matrix);
  out["antilinear"] = s.antilinear;
  if (!s.label.empty()) out["label"] = s.label;
  return out;
}

template <class T>
SymmetryCandidate<T> candidate_from_json(const Json& j) {
  if (j.is_string()) {
    auto named = named_candidate<T>(j.get<std::string>());
    if (!named) bad("unknown matrix name \"" + j.get<std::string>() + "\"");
    return *named;
  }
  SymmetryCandidate<T> s;
  if (j.is_object()) {
    const Json& m = field(j, "matrix");
    s.matrix = matrix_from_json<T>(m);
    if (m.is_string()) s.label = m.get<std::string>();
    if (j.contains("antilinear")) {
      if (!j["antilinear"].is_boolean()) bad("\"antilinear\" must be a boolean");
      s.antilinear = j["antilinear"].get<bool>();
    }
    if (j.contains("label")) {
      if (!j["label"].is_string()) bad("\"label\" must be a string");
      s.label = j["label"].get<std::string>();
    }
    return s;
  }
  s.matrix = matrix_from_json<T>(j);
  return s;
}

template <class T>
Json bilinears_to_json(const BilinearSet<T>& b) {
  Json out;
  out["sigma"] = real_to_json(b.sigma);
  out["omega"] = real_to_json(b.omega);
  out["J"] = real_array(b.J);
  out["K"] = real_array(b.K);
  Json s = Json::array();
  for (const auto& row : b.S) s.push_back(real_array(row));
  out["S"] = s;
  out["fpk_max_residual"] = real_to_json(fpk_residuals(b).max_abs);
  return out;
}

template <class T>
BilinearSet<T> bilinears_from_json(const Json& j) {
  using R = RealOf<T>;
  BilinearSet<T> b;
  b.sigma = real_from_json<R>(field(j, "sigma"));
  b.omega = real_from_json<R>(field(j, "omega"));
  b.J = real_array_from_json<R>(field(j, "J"), "J");
  b.K = real_array_from_json<R>(field(j, "K"), "K");
  const Json& s = field(j, "S");
  if (!s.is_array() || s.size() != 4) bad("S must be a 4x4 array");
  for (std::size_t r = 0; r < 4; ++r) b.S[r] = real_array_from_json<R>(s[r], "S row");
  return b;
}

Json pattern_to_json(const NullnessPattern& p) {
  Json out;
  out["J"] = p.J_null ? "zero" : "nonzero";
  out["K"] = p.K_null ? "zero" : "nonzero";
  out["S"] = p.S_null ? "zero" : "nonzero";
  out["omega"] = p.omega_null ? "zero" : "nonzero";
  out["sigma"] = p.sigma_null ? "zero" : "nonzero";
  return out;
}

template <class T>
Json classification_to_json(const Classification<T>& c) {
  Json out;
  out["class"] = c.cls.value();
  out["singular"] = c.cls.singular();
  out["pattern"] = pattern_to_json(c.pattern);
  out["bilinears"] = bilinears_to_json(c.bilinears);
  return out;
}

template <class T>
Json beta_map_to_json(const BetaMap<T>& b) {
  Json out;
  out["strict"] = b.strict;
  out["beta_scalar"] = real_to_json(b.beta_scalar);
  out["beta_pseudoscalar"] = real_to_json(b.beta_pseudoscalar);
  out["L_J"] = real_matrix_to_json(b.L_J);
  out["L_K"] = real_matrix_to_json(b.L_K);
  out["L_S"] = real_matrix_to_json(b.L_S);
  return out;
}

template <class T>
BetaMap<T> beta_map_from_json(const Json& j) {
  using R = RealOf<T>;
  BetaMap<T> b;
  const Json& strict = field(j, "strict");
  if (!strict.is_boolean()) bad("\"strict\" must be a boolean");
  b.strict = strict.get<bool>();
  b.beta_scalar = real_from_json<R>(field(j, "beta_scalar"));
  b.beta_pseudoscalar = real_from_json<R>(field(j, "beta_pseudoscalar"));
  b.L_J = real_matrix_from_json<R, 4>(field(j, "L_J"), "L_J");
  b.L_K = real_matrix_from_json<R, 4>(field(j, "L_K"), "L_K");
  b.L_S = real_matrix_from_json<R, 6>(field(j, "L_S"), "L_S");
  return b;
}

Json preservation_to_json(const ClassPreservationReport& r) {
  Json out;
  out["class"] = r.target_class;
  out["samples"] = r.samples;
  out["preserved"] = r.preserved;
  out["changed"] = r.changed;
  out["zero_current"] = r.zero_current;
  out["fpk_violations"] = r.fpk_violations;
  out["invertible"] = r.invertible;
  out["pass"] = r.pass;
  Json ce = Json::array();
  for (const auto& c : r.counterexamples) {
    Json e;
    e["input"] = Json::parse(c.input, nullptr, false);
    if (e["input"].is_discarded()) e["input"] = c.input;
    e["result"] = c.result;
    ce.push_back(e);
  }
  out["counterexamples"] = ce;
  return out;
}

template <class T>
Json lemma_to_json(const LemmaReport<T>& r) {
  Json out;
  out["alpha"] = real_to_json(r.alpha);
  out["beta"] = real_to_json(r.beta);
  out["holds"] = r.holds;
  out["det_lhs"] = scalar_to_json(r.det_lhs);
  out["det_rhs"] = scalar_to_json(r.det_rhs);
  out["determinant_route_holds"] = r.determinant_route_holds;
  out["identity_residual"] = real_to_json(r.identity_residual);
  return out;
}

template <class T>
Json group_report_to_json(const GroupCheckReport<T>& r) {
  Json out;
  out["order"] = r.elements.size();
  out["max_word_length"] = r.max_word_length;
  out["word_length_reached"] = r.word_length_reached;
  out["closed"] = r.closed;
  out["cayley_closed"] = r.cayley_closed;
  out["inverses_present"] = r.inverses_present;
  out["associative"] = r.associative;
  out["is_group"] = r.is_group();
  Json els = Json::array();
  for (const auto& e : r.elements) els.push_back(candidate_to_json(e));
  out["elements"] = els;
  return out;
}

Json four_vector_to_json(const FourVector& v) { return Json::array({v[0], v[1], v[2], v[3]}); }

#define SF_INSTANTIATE(T)                                                     \
  template T scalar_from_json<T>(const Json&);                                \
  template Json spinor_to_json<T>(const Spinor<T>&);                          \
  template Spinor<T> spinor_from_json<T>(const Json&);                        \
  template Json matrix_to_json<T>(const Matrix4<T>&);                         \
  template Matrix4<T> matrix_from_json<T>(const Json&);                       \
  template Json candidate_to_json<T>(const SymmetryCandidate<T>&);            \
  template SymmetryCandidate<T> candidate_from_json<T>(const Json&);          \
  template Json bilinears_to_json<T>(const BilinearSet<T>&);                  \
  template BilinearSet<T> bilinears_from_json<T>(const Json&);                \
  template Json classification_to_json<T>(const Classification<T>&);          \
  template Json beta_map_to_json<T>(const BetaMap<T>&);                       \
  template BetaMap<T> beta_map_from_json<T>(const Json&);                     \
  template Json lemma_to_json<T>(const LemmaReport<T>&);                      \
  template Json group_report_to_json<T>(const GroupCheckReport<T>&);

SF_INSTANTIATE(GaussianRational)
SF_INSTANTIATE(Complex)
#undef SF_INSTANTIATE

}  // namespace spinor_forge
