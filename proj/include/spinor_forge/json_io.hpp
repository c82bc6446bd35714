#pragma once

// JSON encodings.
//
// Complex numbers are [re, im] pairs. In exact mode each part is a "p/q"
// string; in float mode it is a JSON number. On input exact mode also takes
// integers and decimal numbers, and float mode also takes "p/q" strings.
//   spinor:  {"spinor": [[re,im] x4]}   (a bare 4-element array is accepted)
//   matrix:  {"matrix": [[re,im] x16], "antilinear": bool}, row-major; a
//            nested 4x4 array, a bare array or a name like "gamma5" is accepted

#include <string>

#include <json.hpp>

#include "spinor_forge/bilinear.hpp"
#include "spinor_forge/dynamics.hpp"
#include "spinor_forge/lounesto.hpp"
#include "spinor_forge/symmetry.hpp"

namespace spinor_forge {

using Json = nlohmann::ordered_json;

/// Parses JSON text; throws Error(parse_error) naming line and column.
Json parse_json_text(const std::string& text, const std::string& what = "input");

Json real_to_json(double v);
Json real_to_json(const Rational& v);
Json scalar_to_json(const Complex& z);
Json scalar_to_json(const GaussianRational& z);

template <class R>
R real_from_json(const Json& j);
template <class T>
T scalar_from_json(const Json& j);

template <class T>
Json spinor_to_json(const Spinor<T>& psi);
template <class T>
Spinor<T> spinor_from_json(const Json& j);

/// Flat row-major array of 16 pairs.
template <class T>
Json matrix_to_json(const Matrix4<T>& m);
template <class T>
Matrix4<T> matrix_from_json(const Json& j);

template <class T>
Json candidate_to_json(const SymmetryCandidate<T>& s);
template <class T>
SymmetryCandidate<T> candidate_from_json(const Json& j);

template <class T>
Json bilinears_to_json(const BilinearSet<T>& b);
template <class T>
BilinearSet<T> bilinears_from_json(const Json& j);

Json pattern_to_json(const NullnessPattern& p);

template <class T>
Json classification_to_json(const Classification<T>& c);

template <class T>
Json beta_map_to_json(const BetaMap<T>& b);
template <class T>
BetaMap<T> beta_map_from_json(const Json& j);

Json preservation_to_json(const ClassPreservationReport& r);

template <class T>
Json lemma_to_json(const LemmaReport<T>& r);

template <class T>
Json group_report_to_json(const GroupCheckReport<T>& r);

Json four_vector_to_json(const FourVector& v);

}  // namespace spinor_forge
