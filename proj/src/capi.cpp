#include "spinor_forge.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <random>
#include <string>
#include <variant>

#include "spinor_forge/service.hpp"

using namespace spinor_forge;

struct sf_spinor {
  std::variant<Spinor<GaussianRational>, Spinor<Complex>> v;
};

struct sf_matrix {
  std::variant<SymmetryCandidate<GaussianRational>, SymmetryCandidate<Complex>> v;
};

namespace {

thread_local std::string last_error;

sf_status fail(sf_status s, const std::string& msg) {
  last_error = msg;
  return s;
}

template <class F>
sf_status guard(F&& f) {
  try {
    last_error.clear();
    f();
    return SF_OK;
  } catch (const Error& e) {
    return fail(static_cast<sf_status>(e.code()), e.what());
  } catch (const SingularMatrixError& e) {
    return fail(SF_ERR_SINGULAR_MATRIX, e.what());
  } catch (const std::bad_alloc&) {
    return fail(SF_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(SF_ERR_INTERNAL, e.what());
  }
}

char* dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void need(const void* p, const char* what) {
  if (!p) throw Error(ErrorCode::invalid_argument, std::string(what) + " must not be NULL");
}

Mode to_mode(sf_mode m) {
  if (m != SF_MODE_EXACT && m != SF_MODE_FLOAT) throw Error(ErrorCode::invalid_argument, "unknown mode");
  return m == SF_MODE_EXACT ? Mode::exact : Mode::floating;
}

std::string dump(const Json& j) { return j.dump(); }

template <class X, class Y>
void same_mode(const X& x, const Y& y) {
  if (x.v.index() != y.v.index()) throw Error(ErrorCode::invalid_argument, "operands use different modes");
}

}  // namespace

extern "C" {

const char* sf_version(void) { return "0.1.0"; }
const char* sf_last_error(void) { return last_error.c_str(); }
void sf_string_free(char* s) { std::free(s); }

const char* sf_status_name(sf_status status) {
  switch (status) {
    case SF_OK: return "ok";
    case SF_ERR_INVALID_ARGUMENT: return "invalid_argument";
    case SF_ERR_PARSE: return "parse_error";
    case SF_ERR_ZERO_CURRENT: return "zero_current";
    case SF_ERR_UNKNOWN_PATTERN: return "unknown_pattern";
    case SF_ERR_SAMPLER_EXHAUSTED: return "sampler_exhausted";
    case SF_ERR_NOT_A_SYMMETRY: return "not_a_symmetry";
    case SF_ERR_SINGULAR_MATRIX: return "singular_matrix";
    case SF_ERR_PRECONDITION: return "precondition";
    case SF_ERR_BOTH_BLOCKS_ZERO: return "both_blocks_zero";
    case SF_ERR_ZERO_SPINOR: return "zero_spinor";
    case SF_ERR_LINEARLY_DEPENDENT: return "linearly_dependent";
    case SF_ERR_OFF_SHELL: return "off_shell";
    case SF_ERR_MASSIVE_INPUT: return "massive_input";
    case SF_ERR_STEP_TOO_LARGE: return "step_too_large";
    case SF_ERR_CONSISTENCY: return "consistency";
    case SF_ERR_INTERNAL: return "internal";
  }
  return "unknown";
}

sf_status sf_spinor_from_json(const char* json, sf_mode mode, sf_spinor** out) {
  return guard([&] {
    need(json, "json");
    need(out, "out");
    const Json j = parse_json_text(json, "spinor");
    auto* s = new sf_spinor;
    try {
      if (to_mode(mode) == Mode::exact)
        s->v = spinor_from_json<GaussianRational>(j);
      else
        s->v = spinor_from_json<Complex>(j);
    } catch (...) {
      delete s;
      throw;
    }
    *out = s;
  });
}

sf_status sf_spinor_to_json(const sf_spinor* psi, char** out) {
  return guard([&] {
    need(psi, "spinor");
    need(out, "out");
    *out = dup(std::visit([](const auto& p) { return dump(spinor_to_json(p)); }, psi->v));
  });
}

sf_mode sf_spinor_mode(const sf_spinor* psi) { return psi && psi->v.index() == 1 ? SF_MODE_FLOAT : SF_MODE_EXACT; }
void sf_spinor_free(sf_spinor* psi) { delete psi; }

sf_status sf_spinor_random(uint64_t seed, sf_spinor** out) {
  return guard([&] {
    need(out, "out");
    std::mt19937_64 rng(seed);
    auto psi = random_rational_spinor(rng);
    while (psi.is_zero()) psi = random_rational_spinor(rng);
    *out = new sf_spinor{psi};
  });
}

sf_status sf_sample(int cls, uint64_t seed, sf_spinor** out) {
  return guard([&] {
    need(out, "out");
    *out = new sf_spinor{sample_class(LounestoClass(cls), seed)};
  });
}

sf_status sf_classify(const sf_spinor* psi, double null_tol, int* cls) {
  return guard([&] {
    need(psi, "spinor");
    need(cls, "cls");
    ClassifierConfig cfg;
    cfg.null_tol = null_tol;
    *cls = std::visit(
        [&](const auto& p) {
          using T = std::decay_t<decltype(p[0])>;
          cfg.mode = ScalarTraits<T>::mode;
          return classify(p, cfg).value();
        },
        psi->v);
  });
}

sf_status sf_classify_json(const sf_spinor* psi, double null_tol, char** out) {
  return guard([&] {
    need(psi, "spinor");
    need(out, "out");
    *out = dup(std::visit([&](const auto& p) { return dump(classify_report(p, null_tol)); }, psi->v));
  });
}

sf_status sf_bilinears_json(const sf_spinor* psi, char** out) {
  return guard([&] {
    need(psi, "spinor");
    need(out, "out");
    *out = dup(std::visit([](const auto& p) { return dump(bilinears_report(p)); }, psi->v));
  });
}

sf_status sf_fpk_json(const sf_spinor* psi, double tol, char** out, int* pass) {
  return guard([&] {
    need(psi, "spinor");
    need(out, "out");
    const Verdict v = std::visit([&](const auto& p) { return fpk_report(p, tol); }, psi->v);
    *out = dup(dump(v.report));
    if (pass) *pass = v.pass ? 1 : 0;
  });
}

sf_status sf_sample_report(int cls, uint64_t seed, int n, int csv, char** out) {
  return guard([&] {
    need(out, "out");
    *out = dup(csv ? sample_csv(cls, seed, n) : dump(sample_report(cls, seed, n)));
  });
}

sf_status sf_matrix_from_json(const char* json, sf_mode mode, sf_matrix** out) {
  return guard([&] {
    need(json, "json");
    need(out, "out");
    const Json j = parse_json_text(json, "matrix");
    auto* m = new sf_matrix;
    try {
      if (to_mode(mode) == Mode::exact)
        m->v = candidate_from_json<GaussianRational>(j);
      else
        m->v = candidate_from_json<Complex>(j);
    } catch (...) {
      delete m;
      throw;
    }
    *out = m;
  });
}

sf_status sf_matrix_named(const char* name, sf_mode mode, sf_matrix** out) {
  return guard([&] {
    need(name, "name");
    need(out, "out");
    auto* m = new sf_matrix;
    bool found;
    if (to_mode(mode) == Mode::exact) {
      auto c = named_candidate<GaussianRational>(name);
      found = c.has_value();
      if (c) m->v = *c;
    } else {
      auto c = named_candidate<Complex>(name);
      found = c.has_value();
      if (c) m->v = *c;
    }
    if (!found) {
      delete m;
      throw Error(ErrorCode::invalid_argument, std::string("unknown matrix name \"") + name + "\"");
    }
    *out = m;
  });
}

sf_status sf_matrix_to_json(const sf_matrix* m, char** out) {
  return guard([&] {
    need(m, "matrix");
    need(out, "out");
    *out = dup(std::visit([](const auto& c) { return dump(candidate_to_json(c)); }, m->v));
  });
}

sf_status sf_matrix_set_antilinear(sf_matrix* m, int antilinear) {
  return guard([&] {
    need(m, "matrix");
    std::visit([&](auto& c) { c.antilinear = antilinear != 0; }, m->v);
  });
}

sf_mode sf_matrix_mode(const sf_matrix* m) { return m && m->v.index() == 1 ? SF_MODE_FLOAT : SF_MODE_EXACT; }
void sf_matrix_free(sf_matrix* m) { delete m; }

sf_status sf_beta_extract_json(const sf_matrix* m, double tol, char** out) {
  return guard([&] {
    need(m, "matrix");
    need(out, "out");
    *out = dup(std::visit([&](const auto& c) { return dump(beta_map_to_json(beta_extract(c, tol))); }, m->v));
  });
}

sf_status sf_symmetry_check_json(const sf_matrix* m, const int* classes, size_t n_classes, int n, uint64_t seed,
                                 double tol, double null_tol, char** out, int* pass) {
  return guard([&] {
    need(m, "matrix");
    need(out, "out");
    SymmetryCheckOptions opts;
    if (classes && n_classes > 0) opts.classes.assign(classes, classes + n_classes);
    opts.n = n;
    opts.seed = seed;
    opts.tol = tol;
    opts.null_tol = null_tol;
    const Verdict v = std::visit([&](const auto& c) { return symmetry_report(c, opts); }, m->v);
    *out = dup(dump(v.report));
    if (pass) *pass = v.pass ? 1 : 0;
  });
}

sf_status sf_compose(const sf_matrix* x, const sf_matrix* y, sf_matrix** out) {
  return guard([&] {
    need(x, "x");
    need(y, "y");
    need(out, "out");
    same_mode(*x, *y);
    auto* r = new sf_matrix;
    std::visit(
        [&](const auto& a) {
          using C = std::decay_t<decltype(a)>;
          r->v = compose(a, std::get<C>(y->v));
        },
        x->v);
    *out = r;
  });
}

sf_status sf_compose_json(const sf_matrix* x, const sf_matrix* y, double tol, char** out, int* pass) {
  return guard([&] {
    need(x, "x");
    need(y, "y");
    need(out, "out");
    same_mode(*x, *y);
    const Verdict v = std::visit(
        [&](const auto& a) {
          using C = std::decay_t<decltype(a)>;
          return compose_report(a, std::get<C>(y->v), tol);
        },
        x->v);
    *out = dup(dump(v.report));
    if (pass) *pass = v.pass ? 1 : 0;
  });
}

sf_status sf_inverse(const sf_matrix* m, sf_matrix** out) {
  return guard([&] {
    need(m, "matrix");
    need(out, "out");
    auto* r = new sf_matrix;
    try {
      std::visit([&](const auto& c) { r->v = inverse(c); }, m->v);
    } catch (...) {
      delete r;
      throw;
    }
    *out = r;
  });
}

sf_status sf_inverse_json(const sf_matrix* m, double tol, char** out, int* pass) {
  return guard([&] {
    need(m, "matrix");
    need(out, "out");
    const Verdict v = std::visit([&](const auto& c) { return inverse_report(c, tol); }, m->v);
    *out = dup(dump(v.report));
    if (pass) *pass = v.pass ? 1 : 0;
  });
}

sf_status sf_group_check_json(const sf_matrix* const* generators, size_t n, int max_word, double tol, char** out,
                              int* pass) {
  return guard([&] {
    need(generators, "generators");
    need(out, "out");
    if (n == 0) throw Error(ErrorCode::invalid_argument, "at least one generator is required");
    for (size_t i = 0; i < n; ++i) {
      need(generators[i], "generator");
      same_mode(*generators[0], *generators[i]);
    }
    const Verdict v = std::visit(
        [&](const auto& first) {
          using C = std::decay_t<decltype(first)>;
          std::vector<C> gens;
          for (size_t i = 0; i < n; ++i) gens.push_back(std::get<C>(generators[i]->v));
          return group_report(gens, max_word, tol);
        },
        generators[0]->v);
    *out = dup(dump(v.report));
    if (pass) *pass = v.pass ? 1 : 0;
  });
}

namespace {

sf_status run_dynamics(DynamicsOutput (*fn)(const Json&), const char* request, char** summary, char** csv, char** svg,
                       int* pass) {
  return guard([&] {
    need(summary, "summary");
    const Json req = request && *request ? parse_json_text(request, "request") : Json::object();
    const DynamicsOutput o = fn(req);
    std::string s = dump(o.summary);
    std::string c = o.csv;
    *summary = dup(s);
    if (csv) *csv = dup(c);
    if (svg) *svg = o.svg.empty() ? nullptr : dup(o.svg);
    if (pass) *pass = o.pass ? 1 : 0;
  });
}

}  // namespace

sf_status sf_evolve(const char* request, char** summary, char** csv, char** svg, int* pass) {
  return run_dynamics(&evolve_request, request, summary, csv, svg, pass);
}

sf_status sf_exotic_evolve(const char* request, char** summary, char** csv, char** svg, int* pass) {
  return run_dynamics(&exotic_evolve_request, request, summary, csv, svg, pass);
}

sf_status sf_liouville_check(const double momentum[4], double mass, uint64_t phi_seed, int n_points, double tol,
                             double* max_divergence, int* pass) {
  return guard([&] {
    need(momentum, "momentum");
    const AvatarMap phi = phi_seed == 0 ? AvatarMap::identity() : AvatarMap::random(phi_seed);
    LiouvilleOptions lo;
    lo.n_points = n_points;
    lo.tol = tol;
    const auto rep = liouville_check({momentum[0], momentum[1], momentum[2], momentum[3]}, mass, phi, lo);
    if (max_divergence) *max_divergence = rep.max_divergence;
    if (pass) *pass = rep.pass ? 1 : 0;
  });
}

}  // extern "C"
