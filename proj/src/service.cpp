#include "spinor_forge/service.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>

namespace spinor_forge {
namespace {

std::string mode_name(Mode m) { return m == Mode::exact ? "exact" : "float"; }

template <class T>
std::string mode_of() {
  return mode_name(ScalarTraits<T>::mode);
}

std::string fmt(double v, const char* spec = "%.17g") {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

// Sector transforms equal (exactly in exact mode, within tol otherwise).
template <class T>
bool same_sectors(const BetaMap<T>& x, const BetaMap<T>& y, double tol) {
  if constexpr (ScalarTraits<T>::exact) {
    (void)tol;
    return x.beta_scalar == y.beta_scalar && x.beta_pseudoscalar == y.beta_pseudoscalar && x.L_J == y.L_J &&
           x.L_K == y.L_K && x.L_S == y.L_S;
  } else {
    return beta_map_distance(x, y) <= tol;
  }
}

template <class T>
std::optional<BetaMap<T>> try_beta(const SymmetryCandidate<T>& s, double tol, Json& out) {
  try {
    auto b = beta_extract(s, tol);
    out = beta_map_to_json(b);
    return b;
  } catch (const NotASymmetryError& e) {
    Json leaks = Json::array();
    for (const auto& l : e.leaks()) {
      Json one;
      one["basis"] = basis_label(l.basis_index);
      one["coefficient"] = l.value;
      leaks.push_back(one);
    }
    out = Json::object();
    out["error"] = e.what();
    out["source"] = basis_label(e.source_index());
    out["leaks"] = leaks;
    return std::nullopt;
  }
}

double number_or(const Json& req, const char* key, double fallback) {
  if (!req.contains(key)) return fallback;
  const Json& v = req.at(key);
  if (!v.is_number()) throw Error(ErrorCode::parse_error, std::string("\"") + key + "\" must be a number");
  return v.get<double>();
}

template <std::size_t N>
std::array<double, N> array_or(const Json& req, const char* key, std::array<double, N> fallback) {
  if (!req.contains(key)) return fallback;
  const Json& v = req.at(key);
  if (!v.is_array() || v.size() != N)
    throw Error(ErrorCode::parse_error, std::string("\"") + key + "\" must be an array of " + std::to_string(N) + " numbers");
  std::array<double, N> out;
  for (std::size_t i = 0; i < N; ++i) {
    if (!v[i].is_number()) throw Error(ErrorCode::parse_error, std::string("\"") + key + "\" entries must be numbers");
    out[i] = v[i].get<double>();
  }
  return out;
}

std::uint64_t seed_or(const Json& req, const char* key, std::uint64_t fallback) {
  if (!req.contains(key)) return fallback;
  const Json& v = req.at(key);
  if (!v.is_number_integer() || v.get<long long>() < 0)
    throw Error(ErrorCode::parse_error, std::string("\"") + key + "\" must be a non-negative integer");
  return v.get<std::uint64_t>();
}

EvolveConfig config_from(const Json& req) {
  if (!req.is_object()) throw Error(ErrorCode::parse_error, "dynamics request must be a JSON object");
  EvolveConfig cfg;
  cfg.momentum = array_or<4>(req, "momentum", cfg.momentum);
  cfg.mass = number_or(req, "mass", 0.0);
  cfg.spin = static_cast<int>(number_or(req, "spin", 0));
  cfg.x0 = array_or<3>(req, "x0", cfg.x0);
  cfg.rho0 = number_or(req, "rho0", 1.0);
  cfg.integrator.t_start = number_or(req, "t_start", 0.0);
  cfg.integrator.t_end = number_or(req, "t_end", 1.0);
  cfg.integrator.dt = number_or(req, "dt", 1e-3);
  cfg.integrator.error_budget = number_or(req, "error_budget", 1e-8);
  if (cfg.mass < 0) throw Error(ErrorCode::invalid_argument, "mass must be >= 0");
  return cfg;
}

bool plot_requested(const Json& req) {
  if (!req.contains("plot")) return false;
  if (!req["plot"].is_boolean()) throw Error(ErrorCode::parse_error, "\"plot\" must be a boolean");
  return req["plot"].get<bool>();
}

Json trajectory_summary(const Trajectory& t) {
  Json out;
  out["samples"] = t.samples.size();
  out["t_start"] = t.samples.front().t;
  out["t_end"] = t.samples.back().t;
  out["rho_start"] = t.samples.front().rho;
  out["rho_end"] = t.samples.back().rho;
  out["max_step_error"] = t.max_step_error;
  return out;
}

Json phi_summary(const AvatarMap& phi) {
  Json out;
  out["condition_number"] = phi.condition_number();
  out["matrix"] = matrix_to_json(phi.matrix());
  return out;
}

}  // namespace

template <class T>
Json classify_report(const Spinor<T>& psi, double null_tol) {
  ClassifierConfig cfg;
  cfg.mode = ScalarTraits<T>::mode;
  cfg.null_tol = null_tol;
  Json out;
  const auto c = classify_detailed(psi, cfg);
  out["class"] = c.cls.value();
  out["mode"] = mode_of<T>();
  if (!ScalarTraits<T>::exact) out["null_tol"] = null_tol;
  out["input"] = spinor_to_json(psi)["spinor"];
  const Json body = classification_to_json(c);
  out["singular"] = body["singular"];
  out["pattern"] = body["pattern"];
  out["bilinears"] = body["bilinears"];
  return out;
}

template <class T>
Json bilinears_report(const Spinor<T>& psi) {
  Json out = bilinears_to_json(bilinears(psi));
  out["mode"] = mode_of<T>();
  return out;
}

template <class T>
Verdict fpk_report(const Spinor<T>& psi, double tol) {
  const auto b = bilinears(psi);
  const auto r = fpk_residuals(b);
  Verdict v;
  v.report["mode"] = mode_of<T>();
  v.report["input"] = spinor_to_json(psi)["spinor"];
  Json r1 = Json::array();
  for (const auto& row : r.r1) {
    Json jr = Json::array();
    for (const auto& x : row) jr.push_back(real_to_json(x));
    r1.push_back(jr);
  }
  v.report["r1"] = r1;
  v.report["r2a"] = real_to_json(r.r2a);
  v.report["r2b"] = real_to_json(r.r2b);
  v.report["r3"] = real_to_json(r.r3);
  v.report["max_residual"] = real_to_json(r.max_abs);
  if constexpr (ScalarTraits<T>::exact) {
    (void)tol;
    v.pass = sgn(r.max_abs) == 0;
  } else {
    const double bound = tol * std::max(1.0, b.J[0]);
    v.report["tolerance"] = bound;
    v.pass = r.max_abs <= bound;
  }
  v.report["pass"] = v.pass;
  return v;
}

Json sample_report(int cls, std::uint64_t seed, int n) {
  if (n < 1) throw Error(ErrorCode::invalid_argument, "--n must be >= 1");
  const LounestoClass c(cls);
  Json out;
  out["class"] = cls;
  out["seed"] = seed;
  Json arr = Json::array();
  for (int k = 0; k < n; ++k) arr.push_back(spinor_to_json(sample_class(c, seed + static_cast<std::uint64_t>(k)))["spinor"]);
  out["spinors"] = arr;
  return out;
}

std::string sample_csv(int cls, std::uint64_t seed, int n) {
  if (n < 1) throw Error(ErrorCode::invalid_argument, "--n must be >= 1");
  const LounestoClass c(cls);
  std::string out = "index,re0,im0,re1,im1,re2,im2,re3,im3\n";
  for (int k = 0; k < n; ++k) {
    const auto psi = sample_class(c, seed + static_cast<std::uint64_t>(k));
    out += std::to_string(k);
    for (const auto& z : psi.c) out += "," + rational_to_string(z.real()) + "," + rational_to_string(z.imag());
    out += "\n";
  }
  return out;
}

template <class T>
Verdict symmetry_report(const SymmetryCandidate<T>& s, const SymmetryCheckOptions& opts) {
  Verdict v;
  Json& r = v.report;
  r["mode"] = mode_of<T>();
  r["candidate"] = candidate_to_json(s);
  Json beta;
  const auto bm = try_beta(s, opts.tol, beta);
  r["symmetry"] = bm.has_value();
  r["beta_map"] = beta;
  bool lemma_ok = true;
  if (bm) {
    try {
      const auto lemma = verify_rescaling_lemma(s, opts.tol);
      r["lemma"] = lemma_to_json(lemma);
      lemma_ok = lemma.holds && lemma.determinant_route_holds;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::precondition) throw;
      Json skipped;
      skipped["skipped"] = e.what();
      r["lemma"] = skipped;
    }
  } else {
    r["lemma"] = nullptr;
  }
  Json checks = Json::array();
  bool classes_ok = true;
  for (int cls : opts.classes) {
    const auto rep = preserves_class(s, LounestoClass(cls), opts.n, opts.seed, opts.null_tol);
    classes_ok = classes_ok && rep.pass;
    checks.push_back(preservation_to_json(rep));
  }
  r["class_checks"] = checks;
  v.pass = bm.has_value() && lemma_ok && classes_ok;
  r["pass"] = v.pass;
  return v;
}

template <class T>
Verdict compose_report(const SymmetryCandidate<T>& x, const SymmetryCandidate<T>& y, double tol) {
  Verdict v;
  const auto z = compose(x, y);
  Json bx;
  Json by;
  Json bz;
  const auto mx = try_beta(x, tol, bx);
  const auto my = try_beta(y, tol, by);
  const auto mz = try_beta(z, tol, bz);
  v.report["mode"] = mode_of<T>();
  v.report["result"] = candidate_to_json(z);
  v.report["beta_map"] = bz;
  bool mult = false;
  if (mx && my && mz) {
    mult = same_sectors(*mz, beta_product(*mx, *my), tol);
    v.report["multiplicative"] = mult;
  } else {
    v.report["multiplicative"] = nullptr;
  }
  v.pass = mult;
  v.report["pass"] = v.pass;
  return v;
}

template <class T>
Verdict inverse_report(const SymmetryCandidate<T>& s, double tol) {
  Verdict v;
  SymmetryCandidate<T> inv;
  try {
    inv = inverse(s);
  } catch (const SingularMatrixError&) {
    throw Error(ErrorCode::singular_matrix, "candidate is singular and has no inverse");
  }
  const auto id = compose(s, inv);
  bool identity_ok;
  if constexpr (ScalarTraits<T>::exact) {
    (void)tol;
    identity_ok = !id.antilinear && id.matrix == Matrix4<T>::identity();
  } else {
    identity_ok = !id.antilinear && max_abs(Matrix4<T>(id.matrix - Matrix4<T>::identity())) <= tol;
  }
  Json bs;
  Json bi;
  const auto ms = try_beta(s, tol, bs);
  const auto mi = try_beta(inv, tol, bi);
  v.report["mode"] = mode_of<T>();
  v.report["result"] = candidate_to_json(inv);
  v.report["beta_map"] = bi;
  v.report["identity_check"] = identity_ok;
  bool recip = false;
  if (ms && mi) {
    recip = same_sectors(*mi, beta_inverse(*ms), tol);
    v.report["reciprocal"] = recip;
  } else {
    v.report["reciprocal"] = nullptr;
  }
  v.pass = identity_ok && (ms ? recip : true);
  v.report["pass"] = v.pass;
  return v;
}

template <class T>
Verdict group_report(const std::vector<SymmetryCandidate<T>>& generators, int max_word, double tol) {
  Verdict v;
  const auto rep = group_check(generators, max_word, tol);
  v.report = group_report_to_json(rep);
  v.report["mode"] = mode_of<T>();
  v.pass = rep.is_group();
  return v;
}

AvatarMap avatar_from_json(const Json& j) {
  if (j.is_null()) return AvatarMap::identity();
  if (j.is_string()) {
    if (j.get<std::string>() == "identity") return AvatarMap::identity();
    throw Error(ErrorCode::parse_error, "phi must be \"identity\", {\"random\": seed}, {\"P\":…,\"Q\":…} or a matrix");
  }
  if (j.is_object() && j.contains("random")) return AvatarMap::random(seed_or(j, "random", 0));
  if (j.is_object() && j.contains("P")) {
    auto block = [&](const char* key) {
      if (!j.contains(key) || !j[key].is_array() || j[key].size() != 4)
        throw Error(ErrorCode::parse_error, std::string("phi block ") + key + " must be 4 [re, im] pairs");
      std::array<Complex, 4> b;
      for (std::size_t i = 0; i < 4; ++i) b[i] = scalar_from_json<Complex>(j[key][i]);
      return b;
    };
    return AvatarMap::from_blocks(block("P"), block("Q"));
  }
  return AvatarMap::from_matrix(matrix_from_json<Complex>(j.is_object() && j.contains("matrix") ? j["matrix"] : j));
}

DynamicsOutput evolve_request(const Json& req) {
  const EvolveConfig cfg = config_from(req);
  const double tol = number_or(req, "tol", 1e-6);
  const AvatarMap phi = avatar_from_json(req.contains("phi") ? req["phi"] : Json());
  LiouvilleOptions lo;
  lo.n_points = static_cast<int>(number_or(req, "points", 100));
  lo.tol = tol;
  lo.seed = seed_or(req, "seed", 1);

  DynamicsOutput out;
  Json& s = out.summary;
  s["command"] = "evolve";
  s["momentum"] = four_vector_to_json(cfg.momentum);
  s["mass"] = cfg.mass;
  s["massless"] = cfg.mass == 0.0;
  s["phi"] = phi_summary(phi);

  EvolveReport ev = evolve(cfg, phi);
  bool pass = true;
  if (cfg.mass == 0.0) {
    const auto lv = liouville_check(cfg.momentum, 0.0, phi, lo);
    Json l;
    l["points"] = lo.n_points;
    l["max_divergence"] = lv.max_divergence;
    l["tol"] = tol;
    l["pass"] = lv.pass;
    s["liouville"] = l;
    const bool traj_ok = ev.max_abs_divergence <= tol && ev.max_rho_relative_deviation <= tol;
    pass = lv.pass && traj_ok;
    s["asserted"] = true;
  } else {
    const auto md = massive_divergence_report(cfg.momentum, cfg.mass, phi, lo);
    Json m;
    m["points"] = lo.n_points;
    m["max_divergence"] = md.max_divergence;
    m["asserted"] = md.asserted;
    s["massive_divergence"] = m;
    s["asserted"] = false;
  }
  Json tr = trajectory_summary(ev.trajectory);
  tr["max_abs_divergence"] = ev.max_abs_divergence;
  tr["max_rho_relative_deviation"] = ev.max_rho_relative_deviation;
  s["trajectory"] = tr;
  s["pass"] = cfg.mass == 0.0 ? Json(pass) : Json(nullptr);
  out.pass = pass;

  std::vector<double> ts;
  std::vector<double> rhos;
  out.csv = "t,rho,ln_rho,divergence\n";
  for (const auto& p : ev.trajectory.samples) {
    out.csv += fmt(p.t) + "," + fmt(p.rho) + "," + fmt(std::log(p.rho)) + "," + fmt(p.divergence) + "\n";
    ts.push_back(p.t);
    rhos.push_back(p.rho);
  }
  if (plot_requested(req)) out.svg = density_svg(ts, rhos, "rho(t), evolve");
  return out;
}

DynamicsOutput exotic_evolve_request(const Json& req) {
  const EvolveConfig cfg = config_from(req);
  const double tol = number_or(req, "tol", 1e-4);
  const double kappa = number_or(req, "kappa", 0.3);
  const Position k = array_or<3>(req, "k", Position{0, 0, 0});
  const AvatarMap phi = avatar_from_json(req.contains("phi") ? req["phi"] : Json());
  const ExoticTheta theta = ExoticTheta::linear(kappa, k);

  const auto rep = exotic_density_check(theta, cfg.rho0, cfg, phi);
  DynamicsOutput out;
  Json& s = out.summary;
  s["command"] = "exotic-evolve";
  s["momentum"] = four_vector_to_json(cfg.momentum);
  s["mass"] = cfg.mass;
  s["phi"] = phi_summary(phi);
  Json th;
  th["kappa"] = kappa;
  th["k"] = Json::array({k[0], k[1], k[2]});
  s["theta"] = th;
  s["expected_rate"] = kappa;
  s["raw_rate_mean"] = rep.raw_rate_mean;
  s["normalized_rate_mean"] = rep.normalized_rate_mean;
  s["max_rate_deviation"] = rep.max_rate_deviation;
  s["max_density_deviation"] = rep.max_density_deviation;
  s["tol"] = tol;
  s["trajectory"] = trajectory_summary(rep.trajectory);
  out.pass = rep.max_rate_deviation <= tol && rep.max_density_deviation <= tol;
  s["pass"] = out.pass;

  const auto& samples = rep.trajectory.samples;
  const double raw0 = samples.front().rho;
  std::vector<double> ts;
  std::vector<double> rhos;
  out.csv = "t,rho,ln_rho,divergence,rho_raw\n";
  for (const auto& p : samples) {
    const double rho = raw0 * std::pow(p.rho / raw0, 1.0 / 8.0);
    out.csv += fmt(p.t) + "," + fmt(rho) + "," + fmt(std::log(rho)) + "," + fmt(p.divergence) + "," + fmt(p.rho) + "\n";
    ts.push_back(p.t);
    rhos.push_back(rho);
  }
  if (plot_requested(req)) out.svg = density_svg(ts, rhos, "rho(t), exotic-evolve");
  return out;
}

std::string density_svg(const std::vector<double>& t, const std::vector<double>& rho, const std::string& title) {
  const double w = 640;
  const double h = 400;
  const double ml = 70;
  const double mr = 20;
  const double mt = 30;
  const double mb = 40;
  double t0 = t.empty() ? 0 : t.front();
  double t1 = t.empty() ? 1 : t.back();
  if (t1 <= t0) t1 = t0 + 1;
  double r0 = rho.empty() ? 0 : *std::min_element(rho.begin(), rho.end());
  double r1 = rho.empty() ? 1 : *std::max_element(rho.begin(), rho.end());
  if (r1 - r0 < 1e-12 * std::max(1.0, std::abs(r1))) {
    const double pad = std::max(1e-6, 1e-3 * std::abs(r1));
    r0 -= pad;
    r1 += pad;
  }
  auto x = [&](double v) { return ml + (v - t0) / (t1 - t0) * (w - ml - mr); };
  auto y = [&](double v) { return h - mb - (v - r0) / (r1 - r0) * (h - mt - mb); };

  std::string out = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"400\" viewBox=\"0 0 640 400\">\n";
  out += "<rect width=\"640\" height=\"400\" fill=\"white\"/>\n";
  out += "<text x=\"320\" y=\"20\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"14\">" + title + "</text>\n";
  out += "<line x1=\"" + fmt(ml, "%.2f") + "\" y1=\"" + fmt(h - mb, "%.2f") + "\" x2=\"" + fmt(w - mr, "%.2f") + "\" y2=\"" +
         fmt(h - mb, "%.2f") + "\" stroke=\"black\"/>\n";
  out += "<line x1=\"" + fmt(ml, "%.2f") + "\" y1=\"" + fmt(mt, "%.2f") + "\" x2=\"" + fmt(ml, "%.2f") + "\" y2=\"" +
         fmt(h - mb, "%.2f") + "\" stroke=\"black\"/>\n";
  auto label = [&](double px, double py, const std::string& text, const char* anchor) {
    out += "<text x=\"" + fmt(px, "%.2f") + "\" y=\"" + fmt(py, "%.2f") + "\" text-anchor=\"" + anchor +
           "\" font-family=\"sans-serif\" font-size=\"11\">" + text + "</text>\n";
  };
  label(ml, h - mb + 16, fmt(t0, "%.4g"), "middle");
  label(w - mr, h - mb + 16, fmt(t1, "%.4g"), "middle");
  label(ml - 6, h - mb, fmt(r0, "%.8g"), "end");
  label(ml - 6, mt + 4, fmt(r1, "%.8g"), "end");
  label((ml + w - mr) / 2, h - 6, "t", "middle");
  out += "<polyline fill=\"none\" stroke=\"steelblue\" stroke-width=\"1.5\" points=\"";
  for (std::size_t i = 0; i < t.size() && i < rho.size(); ++i)
    out += (i ? " " : "") + fmt(x(t[i]), "%.2f") + "," + fmt(y(rho[i]), "%.2f");
  out += "\"/>\n</svg>\n";
  return out;
}

#define SF_INSTANTIATE(T)                                                                                   \
  template Json classify_report<T>(const Spinor<T>&, double);                                               \
  template Json bilinears_report<T>(const Spinor<T>&);                                                      \
  template Verdict fpk_report<T>(const Spinor<T>&, double);                                                 \
  template Verdict symmetry_report<T>(const SymmetryCandidate<T>&, const SymmetryCheckOptions&);            \
  template Verdict compose_report<T>(const SymmetryCandidate<T>&, const SymmetryCandidate<T>&, double);     \
  template Verdict inverse_report<T>(const SymmetryCandidate<T>&, double);                                  \
  template Verdict group_report<T>(const std::vector<SymmetryCandidate<T>>&, int, double);

SF_INSTANTIATE(GaussianRational)
SF_INSTANTIATE(Complex)
#undef SF_INSTANTIATE

}  // namespace spinor_forge
