// spinor-forge command line front end. Talks to the library only through
// the C API in spinor_forge.h.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "spinor_forge.h"

namespace {

using json = nlohmann::ordered_json;

constexpr int kOk = 0;
constexpr int kUsage = 1;
constexpr int kFailed = 2;

struct Failure {
  int code;
  std::string message;
};

// Owning wrappers for the C handles and strings.
struct CString {
  char* p = nullptr;
  ~CString() { sf_string_free(p); }
  std::string str() const { return p ? p : ""; }
};
struct Spinor {
  sf_spinor* p = nullptr;
  ~Spinor() { sf_spinor_free(p); }
};
struct Matrix {
  sf_matrix* p = nullptr;
  Matrix() = default;
  Matrix(Matrix&& o) noexcept : p(o.p) { o.p = nullptr; }
  Matrix(const Matrix&) = delete;
  ~Matrix() { sf_matrix_free(p); }
};

int exit_code_for(sf_status s) {
  switch (s) {
    case SF_ERR_NOT_A_SYMMETRY:
    case SF_ERR_SINGULAR_MATRIX:
    case SF_ERR_UNKNOWN_PATTERN:
    case SF_ERR_PRECONDITION:
    case SF_ERR_STEP_TOO_LARGE:
    case SF_ERR_CONSISTENCY:
      return kFailed;
    default:
      return kUsage;
  }
}

void check(sf_status s) {
  if (s != SF_OK) throw Failure{exit_code_for(s), std::string(sf_status_name(s)) + ": " + sf_last_error()};
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Failure{kUsage, "cannot read file '" + path + "'"};
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bool looks_inline(const std::string& v) {
  const auto pos = v.find_first_not_of(" \t\r\n");
  return pos != std::string::npos && (v[pos] == '[' || v[pos] == '{' || v[pos] == '"');
}

bool is_matrix_name(const std::string& v) {
  std::string n = v;
  if (!n.empty() && n[0] == '-') n.erase(0, 1);
  return n == "identity" || n == "I" || n == "gamma5" || n == "g5" ||
         (n.size() == 6 && n.rfind("gamma", 0) == 0 && n[5] >= '0' && n[5] <= '3');
}

sf_mode mode_from(const std::string& m) { return m == "float" ? SF_MODE_FLOAT : SF_MODE_EXACT; }

void load_spinor(const std::string& value, sf_mode mode, std::uint64_t seed, Spinor& out) {
  if (value == "random") {
    if (mode != SF_MODE_EXACT) throw Failure{kUsage, "--spinor random is only available in exact mode"};
    check(sf_spinor_random(seed, &out.p));
    return;
  }
  const std::string text = looks_inline(value) ? value : read_file(value);
  check(sf_spinor_from_json(text.c_str(), mode, &out.p));
}

Matrix load_matrix(const std::string& value, sf_mode mode, bool antilinear) {
  Matrix m;
  if (is_matrix_name(value)) {
    check(sf_matrix_named(value.c_str(), mode, &m.p));
  } else {
    const std::string text = looks_inline(value) ? value : read_file(value);
    check(sf_matrix_from_json(text.c_str(), mode, &m.p));
  }
  if (antilinear) check(sf_matrix_set_antilinear(m.p, 1));
  return m;
}

std::vector<Matrix> load_generators(const std::string& value, sf_mode mode) {
  std::vector<Matrix> out;
  if (!looks_inline(value) && value.find(',') != std::string::npos) {
    std::stringstream ss(value);
    std::string item;
    while (std::getline(ss, item, ','))
      if (!item.empty()) out.push_back(load_matrix(item, mode, false));
    return out;
  }
  if (is_matrix_name(value)) {
    out.push_back(load_matrix(value, mode, false));
    return out;
  }
  const std::string text = looks_inline(value) ? value : read_file(value);
  const json arr = json::parse(text, nullptr, false);
  if (arr.is_discarded() || !arr.is_array()) throw Failure{kUsage, "--generators must be a comma list of names or a JSON array"};
  for (const auto& g : arr) {
    Matrix m;
    check(sf_matrix_from_json(g.dump().c_str(), mode, &m.p));
    out.push_back(std::move(m));
  }
  return out;
}

std::vector<double> parse_numbers(const std::string& flag, const std::string& value, std::size_t n) {
  std::vector<double> out;
  std::stringstream ss(value);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw Failure{kUsage, flag + ": '" + item + "' is not a number"};
    }
  }
  if (out.size() != n) throw Failure{kUsage, flag + " needs " + std::to_string(n) + " comma-separated numbers"};
  return out;
}

json phi_request(const std::string& value) {
  if (value == "identity") return "identity";
  if (value.rfind("random:", 0) == 0) {
    try {
      return json{{"random", std::stoull(value.substr(7))}};
    } catch (const std::exception&) {
      throw Failure{kUsage, "--phi random:<seed> needs a non-negative integer seed"};
    }
  }
  const std::string text = looks_inline(value) ? value : read_file(value);
  const json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) throw Failure{kUsage, "--phi is not valid JSON"};
  return j;
}

class Output {
 public:
  explicit Output(std::string path) : path_(std::move(path)) {}
  void write(const std::string& text) const {
    const std::string body = text.empty() || text.back() == '\n' ? text : text + "\n";
    if (path_.empty()) {
      std::cout << body;
      return;
    }
    std::ofstream out(path_, std::ios::binary);
    if (!out) throw Failure{kUsage, "cannot write '" + path_ + "'"};
    out << body;
  }

 private:
  std::string path_;
};

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Failure{kUsage, "cannot write '" + path + "'"};
  out << text;
}

struct Options {
  std::string mode = "exact";
  std::optional<double> tol;
  double null_tol = 1e-9;
  std::uint64_t seed = 1;
  int n = 100;
  std::string out;
  std::string format = "json";
  std::string spinor;
  std::string matrix;
  std::string matrix2;
  bool antilinear = false;
  bool antilinear2 = false;
  std::vector<int> classes;
  std::string generators;
  int max_word = 4;
  std::string momentum = "1,0,0,1";
  double mass = 0.0;
  int spin = 0;
  std::string phi = "identity";
  double t_end = 1.0;
  double dt = 1e-3;
  double rho0 = 1.0;
  int points = 100;
  double kappa = 0.3;
  std::string k = "0,0,0";
  std::string plot;
  std::string csv;
};

void require_json_format(const Options& o, const std::string& cmd) {
  if (o.format != "json") throw Failure{kUsage, "--format csv is not available for " + cmd};
}

int run_dynamics(const Options& o, bool exotic) {
  json req;
  const auto p = parse_numbers("--momentum", o.momentum, 4);
  req["momentum"] = p;
  req["mass"] = o.mass;
  req["spin"] = o.spin;
  req["rho0"] = o.rho0;
  req["t_end"] = o.t_end;
  req["dt"] = o.dt;
  req["points"] = o.points;
  req["seed"] = o.seed;
  req["phi"] = phi_request(o.phi);
  if (o.tol) req["tol"] = *o.tol;
  if (exotic) {
    req["kappa"] = o.kappa;
    req["k"] = parse_numbers("--k", o.k, 3);
  }
  req["plot"] = !o.plot.empty();
  CString summary;
  CString csv;
  CString svg;
  int pass = 0;
  const std::string text = req.dump();
  check(exotic ? sf_exotic_evolve(text.c_str(), &summary.p, &csv.p, &svg.p, &pass)
               : sf_evolve(text.c_str(), &summary.p, &csv.p, &svg.p, &pass));
  if (!o.plot.empty()) write_file(o.plot, svg.str());
  if (!o.csv.empty()) write_file(o.csv, csv.str());
  Output(o.out).write(o.format == "csv" ? csv.str() : summary.str());
  return pass ? kOk : kFailed;
}

int dispatch(const std::string& cmd, const Options& o) {
  const sf_mode mode = mode_from(o.mode);
  const Output out(o.out);
  if (cmd == "classify" || cmd == "bilinears" || cmd == "fpk") {
    require_json_format(o, cmd);
    Spinor psi;
    load_spinor(o.spinor, mode, o.seed, psi);
    CString text;
    int pass = 1;
    if (cmd == "classify") check(sf_classify_json(psi.p, o.tol.value_or(o.null_tol), &text.p));
    if (cmd == "bilinears") check(sf_bilinears_json(psi.p, &text.p));
    if (cmd == "fpk") check(sf_fpk_json(psi.p, o.tol.value_or(1e-9), &text.p, &pass));
    out.write(text.str());
    return pass ? kOk : kFailed;
  }
  if (cmd == "sample") {
    if (o.classes.size() != 1) throw Failure{kUsage, "sample needs exactly one --class"};
    CString text;
    check(sf_sample_report(o.classes[0], o.seed, o.n, o.format == "csv", &text.p));
    out.write(text.str());
    return kOk;
  }
  if (cmd == "symmetry-check") {
    require_json_format(o, cmd);
    const Matrix m = load_matrix(o.matrix, mode, o.antilinear);
    CString text;
    int pass = 0;
    check(sf_symmetry_check_json(m.p, o.classes.empty() ? nullptr : o.classes.data(), o.classes.size(), o.n, o.seed,
                                 o.tol.value_or(1e-10), o.null_tol, &text.p, &pass));
    out.write(text.str());
    return pass ? kOk : kFailed;
  }
  if (cmd == "symmetry-compose") {
    require_json_format(o, cmd);
    const Matrix x = load_matrix(o.matrix, mode, o.antilinear);
    const Matrix y = load_matrix(o.matrix2, mode, o.antilinear2);
    CString text;
    int pass = 0;
    check(sf_compose_json(x.p, y.p, o.tol.value_or(1e-10), &text.p, &pass));
    out.write(text.str());
    return pass ? kOk : kFailed;
  }
  if (cmd == "symmetry-invert") {
    require_json_format(o, cmd);
    const Matrix m = load_matrix(o.matrix, mode, o.antilinear);
    CString text;
    int pass = 0;
    check(sf_inverse_json(m.p, o.tol.value_or(1e-10), &text.p, &pass));
    out.write(text.str());
    return pass ? kOk : kFailed;
  }
  if (cmd == "group-check") {
    require_json_format(o, cmd);
    const auto gens = load_generators(o.generators, mode);
    std::vector<const sf_matrix*> ptrs;
    for (const auto& g : gens) ptrs.push_back(g.p);
    CString text;
    int pass = 0;
    check(sf_group_check_json(ptrs.data(), ptrs.size(), o.max_word, o.tol.value_or(1e-10), &text.p, &pass));
    out.write(text.str());
    return pass ? kOk : kFailed;
  }
  if (cmd == "evolve") return run_dynamics(o, false);
  if (cmd == "exotic-evolve") return run_dynamics(o, true);
  throw Failure{kUsage, "unknown command " + cmd};
}

}  // namespace

int main(int argc, char** argv) {
  Options o;
  if (const char* env = std::getenv("SPINOR_FORGE_MODE")) {
    const std::string m = env;
    if (m != "exact" && m != "float") {
      std::cerr << "error: SPINOR_FORGE_MODE must be 'exact' or 'float', got '" << m << "'\n";
      return kUsage;
    }
    o.mode = m;
  }

  CLI::App app{"spinor-forge: bilinear covariants, Lounesto classes, symmetries and spinor-space dynamics"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(sf_version()));

  auto common = [&](CLI::App* c) {
    c->add_option("--mode", o.mode, "exact or float (default: $SPINOR_FORGE_MODE or exact)")
        ->check(CLI::IsMember({"exact", "float"}));
    c->add_option("--tol", o.tol, "tolerance for float-mode checks");
    c->add_option("--seed", o.seed, "RNG seed");
    c->add_option("--out", o.out, "write output to this file instead of stdout");
    c->add_option("--format", o.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  };
  auto spinor_opt = [&](CLI::App* c) {
    c->add_option("--spinor", o.spinor, "spinor JSON, a file containing it, or 'random'")->required();
  };

  auto* classify = app.add_subcommand("classify", "Lounesto class, nullness pattern and bilinears");
  common(classify);
  spinor_opt(classify);
  auto* bil = app.add_subcommand("bilinears", "bilinear covariants");
  common(bil);
  spinor_opt(bil);
  auto* fpk = app.add_subcommand("fpk", "Fierz-Pauli-Kofink residuals");
  common(fpk);
  spinor_opt(fpk);

  auto* sample = app.add_subcommand("sample", "exact spinors of a given class");
  common(sample);
  sample->add_option("--class", o.classes, "class 1..6")->required()->check(CLI::Range(1, 6));
  sample->add_option("--n", o.n, "number of spinors")->default_val(1);

  auto* sym = app.add_subcommand("symmetry-check", "sector transforms, lemma and class preservation");
  common(sym);
  sym->add_option("--matrix", o.matrix, "candidate: name, JSON or file")->required();
  sym->add_flag("--antilinear", o.antilinear, "act as psi -> S conj(psi)");
  sym->add_option("--class", o.classes, "classes to test (repeatable; default all)")->check(CLI::Range(1, 6));
  sym->add_option("--n", o.n, "samples per class");
  sym->add_option("--null-tol", o.null_tol, "float-mode nullness tolerance");

  auto* comp = app.add_subcommand("symmetry-compose", "compose two candidates (matrix after matrix2)");
  common(comp);
  comp->add_option("--matrix", o.matrix, "outer candidate")->required();
  comp->add_option("--matrix2", o.matrix2, "inner candidate, applied first")->required();
  comp->add_flag("--antilinear", o.antilinear, "outer candidate is antilinear");
  comp->add_flag("--antilinear2", o.antilinear2, "inner candidate is antilinear");

  auto* inv = app.add_subcommand("symmetry-invert", "inverse candidate and reciprocity check");
  common(inv);
  inv->add_option("--matrix", o.matrix, "candidate")->required();
  inv->add_flag("--antilinear", o.antilinear, "candidate is antilinear");

  auto* grp = app.add_subcommand("group-check", "closure, inverses and associativity of a generated set");
  common(grp);
  grp->add_option("--generators", o.generators, "comma list of names, JSON array or file")->required();
  grp->add_option("--max-word", o.max_word, "maximum word length");

  auto dyn = [&](CLI::App* c) {
    common(c);
    c->add_option("--momentum", o.momentum, "E,px,py,pz");
    c->add_option("--mass", o.mass, "mass");
    c->add_option("--spin", o.spin, "spin selector 0 or 1")->check(CLI::Range(0, 1));
    c->add_option("--phi", o.phi, "identity, random:<seed>, or a matrix / {P,Q} JSON");
    c->add_option("--t-end", o.t_end, "end time");
    c->add_option("--dt", o.dt, "time step");
    c->add_option("--rho0", o.rho0, "initial density");
    c->add_option("--points", o.points, "sample points for the divergence check");
    c->add_option("--plot", o.plot, "write an SVG chart of rho(t) to this file");
    c->add_option("--csv", o.csv, "also write the CSV trajectory to this file");
  };
  auto* evo = app.add_subcommand("evolve", "pulled-back plane-wave flow and density");
  dyn(evo);
  auto* exo = app.add_subcommand("exotic-evolve", "flow with the theta = kappa t + k.x term");
  dyn(exo);
  exo->add_option("--kappa", o.kappa, "d theta / dt");
  exo->add_option("--k", o.k, "kx,ky,kz");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  const CLI::App* chosen = app.get_subcommands().front();
  if (chosen == evo || chosen == exo) o.mode = "float";
  try {
    return dispatch(chosen->get_name(), o);
  } catch (const Failure& f) {
    std::cerr << "error: " << f.message << "\n";
    return f.code;
  }
}
