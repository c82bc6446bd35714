#pragma once

// Report builders behind the C API and the CLI. Each returns the JSON
// document a command prints plus a verdict; "pass" false means the
// computation ran and the checked property failed.

#include <string>
#include <vector>

#include "spinor_forge/json_io.hpp"

namespace spinor_forge {

struct Verdict {
  Json report;
  bool pass = true;
};

template <class T>
Json classify_report(const Spinor<T>& psi, double null_tol);

template <class T>
Json bilinears_report(const Spinor<T>& psi);

/// Float mode passes when the largest residual is <= tol * J0.
template <class T>
Verdict fpk_report(const Spinor<T>& psi, double tol);

/// Exact spinors seed..seed+n-1 of the class.
Json sample_report(int cls, std::uint64_t seed, int n);
std::string sample_csv(int cls, std::uint64_t seed, int n);

struct SymmetryCheckOptions {
  std::vector<int> classes{1, 2, 3, 4, 5, 6};
  int n = 100;
  std::uint64_t seed = 1;
  double tol = 1e-10;      // beta extraction and lemma (float mode)
  double null_tol = 1e-9;  // reclassification (float mode)
};

template <class T>
Verdict symmetry_report(const SymmetryCandidate<T>& s, const SymmetryCheckOptions& opts);

/// compose(x, y) with the multiplicativity check of the sector transforms.
template <class T>
Verdict compose_report(const SymmetryCandidate<T>& x, const SymmetryCandidate<T>& y, double tol);

/// Throws Error(singular_matrix) for singular input.
template <class T>
Verdict inverse_report(const SymmetryCandidate<T>& s, double tol);

template <class T>
Verdict group_report(const std::vector<SymmetryCandidate<T>>& generators, int max_word, double tol);

// Dynamics requests are JSON objects; every field is optional:
//   momentum [4], mass, spin, x0 [3], rho0, t_start, t_end, dt,
//   error_budget, tol, points, seed, phi, kappa, k [3], plot (bool)
// phi is "identity", {"random": seed}, {"P": [4 pairs], "Q": [4 pairs]} or a
// matrix in the Matrix4 encoding.
struct DynamicsOutput {
  Json summary;
  std::string csv;
  std::string svg;  // only when "plot" is true
  bool pass = true;
};

AvatarMap avatar_from_json(const Json& j);
DynamicsOutput evolve_request(const Json& request);
DynamicsOutput exotic_evolve_request(const Json& request);

/// Line chart of rho against t.
std::string density_svg(const std::vector<double>& t, const std::vector<double>& rho, const std::string& title);

}  // namespace spinor_forge
