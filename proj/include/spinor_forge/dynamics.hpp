#pragma once

// Dirac dynamics in spacetime and its pullback ("avatar") to spinor space.
//
// Natural units. Spacetime points are (x, t) with x in R^3; derivative
// arrays are ordered (d_t, d_x, d_y, d_z). The Dirac operator is
// D = i gamma^mu d_mu - m with the stored Weyl matrices of gamma.hpp as
// gamma^mu. All of this module works in float mode.
//
// The pulled-back velocity on spinor space, for an invertible phi that
// commutes with gamma0, is
//   dt psi = -i m gamma0 psi - gamma0 phi^-1 (gamma_vec . grad Psi),
// and with an exotic phase theta(x, t)
//   dt psi = -theta_t psi - i m gamma0 psi
//            - gamma0 phi^-1 (gamma_vec . {grad Psi + (grad theta) Psi}).
// Divergences are taken over the 8 real coordinates (Re, Im of each
// component).

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "spinor_forge/errors.hpp"
#include "spinor_forge/matrix.hpp"

namespace spinor_forge {

using FSpinor = Spinor<Complex>;
using FMatrix = Matrix4<Complex>;
using Position = std::array<double, 3>;
using FourVector = std::array<double, 4>;
using SpinorDerivatives = std::array<FSpinor, 4>;  // d_t, d_x, d_y, d_z

class SpinorField {
 public:
  using Evaluator = std::function<FSpinor(const Position&, double)>;
  using DerivativeEvaluator = std::function<SpinorDerivatives(const Position&, double)>;

  /// Without an analytic derivative evaluator, derivatives fall back to
  /// central differences with step `h`.
  explicit SpinorField(Evaluator value, std::optional<DerivativeEvaluator> derivatives = std::nullopt,
                       double h = 1e-5);

  FSpinor value(const Position& x, double t) const { return value_(x, t); }
  SpinorDerivatives derivatives(const Position& x, double t) const;
  bool has_analytic_derivatives() const { return derivatives_.has_value(); }

 private:
  Evaluator value_;
  std::optional<DerivativeEvaluator> derivatives_;
  double h_;
};

SpinorField constant_field(const FSpinor& psi0);

enum class WaveBranch { particle, antiparticle };

/// u(p) e^{-i p.x} (particle) or v(p) e^{+i p.x} (antiparticle), with
/// p = (E, px, py, pz) contravariant. `spin` selects the basis 2-spinor
/// (1,0) or (0,1). Throws Error(off_shell) unless p0 > 0 and
/// |p.p - m^2| <= 1e-12 max(1, p0^2).
SpinorField plane_wave(const FourVector& p, double m, int spin = 0, WaveBranch branch = WaveBranch::particle);

/// Amplitude of plane_wave at x = 0, t = 0.
FSpinor plane_wave_amplitude(const FourVector& p, double m, int spin = 0, WaveBranch branch = WaveBranch::particle);

/// Multiplies a field by exp(-theta(x,t)), with the product rule applied to
/// analytic derivatives.
class ExoticTheta;
SpinorField damped_field(const SpinorField& field, const ExoticTheta& theta);

/// (i gamma^mu d_mu - m) Psi at (x, t).
FSpinor dirac_apply(const SpinorField& field, double m, const Position& x, double t);

class AvatarMap {
 public:
  static AvatarMap identity();
  /// phi = [[P, Q], [Q, P]] (row-major 2x2 blocks), the commutant of gamma0.
  static AvatarMap from_blocks(const std::array<Complex, 4>& p, const std::array<Complex, 4>& q);
  /// Validates [phi, gamma0] = 0 (<= 1e-12 relative), det != 0 and a
  /// 2-norm condition number <= 1e6. Throws Error(invalid_argument).
  static AvatarMap from_matrix(const FMatrix& phi);
  /// Random well-conditioned member of the commutant family.
  static AvatarMap random(std::uint64_t seed);

  const FMatrix& matrix() const { return phi_; }
  const FMatrix& inverse() const { return inverse_; }
  double condition_number() const { return condition_; }

  FSpinor pull_back(const FSpinor& spacetime_value) const { return inverse_ * spacetime_value; }
  FSpinor push_forward(const FSpinor& psi) const { return phi_ * psi; }

 private:
  AvatarMap(FMatrix phi, FMatrix inverse, double condition)
      : phi_(phi), inverse_(inverse), condition_(condition) {}
  FMatrix phi_;
  FMatrix inverse_;
  double condition_;
};

/// Commutator norm max|phi gamma0 - gamma0 phi|.
double gamma0_commutator_norm(const FMatrix& phi);

/// dt psi at the point psi = phi^-1 Psi(x, t).
FSpinor avatar_velocity(const SpinorField& field, const Position& x, double t, const AvatarMap& phi, double m);

using VelocityField = std::function<FSpinor(const FSpinor&)>;

/// sum_k [V_k(psi + h e_k) - V_k(psi - h e_k)] / (2h) over the 8 real
/// coordinates. Requires h > 0.
double flow_divergence(const VelocityField& v, const FSpinor& psi, double h);

/// 1e-4 (1 + |psi|).
double default_divergence_step(const FSpinor& psi);

/// Velocity on spinor space induced by the plane wave of momentum p through
/// phi: Psi = phi psi with d_j Psi = i p^j Psi, so
/// V(psi) = -i m gamma0 psi - gamma0 phi^-1 (gamma_vec . i p_vec) phi psi.
VelocityField plane_wave_flow(const FourVector& p, double m, const AvatarMap& phi);

struct LiouvilleOptions {
  int n_points = 100;
  double h = 0.0;  // 0: default_divergence_step at each point
  double tol = 1e-6;
  std::uint64_t seed = 1;
};

struct LiouvilleReport {
  std::vector<double> divergences;
  double max_divergence = 0.0;     // max |div|
  double drho_dt_over_rho = 0.0;   // -div at the worst point
  bool pass = false;
};

/// Massless only: throws Error(massive_input) for m != 0. p must be null
/// with p0 > 0, or p = 0 (constant field). Points are pullbacks of the wave
/// at random spacetime points.
LiouvilleReport liouville_check(const FourVector& p, double m, const AvatarMap& phi, const LiouvilleOptions& opts = {});

/// Computes the same divergence for any mass, without asserting anything.
struct MassiveDivergenceReport {
  double mass = 0.0;
  double max_divergence = 0.0;
  bool asserted = false;
};
MassiveDivergenceReport massive_divergence_report(const FourVector& p, double m, const AvatarMap& phi,
                                                  const LiouvilleOptions& opts = {});

/// Regular grid over (t, x, y, z) with multilinear interpolation.
struct ThetaGrid {
  FourVector origin{};
  FourVector spacing{1, 1, 1, 1};
  std::array<std::size_t, 4> counts{2, 2, 2, 2};
  std::vector<double> values;  // index ((it * nx + ix) * ny + iy) * nz + iz

  double interpolate(const Position& x, double t) const;
};

class ExoticTheta {
 public:
  /// theta = 0.
  static ExoticTheta zero();
  /// theta = kappa t + k . x.
  static ExoticTheta linear(double kappa, const Position& k);
  /// Tabulated theta; gradients by central differences with step fd_step.
  static ExoticTheta tabulated(ThetaGrid grid, double fd_step = 1e-4);
  /// Arbitrary analytic theta with its gradient (d_t, d_x, d_y, d_z).
  static ExoticTheta analytic(std::function<double(const Position&, double)> value,
                              std::function<FourVector(const Position&, double)> gradient);

  double value(const Position& x, double t) const { return value_(x, t); }
  FourVector gradient(const Position& x, double t) const { return gradient_(x, t); }

 private:
  ExoticTheta(std::function<double(const Position&, double)> v, std::function<FourVector(const Position&, double)> g)
      : value_(std::move(v)), gradient_(std::move(g)) {}
  std::function<double(const Position&, double)> value_;
  std::function<FourVector(const Position&, double)> gradient_;
};

/// max over points of |gradient - central difference of value| with step h.
double theta_gradient_consistency(const ExoticTheta& theta, const std::vector<std::pair<Position, double>>& points,
                                  double h = 1e-5);

/// D Psi + i gamma^mu (d_mu theta) Psi.
FSpinor exotic_dirac_apply(const SpinorField& field, double m, const ExoticTheta& theta, const Position& x, double t);

/// dt psi~ at psi~ = phi^-1 Psi~(x, t) including the theta terms.
FSpinor exotic_velocity(const SpinorField& field, const Position& x, double t, const ExoticTheta& theta,
                        const AvatarMap& phi, double m = 0.0);

using TimeVelocityField = std::function<FSpinor(const FSpinor&, double)>;

/// Exotic plane-wave flow at fixed spatial point x0:
/// V(psi, t) = -theta_t psi - i m gamma0 psi - gamma0 phi^-1 gamma_vec.(i p_vec + grad theta) phi psi.
TimeVelocityField exotic_plane_wave_flow(const FourVector& p, double m, const AvatarMap& phi, const ExoticTheta& theta,
                                         const Position& x0);

struct TrajectorySample {
  double t = 0.0;
  FSpinor psi;
  double rho = 0.0;
  double divergence = 0.0;
};

struct IntegratorOptions {
  double t_start = 0.0;
  double t_end = 1.0;
  double dt = 1e-3;
  double divergence_h = 0.0;     // 0: default_divergence_step
  double error_budget = 1e-8;    // per-step relative estimate (full vs two half steps)
};

struct Trajectory {
  std::vector<TrajectorySample> samples;
  double max_step_error = 0.0;
};

/// RK4 on (psi, rho) with d psi/dt = V(psi, t), d rho/dt = -rho div V.
/// Throws Error(step_too_large) when the step-halving estimate exceeds the
/// budget, and Error(invalid_argument) for dt <= 0 or t_end < t_start.
Trajectory integrate_density(const TimeVelocityField& v, const FSpinor& psi0, double rho0,
                             const IntegratorOptions& opts);

struct EvolveConfig {
  FourVector momentum{1, 0, 0, 1};
  double mass = 0.0;
  int spin = 0;
  Position x0{0, 0, 0};
  double rho0 = 1.0;
  IntegratorOptions integrator;
};

struct EvolveReport {
  Trajectory trajectory;
  double max_abs_divergence = 0.0;
  double max_rho_relative_deviation = 0.0;  // max |rho - rho0| / rho0
  double liouville_tol = 1e-6;
  bool massless = true;
  bool asserted = true;  // false in the massive case: reported, not judged
  bool pass = false;
};

/// Trajectory of the pulled-back plane-wave flow starting at
/// phi^-1 Psi(x0, t_start). Massive inputs are integrated and reported with
/// asserted = false.
EvolveReport evolve(const EvolveConfig& cfg, const AvatarMap& phi);

struct ExoticDensityReport {
  Trajectory trajectory;
  double raw_rate_mean = 0.0;         // mean d ln rho / dt over steps
  double normalized_rate_mean = 0.0;  // raw / 8 (per real degree of freedom)
  double max_rate_deviation = 0.0;    // max |normalized rate - theta_t|
  double max_relative_rate_deviation = 0.0;  // the above over |theta_t| where theta_t != 0
  double max_density_deviation = 0.0;  // max |rho_norm - rho0 e^theta| / (rho0 e^theta)
};

/// Integrates the exotic flow and compares the density with rho0 e^{theta}.
ExoticDensityReport exotic_density_check(const ExoticTheta& theta, double rho0, const EvolveConfig& cfg,
                                         const AvatarMap& phi);

}  // namespace spinor_forge
