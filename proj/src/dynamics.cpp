#include "spinor_forge/dynamics.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <random>
#include <string>

#include "spinor_forge/gamma.hpp"

namespace spinor_forge {
namespace {

const FMatrix& gamma(std::size_t mu) { return gamma_basis<Complex>().gamma[mu]; }

constexpr Complex kI{0.0, 1.0};

double spinor_norm(const FSpinor& v) { return std::sqrt(norm2(v)); }

FSpinor scaled(double s, const FSpinor& v) { return Complex(s, 0.0) * v; }

// gamma_vec . (a_1, a_2, a_3) for complex coefficients.
FMatrix gamma_dot(const std::array<Complex, 3>& a) {
  FMatrix m;
  for (std::size_t j = 0; j < 3; ++j) m = m + a[j] * gamma(j + 1);
  return m;
}

// sqrt of the 2x2 hermitian positive matrix E I -+ p.sigma (det = m^2).
std::array<Complex, 4> sqrt_pauli(double e, const Position& p, double m, double sign) {
  // A = e I + sign * p.sigma
  std::array<Complex, 4> a{Complex(e + sign * p[2], 0), Complex(sign * p[0], -sign * p[1]),
                           Complex(sign * p[0], sign * p[1]), Complex(e - sign * p[2], 0)};
  const double denom = std::sqrt(2.0 * e + 2.0 * m);
  a[0] = (a[0] + m) / denom;
  a[3] = (a[3] + m) / denom;
  a[1] /= denom;
  a[2] /= denom;
  return a;
}

void check_on_shell(const FourVector& p, double m) {
  const double pp = p[0] * p[0] - p[1] * p[1] - p[2] * p[2] - p[3] * p[3];
  if (!(p[0] > 0.0))
    throw Error(ErrorCode::off_shell, "plane wave needs p0 > 0 (got " + std::to_string(p[0]) + ")");
  if (std::abs(pp - m * m) > 1e-12 * std::max(1.0, p[0] * p[0]))
    throw Error(ErrorCode::off_shell, "momentum is off shell: p.p - m^2 = " + std::to_string(pp - m * m));
}

double matrix_condition_number(const FMatrix& m) {
  Eigen::Matrix4cd e;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) e(i, j) = m(i, j);
  Eigen::JacobiSVD<Eigen::Matrix4cd> svd(e);
  const auto& s = svd.singularValues();
  if (s(3) <= 0.0) return std::numeric_limits<double>::infinity();
  return s(0) / s(3);
}

}  // namespace

SpinorField::SpinorField(Evaluator value, std::optional<DerivativeEvaluator> derivatives, double h)
    : value_(std::move(value)), derivatives_(std::move(derivatives)), h_(h) {
  if (!(h_ > 0.0)) throw Error(ErrorCode::invalid_argument, "finite-difference step must be > 0");
}

SpinorDerivatives SpinorField::derivatives(const Position& x, double t) const {
  if (derivatives_) return (*derivatives_)(x, t);
  SpinorDerivatives d;
  const double inv = 1.0 / (2.0 * h_);
  d[0] = scaled(inv, value_(x, t + h_) - value_(x, t - h_));
  for (std::size_t j = 0; j < 3; ++j) {
    Position xp = x;
    Position xm = x;
    xp[j] += h_;
    xm[j] -= h_;
    d[j + 1] = scaled(inv, value_(xp, t) - value_(xm, t));
  }
  return d;
}

SpinorField constant_field(const FSpinor& psi0) {
  return SpinorField([psi0](const Position&, double) { return psi0; },
                     [](const Position&, double) { return SpinorDerivatives{}; });
}

FSpinor plane_wave_amplitude(const FourVector& p, double m, int spin, WaveBranch branch) {
  check_on_shell(p, m);
  if (spin != 0 && spin != 1) throw Error(ErrorCode::invalid_argument, "spin selector must be 0 or 1");
  const Position pv{p[1], p[2], p[3]};
  const auto upper = sqrt_pauli(p[0], pv, m, -1.0);  // sqrt(p.sigma)
  const auto lower = sqrt_pauli(p[0], pv, m, +1.0);  // sqrt(p.sigmabar)
  const std::array<Complex, 2> xi = spin == 0 ? std::array<Complex, 2>{1.0, 0.0} : std::array<Complex, 2>{0.0, 1.0};
  const double lower_sign = branch == WaveBranch::particle ? 1.0 : -1.0;
  FSpinor u;
  u[0] = upper[0] * xi[0] + upper[1] * xi[1];
  u[1] = upper[2] * xi[0] + upper[3] * xi[1];
  u[2] = lower_sign * (lower[0] * xi[0] + lower[1] * xi[1]);
  u[3] = lower_sign * (lower[2] * xi[0] + lower[3] * xi[1]);
  return u;
}

SpinorField plane_wave(const FourVector& p, double m, int spin, WaveBranch branch) {
  const FSpinor amp = plane_wave_amplitude(p, m, spin, branch);
  // particle: e^{-i (E t - p.x)}, antiparticle: e^{+i (E t - p.x)}
  const double s = branch == WaveBranch::particle ? -1.0 : 1.0;
  auto phase = [p, s](const Position& x, double t) {
    const double px = p[0] * t - p[1] * x[0] - p[2] * x[1] - p[3] * x[2];
    return std::polar(1.0, s * px);
  };
  auto value = [amp, phase](const Position& x, double t) { return phase(x, t) * amp; };
  auto derivs = [amp, phase, p, s](const Position& x, double t) {
    const FSpinor v = phase(x, t) * amp;
    SpinorDerivatives d;
    d[0] = (kI * s * p[0]) * v;
    for (std::size_t j = 0; j < 3; ++j) d[j + 1] = (-kI * s * p[j + 1]) * v;
    return d;
  };
  return SpinorField(value, derivs);
}

SpinorField damped_field(const SpinorField& field, const ExoticTheta& theta) {
  auto value = [field, theta](const Position& x, double t) {
    return scaled(std::exp(-theta.value(x, t)), field.value(x, t));
  };
  auto derivs = [field, theta](const Position& x, double t) {
    const double w = std::exp(-theta.value(x, t));
    const FourVector g = theta.gradient(x, t);
    const FSpinor v = field.value(x, t);
    const SpinorDerivatives d = field.derivatives(x, t);
    SpinorDerivatives out;
    for (std::size_t mu = 0; mu < 4; ++mu) out[mu] = scaled(w, d[mu] - scaled(g[mu], v));
    return out;
  };
  return SpinorField(value, derivs);
}

FSpinor dirac_apply(const SpinorField& field, double m, const Position& x, double t) {
  const SpinorDerivatives d = field.derivatives(x, t);
  FSpinor out = scaled(-m, field.value(x, t));
  for (std::size_t mu = 0; mu < 4; ++mu) out = out + kI * (gamma(mu) * d[mu]);
  return out;
}

double gamma0_commutator_norm(const FMatrix& phi) {
  const FMatrix c = phi * gamma(0) - gamma(0) * phi;
  return max_abs(c);
}

AvatarMap AvatarMap::identity() { return AvatarMap(FMatrix::identity(), FMatrix::identity(), 1.0); }

AvatarMap AvatarMap::from_blocks(const std::array<Complex, 4>& p, const std::array<Complex, 4>& q) {
  FMatrix m;
  for (std::size_t r = 0; r < 2; ++r)
    for (std::size_t c = 0; c < 2; ++c) {
      m(r, c) = p[r * 2 + c];
      m(r + 2, c + 2) = p[r * 2 + c];
      m(r, c + 2) = q[r * 2 + c];
      m(r + 2, c) = q[r * 2 + c];
    }
  return from_matrix(m);
}

AvatarMap AvatarMap::from_matrix(const FMatrix& phi) {
  const double scale = std::max(1.0, max_abs(phi));
  if (gamma0_commutator_norm(phi) > 1e-12 * scale)
    throw Error(ErrorCode::invalid_argument, "avatar map must commute with gamma0 ([[P,Q],[Q,P]] form)");
  const double cond = matrix_condition_number(phi);
  if (!(cond <= 1e6))
    throw Error(ErrorCode::invalid_argument, "avatar map is singular or too ill-conditioned (cond = " +
                                                 std::to_string(cond) + ", cap 1e6)");
  FMatrix inv;
  try {
    inv = spinor_forge::inverse(phi);
  } catch (const SingularMatrixError&) {
    throw Error(ErrorCode::invalid_argument, "avatar map is singular");
  }
  return AvatarMap(phi, inv, cond);
}

AvatarMap AvatarMap::random(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-0.5, 0.5);
  std::array<Complex, 4> p;
  std::array<Complex, 4> q;
  for (auto& z : p) z = {u(rng), u(rng)};
  for (auto& z : q) z = {u(rng), u(rng)};
  // Diagonal shift keeps P + Q and P - Q (the two gamma0 eigenblocks) well away from singular.
  p[0] += 2.0;
  p[3] += 2.0;
  return from_blocks(p, q);
}

FSpinor avatar_velocity(const SpinorField& field, const Position& x, double t, const AvatarMap& phi, double m) {
  const FSpinor psi = phi.pull_back(field.value(x, t));
  const SpinorDerivatives d = field.derivatives(x, t);
  FSpinor spatial;
  for (std::size_t j = 1; j < 4; ++j) spatial = spatial + gamma(j) * d[j];
  return (Complex(0.0, -m) * (gamma(0) * psi)) - gamma(0) * phi.pull_back(spatial);
}

double flow_divergence(const VelocityField& v, const FSpinor& psi, double h) {
  if (!(h > 0.0)) throw Error(ErrorCode::invalid_argument, "divergence step must be > 0");
  double div = 0.0;
  for (std::size_t k = 0; k < 4; ++k) {
    for (int part = 0; part < 2; ++part) {
      const Complex e = part == 0 ? Complex(h, 0.0) : Complex(0.0, h);
      FSpinor plus = psi;
      FSpinor minus = psi;
      plus[k] += e;
      minus[k] -= e;
      const Complex diff = v(plus)[k] - v(minus)[k];
      div += (part == 0 ? diff.real() : diff.imag()) / (2.0 * h);
    }
  }
  return div;
}

double default_divergence_step(const FSpinor& psi) { return 1e-4 * (1.0 + spinor_norm(psi)); }

VelocityField plane_wave_flow(const FourVector& p, double m, const AvatarMap& phi) {
  const FMatrix spatial = gamma_dot({kI * p[1], kI * p[2], kI * p[3]});
  const FMatrix op = Complex(0.0, -m) * gamma(0) - gamma(0) * phi.inverse() * spatial * phi.matrix();
  return [op](const FSpinor& psi) { return op * psi; };
}

namespace {

void check_null_or_zero(const FourVector& p) {
  const bool zero = p[0] == 0.0 && p[1] == 0.0 && p[2] == 0.0 && p[3] == 0.0;
  if (!zero) check_on_shell(p, 0.0);
}

std::vector<double> sample_divergences(const FourVector& p, double m, const AvatarMap& phi,
                                       const LiouvilleOptions& opts) {
  if (opts.n_points < 1) throw Error(ErrorCode::invalid_argument, "n_points must be >= 1");
  const VelocityField v = plane_wave_flow(p, m, phi);
  const bool zero = p[0] == 0.0 && p[1] == 0.0 && p[2] == 0.0 && p[3] == 0.0;
  std::mt19937_64 rng(opts.seed);
  std::uniform_real_distribution<double> u(-5.0, 5.0);
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(opts.n_points));
  for (int k = 0; k < opts.n_points; ++k) {
    FSpinor spacetime_value;
    if (zero || m != 0.0) {
      for (auto& z : spacetime_value.c) z = {u(rng), u(rng)};
    } else {
      const Position x{u(rng), u(rng), u(rng)};
      const double t = u(rng);
      const SpinorField wave = plane_wave(p, 0.0, k % 2);
      spacetime_value = wave.value(x, t);
    }
    const FSpinor psi = phi.pull_back(spacetime_value);
    const double h = opts.h > 0.0 ? opts.h : default_divergence_step(psi);
    out.push_back(flow_divergence(v, psi, h));
  }
  return out;
}

}  // namespace

LiouvilleReport liouville_check(const FourVector& p, double m, const AvatarMap& phi, const LiouvilleOptions& opts) {
  if (m != 0.0)
    throw Error(ErrorCode::massive_input,
                "liouville_check is defined for the massless case only (m = " + std::to_string(m) + ")");
  check_null_or_zero(p);
  LiouvilleReport rep;
  rep.divergences = sample_divergences(p, 0.0, phi, opts);
  for (double d : rep.divergences)
    if (std::abs(d) >= rep.max_divergence) {
      rep.max_divergence = std::abs(d);
      rep.drho_dt_over_rho = -d;
    }
  rep.pass = rep.max_divergence <= opts.tol;
  return rep;
}

MassiveDivergenceReport massive_divergence_report(const FourVector& p, double m, const AvatarMap& phi,
                                                  const LiouvilleOptions& opts) {
  const bool zero = p[0] == 0.0 && p[1] == 0.0 && p[2] == 0.0 && p[3] == 0.0;
  if (!zero) check_on_shell(p, m);
  MassiveDivergenceReport rep;
  rep.mass = m;
  for (double d : sample_divergences(p, m, phi, opts)) rep.max_divergence = std::max(rep.max_divergence, std::abs(d));
  rep.asserted = false;
  return rep;
}

double ThetaGrid::interpolate(const Position& x, double t) const {
  const FourVector q{t, x[0], x[1], x[2]};
  std::array<std::size_t, 4> base{};
  std::array<double, 4> frac{};
  for (std::size_t d = 0; d < 4; ++d) {
    if (counts[d] < 2) throw Error(ErrorCode::invalid_argument, "theta grid needs >= 2 points per axis");
    double s = (q[d] - origin[d]) / spacing[d];
    s = std::clamp(s, 0.0, static_cast<double>(counts[d] - 1));
    std::size_t i = static_cast<std::size_t>(std::floor(s));
    if (i >= counts[d] - 1) i = counts[d] - 2;
    base[d] = i;
    frac[d] = s - static_cast<double>(i);
  }
  auto at = [this](std::size_t it, std::size_t ix, std::size_t iy, std::size_t iz) {
    return values[((it * counts[1] + ix) * counts[2] + iy) * counts[3] + iz];
  };
  double acc = 0.0;
  for (int corner = 0; corner < 16; ++corner) {
    double w = 1.0;
    std::array<std::size_t, 4> idx{};
    for (std::size_t d = 0; d < 4; ++d) {
      const bool hi = (corner >> d) & 1;
      idx[d] = base[d] + (hi ? 1 : 0);
      w *= hi ? frac[d] : 1.0 - frac[d];
    }
    if (w != 0.0) acc += w * at(idx[0], idx[1], idx[2], idx[3]);
  }
  return acc;
}

ExoticTheta ExoticTheta::zero() {
  return ExoticTheta([](const Position&, double) { return 0.0; }, [](const Position&, double) { return FourVector{}; });
}

ExoticTheta ExoticTheta::linear(double kappa, const Position& k) {
  return ExoticTheta([kappa, k](const Position& x, double t) { return kappa * t + k[0] * x[0] + k[1] * x[1] + k[2] * x[2]; },
                     [kappa, k](const Position&, double) { return FourVector{kappa, k[0], k[1], k[2]}; });
}

ExoticTheta ExoticTheta::tabulated(ThetaGrid grid, double fd_step) {
  std::size_t expected = 1;
  for (auto c : grid.counts) expected *= c;
  if (grid.values.size() != expected)
    throw Error(ErrorCode::invalid_argument, "theta grid has " + std::to_string(grid.values.size()) +
                                                 " values, expected " + std::to_string(expected));
  if (!(fd_step > 0.0)) throw Error(ErrorCode::invalid_argument, "fd_step must be > 0");
  auto g = std::make_shared<const ThetaGrid>(std::move(grid));
  auto value = [g](const Position& x, double t) { return g->interpolate(x, t); };
  auto gradient = [g, fd_step](const Position& x, double t) {
    FourVector out;
    out[0] = (g->interpolate(x, t + fd_step) - g->interpolate(x, t - fd_step)) / (2.0 * fd_step);
    for (std::size_t j = 0; j < 3; ++j) {
      Position xp = x;
      Position xm = x;
      xp[j] += fd_step;
      xm[j] -= fd_step;
      out[j + 1] = (g->interpolate(xp, t) - g->interpolate(xm, t)) / (2.0 * fd_step);
    }
    return out;
  };
  return ExoticTheta(value, gradient);
}

ExoticTheta ExoticTheta::analytic(std::function<double(const Position&, double)> value,
                                  std::function<FourVector(const Position&, double)> gradient) {
  return ExoticTheta(std::move(value), std::move(gradient));
}

double theta_gradient_consistency(const ExoticTheta& theta, const std::vector<std::pair<Position, double>>& points,
                                  double h) {
  double worst = 0.0;
  for (const auto& [x, t] : points) {
    const FourVector g = theta.gradient(x, t);
    const double dt = (theta.value(x, t + h) - theta.value(x, t - h)) / (2.0 * h);
    worst = std::max(worst, std::abs(dt - g[0]));
    for (std::size_t j = 0; j < 3; ++j) {
      Position xp = x;
      Position xm = x;
      xp[j] += h;
      xm[j] -= h;
      const double dj = (theta.value(xp, t) - theta.value(xm, t)) / (2.0 * h);
      worst = std::max(worst, std::abs(dj - g[j + 1]));
    }
  }
  return worst;
}

FSpinor exotic_dirac_apply(const SpinorField& field, double m, const ExoticTheta& theta, const Position& x, double t) {
  const FourVector g = theta.gradient(x, t);
  const FSpinor v = field.value(x, t);
  FSpinor out = dirac_apply(field, m, x, t);
  for (std::size_t mu = 0; mu < 4; ++mu) out = out + (kI * g[mu]) * (gamma(mu) * v);
  return out;
}

FSpinor exotic_velocity(const SpinorField& field, const Position& x, double t, const ExoticTheta& theta,
                        const AvatarMap& phi, double m) {
  const FSpinor value = field.value(x, t);
  const FSpinor psi = phi.pull_back(value);
  const SpinorDerivatives d = field.derivatives(x, t);
  const FourVector g = theta.gradient(x, t);
  FSpinor spatial;
  for (std::size_t j = 1; j < 4; ++j) spatial = spatial + gamma(j) * (d[j] + scaled(g[j], value));
  return scaled(-g[0], psi) + Complex(0.0, -m) * (gamma(0) * psi) - gamma(0) * phi.pull_back(spatial);
}

TimeVelocityField exotic_plane_wave_flow(const FourVector& p, double m, const AvatarMap& phi, const ExoticTheta& theta,
                                         const Position& x0) {
  const FMatrix g0 = gamma(0);
  const FMatrix mass_term = Complex(0.0, -m) * g0;
  return [=](const FSpinor& psi, double t) {
    const FourVector g = theta.gradient(x0, t);
    const FMatrix spatial = gamma_dot({kI * p[1] + g[1], kI * p[2] + g[2], kI * p[3] + g[3]});
    const FMatrix op = Complex(-g[0], 0.0) * FMatrix::identity() + mass_term - g0 * phi.inverse() * spatial * phi.matrix();
    return op * psi;
  };
}

Trajectory integrate_density(const TimeVelocityField& v, const FSpinor& psi0, double rho0,
                             const IntegratorOptions& opts) {
  if (!(opts.dt > 0.0)) throw Error(ErrorCode::invalid_argument, "dt must be > 0");
  if (opts.t_end < opts.t_start) throw Error(ErrorCode::invalid_argument, "t_end must be >= t_start");
  if (!(rho0 > 0.0)) throw Error(ErrorCode::invalid_argument, "rho0 must be > 0");

  struct State {
    FSpinor psi;
    double rho;
  };
  auto divergence_at = [&](const FSpinor& psi, double t) {
    const double h = opts.divergence_h > 0.0 ? opts.divergence_h : default_divergence_step(psi);
    return flow_divergence([&](const FSpinor& q) { return v(q, t); }, psi, h);
  };
  auto rhs = [&](const State& s, double t) {
    return State{v(s.psi, t), -s.rho * divergence_at(s.psi, t)};
  };
  auto axpy = [](const State& s, double a, const State& k) { return State{s.psi + scaled(a, k.psi), s.rho + a * k.rho}; };
  auto rk4 = [&](const State& s, double t, double h) {
    const State k1 = rhs(s, t);
    const State k2 = rhs(axpy(s, h / 2, k1), t + h / 2);
    const State k3 = rhs(axpy(s, h / 2, k2), t + h / 2);
    const State k4 = rhs(axpy(s, h, k3), t + h);
    State out = s;
    out.psi = out.psi + scaled(h / 6, k1.psi + scaled(2.0, k2.psi) + scaled(2.0, k3.psi) + k4.psi);
    out.rho += h / 6 * (k1.rho + 2 * k2.rho + 2 * k3.rho + k4.rho);
    return out;
  };

  Trajectory traj;
  State s{psi0, rho0};
  double t = opts.t_start;
  traj.samples.push_back({t, s.psi, s.rho, divergence_at(s.psi, t)});
  const auto steps = static_cast<std::size_t>(std::ceil((opts.t_end - opts.t_start) / opts.dt - 1e-9));
  for (std::size_t k = 0; k < steps; ++k) {
    const double h = std::min(opts.dt, opts.t_end - t);
    const State full = rk4(s, t, h);
    const State half = rk4(rk4(s, t, h / 2), t + h / 2, h / 2);
    const double scale = spinor_norm(half.psi) + 1e-300;
    const double err = std::max(spinor_norm(full.psi - half.psi) / scale, std::abs(full.rho - half.rho) / half.rho);
    traj.max_step_error = std::max(traj.max_step_error, err);
    if (err > opts.error_budget)
      throw Error(ErrorCode::step_too_large, "step-halving error estimate " + std::to_string(err) +
                                                 " exceeds budget at t = " + std::to_string(t));
    if (!(half.rho > 0.0)) throw Error(ErrorCode::step_too_large, "density left the positive range");
    s = half;
    t = (k + 1 == steps) ? opts.t_end : t + h;
    traj.samples.push_back({t, s.psi, s.rho, divergence_at(s.psi, t)});
  }
  return traj;
}

EvolveReport evolve(const EvolveConfig& cfg, const AvatarMap& phi) {
  const bool zero = cfg.momentum[0] == 0.0 && cfg.momentum[1] == 0.0 && cfg.momentum[2] == 0.0 && cfg.momentum[3] == 0.0;
  FSpinor start;
  if (zero) {
    start = FSpinor{{Complex(1, 0), Complex(0, 0), Complex(0, 0), Complex(0, 0)}};
  } else {
    start = plane_wave(cfg.momentum, cfg.mass, cfg.spin).value(cfg.x0, cfg.integrator.t_start);
  }
  const VelocityField v = plane_wave_flow(cfg.momentum, cfg.mass, phi);
  EvolveReport rep;
  rep.trajectory = integrate_density([v](const FSpinor& psi, double) { return v(psi); }, phi.pull_back(start), cfg.rho0,
                                     cfg.integrator);
  for (const auto& s : rep.trajectory.samples) {
    rep.max_abs_divergence = std::max(rep.max_abs_divergence, std::abs(s.divergence));
    rep.max_rho_relative_deviation = std::max(rep.max_rho_relative_deviation, std::abs(s.rho - cfg.rho0) / cfg.rho0);
  }
  rep.massless = cfg.mass == 0.0;
  rep.asserted = rep.massless;
  rep.pass = rep.massless && rep.max_abs_divergence <= rep.liouville_tol &&
             rep.max_rho_relative_deviation <= rep.liouville_tol;
  return rep;
}

ExoticDensityReport exotic_density_check(const ExoticTheta& theta, double rho0, const EvolveConfig& cfg,
                                         const AvatarMap& phi) {
  if (!(rho0 > 0.0)) throw Error(ErrorCode::invalid_argument, "rho0 must be > 0");
  const bool zero = cfg.momentum[0] == 0.0 && cfg.momentum[1] == 0.0 && cfg.momentum[2] == 0.0 && cfg.momentum[3] == 0.0;
  FSpinor start;
  if (zero) {
    start = FSpinor{{Complex(1, 0), Complex(0, 0), Complex(0, 0), Complex(0, 0)}};
  } else {
    start = plane_wave(cfg.momentum, cfg.mass, cfg.spin).value(cfg.x0, cfg.integrator.t_start);
  }
  const double t0 = cfg.integrator.t_start;
  const double rho_start = rho0 * std::exp(theta.value(cfg.x0, t0));
  const TimeVelocityField v = exotic_plane_wave_flow(cfg.momentum, cfg.mass, phi, theta, cfg.x0);

  ExoticDensityReport rep;
  rep.trajectory = integrate_density(v, phi.pull_back(start), rho_start, cfg.integrator);
  const auto& s = rep.trajectory.samples;
  double raw_sum = 0.0;
  double total_time = 0.0;
  for (std::size_t k = 0; k + 1 < s.size(); ++k) {
    const double dt = s[k + 1].t - s[k].t;
    if (dt <= 0.0) continue;
    const double raw = (std::log(s[k + 1].rho) - std::log(s[k].rho)) / dt;
    const double theta_rate = (theta.value(cfg.x0, s[k + 1].t) - theta.value(cfg.x0, s[k].t)) / dt;
    const double dev = std::abs(raw / 8.0 - theta_rate);
    rep.max_rate_deviation = std::max(rep.max_rate_deviation, dev);
    if (theta_rate != 0.0)
      rep.max_relative_rate_deviation = std::max(rep.max_relative_rate_deviation, dev / std::abs(theta_rate));
    raw_sum += raw * dt;
    total_time += dt;
  }
  if (total_time > 0.0) {
    rep.raw_rate_mean = raw_sum / total_time;
    rep.normalized_rate_mean = rep.raw_rate_mean / 8.0;
  }
  for (const auto& sample : s) {
    const double normalized = rho_start * std::pow(sample.rho / rho_start, 1.0 / 8.0);
    const double expected = rho0 * std::exp(theta.value(cfg.x0, sample.t));
    rep.max_density_deviation = std::max(rep.max_density_deviation, std::abs(normalized - expected) / expected);
  }
  return rep;
}

}  // namespace spinor_forge
