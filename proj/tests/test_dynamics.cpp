#include <doctest.h>

#include <cmath>
#include <functional>

#include "support.hpp"
#include "spinor_forge/dynamics.hpp"

using namespace sft;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode{};
}

double dist(const FSpinor& a, const FSpinor& b) { return std::sqrt(norm2(FSpinor(a - b))); }
double size(const FSpinor& a) { return std::sqrt(norm2(a)); }

FourVector on_shell(std::mt19937_64& rng, double m) {
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  const double px = u(rng), py = u(rng), pz = u(rng);
  return {std::sqrt(px * px + py * py + pz * pz + m * m), px, py, pz};
}

Position random_point(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  return {u(rng), u(rng), u(rng)};
}

const ClassifierConfig kFloat{Mode::floating, 1e-9};

}  // namespace

TEST_CASE("plane waves solve the Dirac equation") {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> mass(0.1, 2.0);
  std::uniform_real_distribution<double> time(-3.0, 3.0);
  double worst = 0.0;
  for (int k = 0; k < 20; ++k) {
    const double m = k % 2 ? 0.0 : mass(rng);
    const auto p = on_shell(rng, m);
    for (auto branch : {WaveBranch::particle, WaveBranch::antiparticle})
      for (int spin : {0, 1}) {
        const auto wave = plane_wave(p, m, spin, branch);
        for (int j = 0; j < 100; ++j)
          worst = std::max(worst, size(dirac_apply(wave, m, random_point(rng), time(rng))));
      }
  }
  CHECK(worst <= 1e-12);

  const auto w = plane_wave({2, 0, 0, 1}, std::sqrt(3.0));
  CHECK(size(dirac_apply(w, std::sqrt(3.0), {0.3, -1.0, 2.0}, 0.7)) <= 1e-12);
}

TEST_CASE("plane wave classes") {
  std::mt19937_64 rng(1);
  const auto chiral = plane_wave({1, 0, 0, 1}, 0.0);
  const auto rest = plane_wave({1, 0, 0, 0}, 1.0);
  for (int k = 0; k < 20; ++k) {
    const auto x = random_point(rng);
    CHECK(classify(chiral.value(x, 0.1 * k), kFloat).value() == 6);
    CHECK(classify(rest.value(x, 0.1 * k), kFloat).value() == 3);
  }
}

TEST_CASE("off-shell momenta are rejected") {
  CHECK(code_of([] { (void)plane_wave({1, 0, 0, 2}, 0.0); }) == ErrorCode::off_shell);
  CHECK(code_of([] { (void)plane_wave({-1, 0, 0, -1}, 0.0); }) == ErrorCode::off_shell);
  CHECK(code_of([] { (void)plane_wave({2, 0, 0, 1}, 1.0); }) == ErrorCode::off_shell);
}

TEST_CASE("class is constant along plane-wave evolution") {
  const double m = std::sqrt(3.0);
  const auto w = plane_wave({2, 0, 0, 1}, m, 1);
  const Position x{0.5, -0.2, 1.1};
  const int c0 = classify(w.value(x, 0.0), kFloat).value();
  for (int k = 1; k < 50; ++k) CHECK(classify(w.value(x, 0.13 * k), kFloat).value() == c0);
}

TEST_CASE("constant fields") {
  const FSpinor psi0 = to_float(espinor(1, 0, 0, 0));
  const auto f = constant_field(psi0);
  CHECK(size(dirac_apply(f, 0.0, {1, 2, 3}, 4.0)) == 0.0);
  CHECK(dist(dirac_apply(f, 1.0, {1, 2, 3}, 4.0), FSpinor(-1.0 * psi0)) <= 1e-15);

  const auto phi = AvatarMap::identity();
  CHECK(size(avatar_velocity(f, {0, 0, 0}, 0.0, phi, 0.0)) == 0.0);
  const FSpinor expected{{0, 0, Complex(0, -1), 0}};
  CHECK(dist(avatar_velocity(f, {0, 0, 0}, 0.0, phi, 1.0), expected) <= 1e-15);
}

TEST_CASE("finite-difference fields agree with analytic derivatives") {
  const auto w = plane_wave({2, 0, 0, 1}, std::sqrt(3.0));
  const SpinorField fd([w](const Position& x, double t) { return w.value(x, t); });
  CHECK_FALSE(fd.has_analytic_derivatives());
  const auto a = w.derivatives({0.1, 0.2, 0.3}, 0.4);
  const auto b = fd.derivatives({0.1, 0.2, 0.3}, 0.4);
  for (int mu = 0; mu < 4; ++mu) CHECK(dist(a[mu], b[mu]) <= 1e-8);
}

TEST_CASE("avatar velocity equals the pulled-back time derivative") {
  std::mt19937_64 rng(40);
  for (int k = 0; k < 10; ++k) {
    const double m = k % 2 ? 0.0 : 0.7;
    const auto p = on_shell(rng, m);
    const auto w = plane_wave(p, m);
    const auto phi = k < 5 ? AvatarMap::identity() : AvatarMap::random(k);
    for (int j = 0; j < 10; ++j) {
      const auto x = random_point(rng);
      const double t = 0.1 * j;
      const FSpinor direct = phi.pull_back(w.derivatives(x, t)[0]);
      CHECK(dist(avatar_velocity(w, x, t, phi, m), direct) <= 1e-10 * (1 + size(direct)));
      // The flow on spinor space agrees at the pulled-back point.
      const FSpinor psi = phi.pull_back(w.value(x, t));
      CHECK(dist(plane_wave_flow(p, m, phi)(psi), direct) <= 1e-10 * (1 + size(direct)));
    }
  }
}

TEST_CASE("avatar maps") {
  const auto r = AvatarMap::random(3);
  CHECK(gamma0_commutator_norm(r.matrix()) <= 1e-12);
  CHECK(r.condition_number() <= 1e6);
  CHECK(r.condition_number() >= 1.0);
  CHECK(dist(r.push_forward(r.pull_back(to_float(espinor(1, 2, 3, 4)))), to_float(espinor(1, 2, 3, 4))) <= 1e-12);

  CHECK(code_of([] { (void)AvatarMap::from_matrix(to_float(gamma_basis<GR>().gamma[1])); }) ==
        ErrorCode::invalid_argument);
  CHECK(code_of([] { (void)AvatarMap::from_matrix(FMatrix{}); }) == ErrorCode::invalid_argument);
  const std::array<Complex, 4> one{1, 0, 0, 1};
  CHECK(code_of([&] { (void)AvatarMap::from_blocks(one, one); }) == ErrorCode::invalid_argument);
  const auto ok = AvatarMap::from_blocks({2, 0, 0, 1}, {0, Complex(0, 1), 0, 0});
  CHECK(ok.condition_number() < 10);
}

TEST_CASE("flow divergence") {
  const FSpinor psi = to_float(espinor(1, -2, 3, 1));
  CHECK(std::abs(flow_divergence([](const FSpinor&) { return to_float(espinor(1, 1, 1, 1)); }, psi, 1e-4)) <= 1e-10);
  CHECK(flow_divergence([](const FSpinor& s) { return s; }, psi, 1e-4) == doctest::Approx(8.0).epsilon(1e-10));
  const FMatrix g0 = to_float(gamma_basis<GR>().gamma[0]);
  const double massive = flow_divergence([&](const FSpinor& s) { return FSpinor(Complex(0, -1) * (g0 * s)); }, psi, 1e-4);
  CHECK(std::abs(massive - parse_rational(oracle()["massive_term_real_trace"].get<std::string>()).get_d()) <= 1e-10);
  CHECK(code_of([&] { (void)flow_divergence([](const FSpinor& s) { return s; }, psi, 0.0); }) ==
        ErrorCode::invalid_argument);
}

TEST_CASE("massless Liouville") {
  LiouvilleOptions opts;
  opts.h = 1e-4;
  const auto id = liouville_check({1, 0, 0, 1}, 0.0, AvatarMap::identity(), opts);
  CHECK(id.pass);
  CHECK(id.divergences.size() == 100);
  CHECK(id.max_divergence <= 1e-6);
  CHECK(liouville_check({0, 0, 0, 0}, 0.0, AvatarMap::identity(), opts).max_divergence <= 1e-10);
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const auto r = liouville_check({2, 1, -1, std::sqrt(2.0)}, 0.0, AvatarMap::random(seed), opts);
    CHECK(r.max_divergence <= 1e-6);
    CHECK(r.pass);
  }
  CHECK(code_of([] { (void)liouville_check({2, 0, 0, 1}, std::sqrt(3.0), AvatarMap::identity()); }) ==
        ErrorCode::massive_input);
  CHECK(code_of([] { (void)liouville_check({2, 0, 0, 1}, 0.0, AvatarMap::identity()); }) == ErrorCode::off_shell);

  const auto massive = massive_divergence_report({2, 0, 0, 1}, std::sqrt(3.0), AvatarMap::identity());
  CHECK_FALSE(massive.asserted);
  CHECK(massive.max_divergence <= 1e-6);
}

TEST_CASE("theta evaluators") {
  const auto lin = ExoticTheta::linear(0.3, {0.1, -0.2, 0.5});
  CHECK(lin.value({1, 1, 1}, 2.0) == doctest::Approx(0.6 + 0.4));
  const auto g = lin.gradient({0, 0, 0}, 0.0);
  CHECK(g[0] == 0.3);
  CHECK(g[3] == 0.5);

  ThetaGrid grid;
  grid.origin = {-1, -1, -1, -1};
  grid.spacing = {0.5, 0.5, 0.5, 0.5};
  grid.counts = {5, 5, 5, 5};
  for (std::size_t it = 0; it < 5; ++it)
    for (std::size_t ix = 0; ix < 5; ++ix)
      for (std::size_t iy = 0; iy < 5; ++iy)
        for (std::size_t iz = 0; iz < 5; ++iz) {
          const double t = -1 + 0.5 * it, x = -1 + 0.5 * ix, y = -1 + 0.5 * iy, z = -1 + 0.5 * iz;
          grid.values.push_back(0.3 * t + 0.1 * x - 0.2 * y + 0.5 * z);
        }
  const auto tab = ExoticTheta::tabulated(grid);
  CHECK(tab.value({0.1, 0.2, -0.3}, 0.4) == doctest::Approx(lin.value({0.1, 0.2, -0.3}, 0.4)));
  const auto tg = tab.gradient({0.1, 0.2, -0.3}, 0.4);
  for (int mu = 0; mu < 4; ++mu) CHECK(std::abs(tg[mu] - g[mu]) <= 1e-6);

  const auto wavy = ExoticTheta::analytic(
      [](const Position& x, double t) { return std::sin(t) * std::cos(x[0]) + x[1] * x[2]; },
      [](const Position& x, double t) {
        return FourVector{std::cos(t) * std::cos(x[0]), -std::sin(t) * std::sin(x[0]), x[2], x[1]};
      });
  std::vector<std::pair<Position, double>> pts;
  std::mt19937_64 rng(2);
  for (int k = 0; k < 20; ++k) pts.push_back({random_point(rng), 0.2 * k});
  CHECK(theta_gradient_consistency(lin, pts) <= 1e-6);
  CHECK(theta_gradient_consistency(wavy, pts) <= 1e-6);
  std::vector<std::pair<Position, double>> inner;
  for (int k = 0; k < 10; ++k) inner.push_back({{0.05 * k - 0.2, 0.1, 0.3}, 0.05 * k});
  CHECK(theta_gradient_consistency(tab, inner) <= 1e-6);
}

TEST_CASE("exotic Dirac operator") {
  std::mt19937_64 rng(9);
  const auto w = plane_wave({2, 0, 0, 1}, std::sqrt(3.0));
  for (int k = 0; k < 10; ++k) {
    const auto x = random_point(rng);
    CHECK(dist(exotic_dirac_apply(w, std::sqrt(3.0), ExoticTheta::zero(), x, 0.3),
               dirac_apply(w, std::sqrt(3.0), x, 0.3)) == 0.0);
  }

  const FSpinor psi0 = to_float(espinor(1, 2, 0, -1));
  const FMatrix g0 = to_float(gamma_basis<GR>().gamma[0]);
  const double kappa = 0.3;
  const FSpinor expected = Complex(0, kappa) * (g0 * psi0);
  CHECK(dist(exotic_dirac_apply(constant_field(psi0), 0.0, ExoticTheta::linear(kappa, {0, 0, 0}), {1, 2, 3}, 0.5),
             expected) <= 1e-15);

  const auto theta = ExoticTheta::linear(0.4, {0.2, -0.1, 0.3});
  const auto damped = damped_field(w, theta);
  for (int k = 0; k < 10; ++k) {
    const auto x = random_point(rng);
    CHECK(size(exotic_dirac_apply(damped, std::sqrt(3.0), theta, x, 0.1 * k)) <= 1e-12);
  }
  const auto wavy = ExoticTheta::analytic([](const Position& x, double t) { return 0.3 * std::sin(t + x[0]); },
                                          [](const Position& x, double t) {
                                            const double c = 0.3 * std::cos(t + x[0]);
                                            return FourVector{c, c, 0, 0};
                                          });
  const auto damped2 = damped_field(plane_wave({1, 0, 0, 1}, 0.0), wavy);
  CHECK(size(exotic_dirac_apply(damped2, 0.0, wavy, {0.4, 0, 0}, 0.2)) <= 1e-12);
}

TEST_CASE("exotic velocity") {
  std::mt19937_64 rng(10);
  const auto w = plane_wave({1, 0, 0, 1}, 0.0);
  for (int k = 0; k < 20; ++k) {
    const auto x = random_point(rng);
    const auto phi = AvatarMap::random(k + 1);
    CHECK(dist(exotic_velocity(w, x, 0.1 * k, ExoticTheta::zero(), phi), avatar_velocity(w, x, 0.1 * k, phi, 0.0)) <=
          1e-14);
  }

  const FSpinor psi0 = to_float(espinor(1, 2, 0, -1));
  const auto c = constant_field(psi0);
  const auto id = AvatarMap::identity();
  CHECK(dist(exotic_velocity(c, {0, 0, 0}, 0.0, ExoticTheta::linear(0.3, {0, 0, 0}), id), FSpinor(-0.3 * psi0)) <=
        1e-15);

  const Position kvec{0.2, -0.5, 0.1};
  const auto& b = gamma_basis<GR>();
  FMatrix gk;
  for (int j = 1; j <= 3; ++j) gk = gk + Complex(kvec[j - 1]) * to_float(b.gamma[j]);
  const FSpinor expected = -1.0 * (to_float(b.gamma[0]) * (gk * psi0));
  CHECK(dist(exotic_velocity(c, {1, 1, 1}, 0.0, ExoticTheta::linear(0.0, kvec), id), expected) <= 1e-15);
}

TEST_CASE("density integration") {
  const auto phi = AvatarMap::identity();
  EvolveConfig cfg;
  cfg.integrator.t_end = 1.0;
  cfg.integrator.dt = 1e-2;
  const auto r = evolve(cfg, phi);
  CHECK(r.massless);
  CHECK(r.asserted);
  CHECK(r.pass);
  CHECK(r.max_rho_relative_deviation <= 1e-6);
  CHECK(r.trajectory.samples.size() == 101);
  CHECK(r.trajectory.samples.back().t == doctest::Approx(1.0));
  for (const auto& s : r.trajectory.samples) CHECK(s.rho > 0.0);

  for (std::uint64_t seed = 1; seed <= 3; ++seed) CHECK(evolve(cfg, AvatarMap::random(seed)).pass);

  EvolveConfig massive = cfg;
  massive.momentum = {2, 0, 0, 1};
  massive.mass = std::sqrt(3.0);
  const auto mr = evolve(massive, phi);
  CHECK_FALSE(mr.massless);
  CHECK_FALSE(mr.asserted);

  IntegratorOptions bad;
  bad.dt = 0.0;
  const TimeVelocityField spin = [](const FSpinor& s, double) { return FSpinor(Complex(0, 40) * s); };
  CHECK(code_of([&] { (void)integrate_density(spin, to_float(espinor(1, 0, 0, 0)), 1.0, bad); }) ==
        ErrorCode::invalid_argument);
  IntegratorOptions coarse;
  coarse.dt = 0.5;
  CHECK(code_of([&] { (void)integrate_density(spin, to_float(espinor(1, 0, 0, 0)), 1.0, coarse); }) ==
        ErrorCode::step_too_large);

  // Uniform contraction: divergence -8, so rho grows like e^{8t}.
  IntegratorOptions fine;
  fine.t_end = 0.5;
  fine.dt = 1e-3;
  const TimeVelocityField shrink = [](const FSpinor& s, double) { return FSpinor(-1.0 * s); };
  const auto tr = integrate_density(shrink, to_float(espinor(1, 0, 0, 0)), 1.0, fine);
  CHECK(tr.samples.back().rho == doctest::Approx(std::exp(4.0)).epsilon(1e-8));
  CHECK(std::abs(tr.samples.back().psi[0] - std::exp(-0.5)) <= 1e-10);
}

TEST_CASE("exotic density law") {
  const auto phi = AvatarMap::identity();
  EvolveConfig cfg;
  cfg.integrator.t_end = 1.0;
  cfg.integrator.dt = 1e-2;

  const auto flat = exotic_density_check(ExoticTheta::zero(), 1.0, cfg, phi);
  CHECK(flat.max_density_deviation <= 1e-8);
  CHECK(std::abs(flat.normalized_rate_mean) <= 1e-8);

  const auto grow = exotic_density_check(ExoticTheta::linear(0.3, {0, 0, 0}), 2.0, cfg, phi);
  CHECK(std::abs(grow.normalized_rate_mean - 0.3) <= 1e-4);
  CHECK(grow.max_rate_deviation <= 1e-4);
  CHECK(grow.raw_rate_mean == doctest::Approx(8 * 0.3).epsilon(1e-6));
  CHECK(grow.max_density_deviation <= 1e-4);

  const auto stat = exotic_density_check(ExoticTheta::linear(0.0, {0.3, -0.2, 0.7}), 1.0, cfg, phi);
  CHECK(stat.max_density_deviation <= 1e-8);

  const auto rand_phi = exotic_density_check(ExoticTheta::linear(0.3, {0, 0, 0}), 1.0, cfg, AvatarMap::random(4));
  CHECK(std::abs(rand_phi.normalized_rate_mean - 0.3) <= 1e-4);
}
