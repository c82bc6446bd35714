#include <doctest.h>

#include <cmath>
#include <functional>
#include <numbers>

#include "support.hpp"

using namespace sft;

namespace {

using ECand = SymmetryCandidate<GR>;

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode{};
}

ECand oracle_candidate(const Json& e) {
  ECand s;
  s.matrix = matrix_from_json<GR>(e["matrix"]);
  s.antilinear = e["antilinear"].get<bool>();
  return s;
}

ECand named(const std::string& n) { return *named_candidate<GR>(n); }

// Generator family: c I, gamma5, rational rotations and boosts, parity.
ECand random_generator(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> pick(0, 4);
  std::uniform_int_distribution<int> num(-4, 4);
  std::uniform_int_distribution<int> den(5, 9);
  std::uniform_int_distribution<int> axis(1, 3);
  const Rational t(num(rng), den(rng));
  switch (pick(rng)) {
    case 0: {
      GR c = random_gaussian_rational(rng);
      if (c.is_zero()) c = G(1, 1);
      return scalar_candidate(c);
    }
    case 1:
      return named("gamma5");
    case 2: {
      int i = axis(rng), j = axis(rng);
      if (i == j) j = i % 3 + 1;
      return rotation_candidate<GR>(std::min(i, j), std::max(i, j), t);
    }
    case 3:
      return boost_candidate<GR>(axis(rng), t);
    default:
      return named("gamma0");
  }
}

}  // namespace

TEST_CASE("conjugate action examples") {
  const auto& ca = oracle()["conjugate_action"];
  const auto& b = gamma_basis<GR>();
  CHECK(conjugate_action(ECand{}, b.gamma5) == b.gamma5);
  CHECK(conjugate_action(named("gamma5"), EMatrix::identity()) == -EMatrix::identity());
  CHECK(conjugate_action(scalar_candidate(G(2)), b.gamma[1]) == G(4) * b.gamma[1]);
  CHECK(conjugate_action(ECand{}, b.gamma5) == matrix_from_json<GR>(ca["identity_on_gamma5"]));
  CHECK(conjugate_action(named("gamma5"), EMatrix::identity()) == matrix_from_json<GR>(ca["gamma5_on_identity"]));
  CHECK(conjugate_action(scalar_candidate(G(2)), b.gamma[1]) == matrix_from_json<GR>(ca["two_identity_on_gamma1"]));
}

TEST_CASE("beta maps match the independent oracle") {
  for (const auto& e : oracle()["beta_maps"]) {
    CAPTURE(e["name"].get<std::string>());
    const auto bm = beta_extract(oracle_candidate(e));
    CHECK(same_transforms(bm, oracle_beta(e)));
  }
}

TEST_CASE("gamma5 is strict with the expected factors") {
  const auto bm = beta_extract(named("gamma5"));
  CHECK(bm.strict);
  CHECK(bm.beta_scalar == -1);
  CHECK(bm.beta_pseudoscalar == -1);
  CHECK(bm.L_J == RealMatrix<Rational, 4>::identity());
  CHECK(bm.L_K == RealMatrix<Rational, 4>::identity());
  CHECK(bm.L_S == Rational(-1) * RealMatrix<Rational, 6>::identity());
}

TEST_CASE("scalar candidates give |c|^2 everywhere") {
  std::mt19937_64 rng(21);
  for (int k = 0; k < 20; ++k) {
    GR c = random_gaussian_rational(rng);
    if (c.is_zero()) continue;
    const auto bm = beta_extract(scalar_candidate(c));
    const Rational n = norm(c);
    CHECK(bm.strict);
    CHECK(bm.beta_scalar == n);
    CHECK(bm.beta_pseudoscalar == n);
    CHECK(bm.L_J.as_scalar() == n);
    CHECK(bm.L_K.as_scalar() == n);
    CHECK(bm.L_S.as_scalar() == n);
  }
}

TEST_CASE("parity is sectorwise") {
  const auto bm = beta_extract(named("gamma0"));
  CHECK_FALSE(bm.strict);
  CHECK(bm.beta_scalar == 1);
  CHECK(bm.beta_pseudoscalar == -1);
  CHECK(bm.L_J == RealMatrix<Rational, 4>::diagonal({1, -1, -1, -1}));
  // K is axial, so its sign pattern is the opposite of J's.
  CHECK(bm.L_K == RealMatrix<Rational, 4>::diagonal({-1, 1, 1, 1}));
}

TEST_CASE("sector-mixing candidates are rejected with leaks") {
  const EMatrix proj = EMatrix::diagonal({G(1), G(1), G(0), G(0)});
  ECand p;
  p.matrix = proj;
  try {
    (void)beta_extract(p);
    FAIL("expected NotASymmetryError");
  } catch (const NotASymmetryError& e) {
    CHECK(e.code() == ErrorCode::not_a_symmetry);
    CHECK_FALSE(e.leaks().empty());
  }
  ECand mix;
  mix.matrix = EMatrix::identity() + gamma_basis<GR>().gamma[1];
  CHECK_THROWS_AS(beta_extract(mix), NotASymmetryError);
}

TEST_CASE("float extraction agrees with exact") {
  for (const auto& e : oracle()["beta_maps"]) {
    CAPTURE(e["name"].get<std::string>());
    const ECand s = oracle_candidate(e);
    SymmetryCandidate<Complex> f;
    f.matrix = to_float(s.matrix);
    f.antilinear = s.antilinear;
    const auto bf = beta_extract(f);
    const auto be = beta_extract(s);
    CHECK(bf.strict == be.strict);
    CHECK(std::abs(bf.beta_scalar - be.beta_scalar.get_d()) <= 1e-12);
    CHECK(max_abs_diff(bf.L_S, [&] {
            RealMatrix<double, 6> m;
            for (int i = 0; i < 6; ++i)
              for (int j = 0; j < 6; ++j) m(i, j) = be.L_S(i, j).get_d();
            return m;
          }()) <= 1e-12);
  }
}

TEST_CASE("compose and inverse examples") {
  const ECand g5 = named("gamma5");
  const auto gg = compose(g5, g5);
  CHECK(gg.matrix == EMatrix::identity());
  const auto bgg = beta_extract(gg);
  CHECK(bgg.strict);
  CHECK(bgg.beta_scalar == 1);
  CHECK(bgg.L_S.as_scalar() == Rational(1));

  const GR c{Q("1/2"), Q("-2")};
  const GR d{Q("3"), Q("1/3")};
  const auto cd = compose(scalar_candidate(c), scalar_candidate(d));
  CHECK(cd.matrix == (c * d) * EMatrix::identity());
  CHECK(beta_extract(cd).beta_scalar == norm(c * d));

  const auto g5c = compose(g5, scalar_candidate(c));
  CHECK(g5c.matrix == c * g5.matrix);
  CHECK(beta_extract(g5c).beta_scalar == -norm(c));

  CHECK(inverse(g5).matrix == g5.matrix);
  const auto half = inverse(scalar_candidate(G(2)));
  CHECK(half.matrix == GR{Q("1/2")} * EMatrix::identity());
  CHECK(beta_extract(half).beta_scalar == Q("1/4"));

  ECand sing;
  sing.matrix = EMatrix::diagonal({G(1), G(1), G(0), G(0)});
  CHECK(code_of([&] { (void)inverse(sing); }) == ErrorCode::singular_matrix);
}

TEST_CASE("antilinear composition") {
  const auto& o = oracle_entry("beta_maps", "charge_i_gamma2");
  const ECand c = oracle_candidate(o);
  const auto cc = compose(c, c);
  CHECK_FALSE(cc.antilinear);
  std::mt19937_64 rng(31);
  for (int k = 0; k < 20; ++k) {
    const ESpinor psi = random_spinor(rng);
    CHECK(act(cc, psi) == act(c, act(c, psi)));
    const ECand mixed = compose(c, named("gamma5"));
    CHECK(mixed.antilinear);
    CHECK(act(mixed, psi) == act(c, act(named("gamma5"), psi)));
    const ECand ci = inverse(c);
    CHECK(act(ci, act(c, psi)) == psi);
  }
}

TEST_CASE("beta maps are multiplicative on random words") {
  std::mt19937_64 rng(2024);
  for (int k = 0; k < 100; ++k) {
    const ECand x = random_generator(rng);
    const ECand y = random_generator(rng);
    const auto bxy = beta_extract(compose(x, y));
    const auto prod = beta_product(beta_extract(x), beta_extract(y));
    REQUIRE(same_transforms(bxy, prod));
  }
}

TEST_CASE("inverse law") {
  std::mt19937_64 rng(77);
  for (int k = 0; k < 40; ++k) {
    const ECand x = random_generator(rng);
    CHECK(same_transforms(beta_extract(inverse(x)), beta_inverse(beta_extract(x))));
  }
}

TEST_CASE("rescaling lemma") {
  const auto l5 = verify_rescaling_lemma(named("gamma5"));
  CHECK(l5.alpha == -1);
  CHECK(l5.beta == -1);
  CHECK(l5.holds);
  CHECK(l5.determinant_route_holds);
  CHECK(sgn(l5.identity_residual) == 0);

  const GR c{Q("2"), Q("1")};
  const auto lc = verify_rescaling_lemma(scalar_candidate(c));
  CHECK(lc.alpha == 5);
  CHECK(lc.beta == 5);
  CHECK(lc.holds);

  const auto lr = verify_rescaling_lemma(rotation_candidate<GR>(1, 2, Q("1/3")));
  CHECK(lr.alpha == 1);
  CHECK(lr.beta == 1);
  CHECK(lr.holds);
  CHECK(lr.determinant_route_holds);

  std::mt19937_64 rng(5);
  for (int k = 0; k < 60; ++k) {
    const auto l = verify_rescaling_lemma(random_generator(rng));
    CHECK(l.holds);
    CHECK(l.determinant_route_holds);
  }
  for (const auto& e : oracle()["beta_maps"]) {
    const auto l = verify_rescaling_lemma(oracle_candidate(e));
    CHECK(l.holds);
    CHECK(l.determinant_route_holds);
    CHECK(sgn(l.identity_residual) == 0);
  }

  ECand sing;
  sing.matrix = EMatrix::diagonal({G(1), G(1), G(0), G(0)});
  CHECK(code_of([&] { (void)verify_rescaling_lemma(sing); }) == ErrorCode::precondition);
}

TEST_CASE("class preservation by the generator family") {
  std::vector<ECand> family{named("gamma5"), scalar_candidate(GR{Q("2"), Q("-1/3")}),
                            rotation_candidate<GR>(2, 3, Q("1/2")), boost_candidate<GR>(1, Q("-1/3")),
                            named("gamma0")};
  for (const auto& s : family)
    for (int cls = 1; cls <= 6; ++cls) {
      CAPTURE(s.label);
      CAPTURE(cls);
      const auto r = preserves_class(s, LounestoClass(cls), 100, 1);
      CHECK(r.pass);
      CHECK(r.preserved == 100);
      CHECK(r.fpk_violations == 0);
      CHECK(r.counterexamples.empty());
    }
}

TEST_CASE("projector does not preserve regular classes") {
  ECand p;
  p.matrix = EMatrix::diagonal({G(1), G(1), G(0), G(0)});
  const auto r = preserves_class(p, LounestoClass(1), 100, 1);
  CHECK_FALSE(r.pass);
  CHECK_FALSE(r.invertible);
  CHECK(r.changed + r.zero_current == 100);
  CHECK_FALSE(r.counterexamples.empty());
  CHECK(r.counterexamples.size() <= 5);
  const Json input = Json::parse(r.counterexamples.front().input);
  CHECK(classify(spinor_from_json<GR>(input)).value() == 1);
}

TEST_CASE("float candidates preserve classes in float mode") {
  SymmetryCandidate<Complex> s;
  s.matrix = to_float(rotation_candidate<GR>(1, 3, Q("2/7")).matrix);
  for (int cls = 1; cls <= 6; ++cls) CHECK(preserves_class(s, LounestoClass(cls), 50, 3).pass);
}

TEST_CASE("type-6 block candidates") {
  const Block2<GR> I2{G(1), G(0), G(0), G(1)};
  const Block2<GR> Z2{};
  CHECK(type6_block(I2, I2, BlockLayout::diagonal).matrix == EMatrix::identity());

  const ESpinor chiral{{GR{Q("2/3"), Q("1")}, G(-1, 2), G(0), G(0)}};
  REQUIRE(classify(chiral).value() == 6);
  const auto up = type6_block(I2, Z2, BlockLayout::diagonal);
  CHECK(act(up, chiral) == chiral);
  CHECK(classify(act(up, chiral)).value() == 6);

  const auto swap = type6_block(Z2, I2, BlockLayout::antidiagonal);
  const ESpinor moved = act(swap, chiral);
  CHECK(moved == ESpinor{{G(0), G(0), chiral[0], chiral[1]}});
  CHECK(classify(moved).value() == 6);

  CHECK(code_of([&] { (void)type6_block(Z2, Z2, BlockLayout::diagonal); }) == ErrorCode::both_blocks_zero);

  const Block2<GR> A{G(1), G(2), G(0), G(3)};
  const Block2<GR> B{G(0, 1), G(0), G(1), G(1)};
  const auto blk = type6_block(A, B, BlockLayout::diagonal);
  const auto inv = inverse(blk);
  CHECK(inv.matrix(0, 2).is_zero());
  CHECK(inv.matrix(3, 1).is_zero());
  CHECK(blk.matrix * inv.matrix == EMatrix::identity());
}

TEST_CASE("rays") {
  std::mt19937_64 rng(8);
  for (int k = 0; k < 20; ++k) {
    const ESpinor psi = random_spinor(rng);
    CHECK(ray_equal(psi, ESpinor(G(0, 1) * psi)));
    CHECK(ray_equal(psi, ESpinor(GR{Q("3/5"), Q("4/5")} * psi)));
    CHECK_FALSE(ray_equal(psi, ESpinor(G(2) * psi)));
  }
  CHECK_FALSE(ray_equal(espinor(1, 0, 0, 0), espinor(0, 1, 0, 0)));
  CHECK(code_of([] { (void)ray_equal(ESpinor{}, espinor(1, 0, 0, 0)); }) == ErrorCode::zero_spinor);
  const auto f = to_float(espinor(1, 2, 3, 4));
  CHECK(ray_equal(f, Spinor<Complex>(std::polar(1.0, 0.7) * f)));
}

TEST_CASE("phase consistency examples") {
  const ESpinor m = espinor(1, 0, 1, 0);
  const ESpinor n{{G(0), G(1, 1), G(2), G(0, -1)}};
  const double pi = std::numbers::pi;
  REQUIRE(phase_consistency(m, n, pi / 3, pi / 3).has_value());
  CHECK(*phase_consistency(m, n, pi / 3, pi / 3) == doctest::Approx(pi / 3));
  CHECK_FALSE(phase_consistency(m, n, 0.0, pi).has_value());
  const double phi = 0.4;
  REQUIRE(phase_consistency(m, n, phi, phi + 2 * pi).has_value());
  CHECK(*phase_consistency(m, n, phi, phi + 2 * pi) == doctest::Approx(phi));
  CHECK(code_of([&] { (void)phase_consistency(m, ESpinor(G(0, 3) * m), 0.0, 0.0); }) ==
        ErrorCode::linearly_dependent);
}

TEST_CASE("phase consistency on a 64x64 grid") {
  // Angles k*pi/16 for k in [0, 64) span two full turns, so every angle
  // has exactly one other grid partner congruent mod 2 pi.
  const double pi = std::numbers::pi;
  std::mt19937_64 rng(64);
  const auto m = to_float(random_spinor(rng));
  const auto n = to_float(random_spinor(rng));
  int mismatches = 0;
  for (int i = 0; i < 64; ++i)
    for (int j = 0; j < 64; ++j) {
      const bool congruent = (i - j) % 32 == 0;
      const auto r = phase_consistency(m, n, i * pi / 16, j * pi / 16);
      if (r.has_value() != congruent) ++mismatches;
      if (r) CHECK(*r == doctest::Approx(i * pi / 16));
    }
  CHECK(mismatches == 0);
}

TEST_CASE("group check") {
  const auto rep = group_check<GR>({named("gamma5"), named("-identity"), named("identity")});
  CHECK(rep.elements.size() == 4);
  CHECK(rep.is_group());

  const auto dihedral = group_check<GR>({named("gamma0"), named("gamma5")}, 6);
  CHECK(dihedral.is_group());
  CHECK(dihedral.elements.size() == 8);

  // gamma1 squares to -I; i*gamma1 squares to I.
  const auto g1 = group_check<GR>({named("gamma1")});
  CHECK(g1.elements.size() == 4);
  CHECK(g1.is_group());

  // An infinite-order generator never closes.
  const auto inf = group_check<GR>({scalar_candidate(G(2))}, 4);
  CHECK_FALSE(inf.closed);
  CHECK_FALSE(inf.is_group());

  ECand sing;
  sing.matrix = EMatrix::diagonal({G(1), G(1), G(0), G(0)});
  CHECK(code_of([&] { (void)group_check<GR>({sing}); }) == ErrorCode::singular_matrix);
}
