#include <doctest.h>

#include <random>

#include "thetaprod/forms.hpp"
#include "thetaprod/suites.hpp"
#include "thetaprod/theta_algebra.hpp"

using namespace thp;

namespace {

AlgebraContext context(const std::string& name) {
  const TestLattice& t = test_lattice(name);
  return AlgebraContext::build(t.lattice, t.isotropic);
}

// xi for K+ = <2> by hand: sum_k f_0(n - k^2) + sum_k f_1(n - (k + 1/2)^2)
Rat xi_index1(const QSeries& f, long i0, long i1, const Rat& n) {
  Rat s = 0;
  for (long k = -20; k <= 20; ++k) {
    Rat a = n - Rat(k * k), b = n - Rat(k) * Rat(k) - Rat(k) - ratio(Int(1), Int(4));
    if (a >= f.leading().value()) s += f.coeff(i0, a);
    if (b >= f.leading().value()) s += f.coeff(i1, b);
  }
  return s;
}

}  // namespace

TEST_SUITE("theta_algebra") {

TEST_CASE("contexts of the test lattices") {
  for (const auto& t : test_lattices()) {
    AlgebraContext c = AlgebraContext::build(t.lattice, t.isotropic);
    CHECK(c.k().rank() + 4 == t.lattice.rank());
    CHECK(is_negative_definite(c.k()));
    CHECK(c.index_istar_i() == 1);
    CHECK(c.disc_k().fqm().size() == c.disc_l().fqm().size());
    auto [sp, sq] = signature(t.lattice);
    CHECK(c.weight() == ratio(Int(static_cast<long>(sp) - static_cast<long>(sq)), Int(2)));
    CHECK(has_right_unit(c) == (t.name == "2U"));
  }
}

TEST_CASE("non-maximal or imprimitive I is rejected") {
  const TestLattice& t = test_lattice("2U+<-2>");
  CHECK_THROWS_AS(AlgebraContext::build(t.lattice, IntMatrix::from_rows({{1, 0, 0, 0, 0}})), Error);
  CHECK_THROWS_AS(AlgebraContext::build(t.lattice, IntMatrix::from_rows({{2, 0, 0, 0, 0}, {0, 0, 1, 0, 0}})), Error);
}

TEST_CASE("xi(f1) = 12 and agrees with the hand formula") {
  AlgebraContext ctx = context("2U+<-2>");
  QSeries f1 = catalog_f1(Rat(5));
  QSeries x = xi(ctx, f1);
  CHECK(x.trunc() == Bound(Rat(5)));
  CHECK(x.nterms() == 1);
  CHECK(x.coeff(Rat(0)) == 12);
  QSeries f0 = catalog_f0(Rat(5));
  QSeries x0 = xi(ctx, f0);
  const Fqm& a = ctx.disc_l().fqm();
  long i1 = a.index(DiscriminantForm(ctx.lattice()).proj({0, 0, 0, 0, ratio(Int(1), Int(2))}));
  for (long n = -1; n < 5; ++n) CHECK(x0.coeff(Rat(n)) == xi_index1(f0, 0, i1, Rat(n)));
  CHECK(x0.coeff(Rat(-1)) == 1);
}

TEST_CASE("star agrees with the direct triple sum") {
  std::mt19937_64 rng(21);
  for (const char* name : {"2U+<-2>", "2U+<-4>"}) {
    AlgebraContext ctx = context(name);
    long t = std::string(name) == "2U+<-2>" ? 1 : 2;
    auto gens = index_t_generators(t, ctx.disc_l(), Rat(6));
    const Fqm& a = ctx.disc_l().fqm();
    for (int it = 0; it < 2; ++it) {
      QSeries f = random_combination(gens, rng), g = random_combination(gens, rng);
      QSeries p = star(ctx, f, g);
      Bound w = min(p.trunc(), star_oracle_trunc(f, g));
      REQUIRE(Bound(Rat(0)) < w);
      long checked = 0;
      for (long i = 0; i < a.size(); ++i) {
        Rat q = a.q(a.elem(i));
        for (Rat n = q - 3; Bound(n) < w; n += 1) {
          CHECK(p.coeff(i, n) == star_coeff_oracle(ctx, f, g, a.elem(i), n));
          ++checked;
        }
      }
      CHECK(checked > 10);
    }
  }
}

TEST_CASE("bracket [f1, f0] = 12 f0 - xi(f0) f1") {
  AlgebraContext ctx = context("2U+<-2>");
  QSeries f1 = catalog_f1(Rat(6)), f0 = catalog_f0(Rat(6));
  QSeries b = bracket(ctx, f1, f0);
  QSeries want = sub(scale(f0, Rat(12)), mul_scalar_series(xi(ctx, f0), f1));
  Bound w = common_trunc(b, want);
  CHECK(Bound(Rat(4)) <= w);
  CHECK(agree_below(b, want, w));
  long i1 = ctx.disc_l().fqm().index(ctx.disc_l().proj({0, 0, 0, 0, ratio(Int(1), Int(2))}));
  CHECK(b.coeff(i1, ratio(Int(-5), Int(4))) == -1);
  CHECK(in_theta_perp(ctx, b));
  CHECK_FALSE(in_theta_perp(ctx, f1));
}

TEST_CASE("left unit and annihilator") {
  AlgebraContext ctx = context("2U+<-2>");
  QSeries f1 = catalog_f1(Rat(6)), f0 = catalog_f0(Rat(6));
  QSeries u = scale(f1, ratio(Int(1), Int(12)));
  CHECK(is_left_unit(ctx, u));
  CHECK_FALSE(is_left_unit(ctx, f1));
  QSeries jf0 = mul_scalar_series(j_series(Rat(8)), f0);
  for (const QSeries& g : {f0, f1, jf0}) {
    QSeries p = star(ctx, u, g);
    CHECK(agree_below(p, g, common_trunc(p, g)));
  }
  QSeries b1 = bracket(ctx, f1, f0), b2 = bracket(ctx, f1, jf0);
  CHECK(in_theta_perp(ctx, b2));
  QSeries z = star(ctx, b1, b2);
  CHECK(Bound(Rat(0)) < z.trunc());
  CHECK(z.is_zero());
  for (const QSeries& g : {f0, f1, jf0}) {
    QSeries y = star(ctx, b2, g);
    CHECK(Bound(Rat(0)) < y.trunc());
    CHECK(y.is_zero());
  }
}

TEST_CASE("fitting polynomials in j") {
  QSeries j = j_series(Rat(6));
  QSeries s = add(add(mul_scalar_series(j, j), scale(j, Rat(3))), scale(scalar_one().truncated(Bound(Rat(4))), Rat(-5)));
  CHECK(fit_j_polynomial(s) == std::vector<Rat>{Rat(-5), Rat(3), Rat(1)});
  QSeries bad = QSeries::scalar(Rat(0), Bound(Rat(3)));
  bad.add_term(Rat(1), Rat(1));
  CHECK_THROWS_AS(fit_j_polynomial(bad), Error);
  QSeries frac = QSeries::scalar(Rat(0), Bound(Rat(3)));
  frac.add_term(ratio(Int(1), Int(2)), Rat(1));
  CHECK_THROWS_AS(fit_j_polynomial(frac), Error);
}

TEST_CASE("operand checks") {
  AlgebraContext ctx = context("2U+<-2>");
  QSeries f1 = catalog_f1(Rat(3));
  QSeries wrong = f1;
  wrong.set_weight(Rat(0));
  try {
    (void)xi(ctx, wrong);
    FAIL("expected a mismatch");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::mismatch);
  }
  AlgebraContext other = context("2U+<-4>");
  CHECK_THROWS_AS(xi(other, f1), Error);
}

TEST_CASE("randomized splits give one down map") {
  for (const auto& t : test_lattices()) {
    AlgebraContext base = AlgebraContext::build(t.lattice, t.isotropic);
    for (unsigned seed = 1; seed <= 5; ++seed) {
      std::mt19937_64 rng(seed);
      AlgebraContext c = AlgebraContext::build(t.lattice, t.isotropic, &rng);
      CHECK(c.down_lk() == base.down_lk());
    }
  }
}

}  // TEST_SUITE
