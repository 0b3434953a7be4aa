#include <doctest.h>

#include <random>

#include "thetaprod/forms.hpp"
#include "thetaprod/functorial.hpp"
#include "thetaprod/suites.hpp"

using namespace thp;

TEST_SUITE("functorial") {

TEST_CASE("quasi-pullback of f1 to 2U is xi(f1)") {
  const TestLattice& t = test_lattice("2U+<-2>");
  AlgebraContext ctx = AlgebraContext::build(t.lattice, t.isotropic);
  IntMatrix lp(4, 5);
  for (std::size_t i = 0; i < 4; ++i) lp(i, i) = 1;
  QSeries f1 = catalog_f1(Rat(5));
  QSeries r = quasi_pullback(f1, ctx.disc_l(), lp);
  CHECK(r.weight() == 0);
  CHECK(r.fqm().size() == 1);
  CHECK(Bound(Rat(4)) < r.trunc());
  CHECK(agree_below(r, xi(ctx, f1), common_trunc(r, xi(ctx, f1))));
  CHECK(r.coeff(Rat(0)) == 12);
}

TEST_CASE("quasi-pullback to the whole lattice is the identity") {
  const TestLattice& t = test_lattice("2U+<-2>");
  QSeries f1 = catalog_f1(Rat(3));
  QSeries r = quasi_pullback(f1, DiscriminantForm(t.lattice), IntMatrix::identity(5));
  CHECK(r == f1);
}

TEST_CASE("quasi-pullback needs a negative-definite complement") {
  const TestLattice& t = test_lattice("2U+<-2>");
  IntMatrix lp(3, 5);
  lp(0, 0) = 1;
  lp(1, 1) = 1;
  lp(2, 4) = 1;
  CHECK_THROWS_AS(quasi_pullback(catalog_f1(Rat(3)), DiscriminantForm(t.lattice), lp), Error);
}

TEST_CASE("restricting I to a finite-index sublattice") {
  const TestLattice& t = test_lattice("2U+<-2>");
  IntMatrix lp = IntMatrix::identity(5);
  lp(0, 0) = 2;
  IsotropicRestriction r = restrict_isotropic(t.lattice, lp, t.isotropic);
  CHECK(r.index == 2);
  CHECK(r.ip.rows() == 2);
  IntMatrix same = IntMatrix::identity(5);
  CHECK(restrict_isotropic(t.lattice, same, t.isotropic).index == 1);
}

TEST_CASE("functoriality: split pair") {
  const TestLattice& big = test_lattice("2U+<-2>+<-2>");
  const TestLattice& small = test_lattice("2U+<-2>");
  IntMatrix lp(5, 6);
  for (std::size_t i = 0; i < 5; ++i) lp(i, i) = 1;
  AlgebraContext ctx = AlgebraContext::build(big.lattice, big.isotropic);
  AlgebraContext ctxp = AlgebraContext::build(small.lattice, small.isotropic);
  std::mt19937_64 rng(4);
  for (int k = 0; k < 3; ++k) {
    QSeries f = random_symmetric_series(ctx.disc_l().fqm(), Rat(-1), Rat(-2), Rat(4), rng);
    QSeries g = random_symmetric_series(ctx.disc_l().fqm(), Rat(-1), Rat(-2), Rat(4), rng);
    auto rep = check_functoriality(ctx, ctxp, lp, f, g);
    CHECK_MESSAGE(rep.ok, rep.detail);
    CHECK(rep.factor == 1);
    CHECK(Bound(Rat(0)) < rep.window);
  }
}

TEST_CASE("functoriality: index-2 pair and pushforward") {
  const TestLattice& t = test_lattice("2U+<-2>");
  IntMatrix lp = IntMatrix::identity(5);
  lp(0, 0) = 2;
  IsotropicRestriction ri = restrict_isotropic(t.lattice, lp, t.isotropic);
  AlgebraContext ctx = AlgebraContext::build(t.lattice, t.isotropic);
  AlgebraContext ctxp = AlgebraContext::build(sublattice_lattice(t.lattice, lp), ri.ip);
  auto gens = index_t_generators(1, ctx.disc_l(), Rat(6));
  std::mt19937_64 rng(8);
  for (int k = 0; k < 3; ++k) {
    QSeries f = random_combination(gens, rng), g = random_combination(gens, rng);
    auto rep = check_functoriality(ctx, ctxp, lp, f, g);
    CHECK_MESSAGE(rep.ok, rep.detail);
    CHECK(rep.factor == 2);
    CHECK(Bound(Rat(1)) < rep.window);
    const Fqm& ap = ctxp.disc_l().fqm();
    QSeries fp = random_symmetric_series(ap, ratio(Int(-1), Int(2)), Rat(-2), Rat(4), rng);
    QSeries gp = random_symmetric_series(ap, ratio(Int(-1), Int(2)), Rat(-2), Rat(4), rng);
    auto rp = check_pushforward(ctx, ctxp, lp, fp, gp);
    CHECK_MESSAGE(rp.ok, rp.detail);
  }
}

TEST_CASE("a wrong factor is detected") {
  const TestLattice& t = test_lattice("2U+<-2>");
  IntMatrix lp = IntMatrix::identity(5);
  lp(0, 0) = 2;
  IsotropicRestriction ri = restrict_isotropic(t.lattice, lp, t.isotropic);
  AlgebraContext ctx = AlgebraContext::build(t.lattice, t.isotropic);
  AlgebraContext ctxp = AlgebraContext::build(sublattice_lattice(t.lattice, lp), ri.ip);
  QSeries f1 = catalog_f1(Rat(5));
  QSeries r = quasi_pullback(f1, ctx.disc_l(), lp);
  QSeries x = xi(ctxp, r);
  CHECK(x.coeff(Rat(0)) == 24);
  // the context pair must match I cap L'
  CHECK_THROWS_AS(check_functoriality(ctx, ctx, lp, f1, f1), Error);
}

}  // TEST_SUITE
