#include <doctest.h>

#include <random>

#include "thetaprod/lattice.hpp"
#include "thetaprod/qseries.hpp"
#include "thetaprod/suites.hpp"

using namespace thp;

namespace {

QSeries random_scalar(long lo, long trunc, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> d(-4, 4);
  QSeries s = QSeries::scalar(Rat(0), Bound(Rat(trunc)));
  s.add_term(Rat(lo), Rat(1 + (d(rng) & 3)));
  for (long n = lo + 1; n < trunc; ++n) s.add_term(Rat(n), Rat(d(rng)));
  return s;
}

}  // namespace

TEST_SUITE("qseries") {

TEST_CASE("terms beyond trunc are dropped and unreadable") {
  QSeries f = QSeries::scalar(Rat(0), Bound(Rat(2)));
  f.add_term(Rat(1), Rat(3));
  f.add_term(Rat(2), Rat(5));
  CHECK(f.nterms() == 1);
  CHECK(f.coeff(Rat(1)) == 3);
  CHECK(f.coeff(Rat(0)) == 0);
  try {
    (void)f.coeff(Rat(2));
    FAIL("expected a truncation error");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::truncation);
  }
  f.add_term(Rat(1), Rat(-3));
  CHECK(f.is_zero());
  CHECK(f.leading().is_inf());
  CHECK(f.lead_eff() == Bound(Rat(2)));
}

TEST_CASE("truncate only lowers") {
  QSeries f = QSeries::scalar(Rat(0), Bound(Rat(3)));
  for (long n = 0; n < 3; ++n) f.add_term(Rat(n), Rat(1));
  f.truncate(Bound(Rat(5)));
  CHECK(f.trunc() == Bound(Rat(3)));
  f.truncate(Bound(Rat(1)));
  CHECK(f.trunc() == Bound(Rat(1)));
  CHECK(f.nterms() == 1);
}

TEST_CASE("products agree with the naive Cauchy product") {
  std::mt19937_64 rng(5);
  for (int it = 0; it < 20; ++it) {
    QSeries a = random_scalar(-1, 6, rng), b = random_scalar(-2, 5, rng);
    QSeries p = mul_scalar_series(a, b);
    // window: min(6 + (-2), 5 + (-1)) = 4
    CHECK(p.trunc() == Bound(Rat(4)));
    for (long n = -3; n < 4; ++n) {
      Rat want = 0;
      for (long i = -1; i < 6; ++i) {
        long j = n - i;
        if (j >= -2 && j < 5) want += a.coeff(Rat(i)) * b.coeff(Rat(j));
      }
      CHECK(p.coeff(Rat(n)) == want);
    }
  }
}

TEST_CASE("inverse and powers") {
  std::mt19937_64 rng(9);
  for (int it = 0; it < 10; ++it) {
    QSeries a = random_scalar(-1, 7, rng);
    QSeries inv = scalar_inverse(a);
    CHECK(inv.trunc() == Bound(Rat(9)));
    QSeries one = mul_scalar_series(a, inv);
    CHECK(agree_below(one, scalar_one(), one.trunc()));
    CHECK(one.trunc() == Bound(Rat(7) + Rat(1)));
    QSeries a3 = scalar_pow(a, 3);
    QSeries a3n = mul_scalar_series(a, mul_scalar_series(a, a));
    CHECK(agree_below(a3, a3n, common_trunc(a3, a3n)));
    QSeries am2 = scalar_pow(a, -2);
    QSeries back = mul_scalar_series(am2, mul_scalar_series(a, a));
    CHECK(agree_below(back, scalar_one(), back.trunc()));
  }
  QSeries mixed = QSeries::scalar(Rat(0), Bound(Rat(2)));
  mixed.add_term(Rat(0), Rat(1));
  mixed.add_term(ratio(Int(1), Int(2)), Rat(1));
  CHECK_THROWS_AS(scalar_inverse(mixed), Error);
}

TEST_CASE("vector-valued arithmetic, symmetry and principal parts") {
  Fqm a = DiscriminantForm(diagonal_lattice({-4})).fqm();
  std::mt19937_64 rng(1);
  QSeries f = random_symmetric_series(a, ratio(Int(-1), Int(2)), Rat(-2), Rat(3), rng);
  CHECK(check_symmetry(f));
  CHECK(exponents_match_fqm(f));
  QSeries g = add(f, scale(f, Rat(-1)));
  CHECK(g.is_zero());
  CHECK(apply_linmap(FqmLinMap::identity(a), f) == f);
  PrincipalPart p = principal_part(f);
  for (const auto& [k, v] : p.terms) {
    CHECK(k.second < 0);
    CHECK(f.coeff(k.first, k.second) == v);
  }
  CHECK_FALSE(p.constant.has_value());
  CHECK(filtration_degree(f) == to_ll(rat_ceil(-f.leading().value())));

  QSeries h(a, Rat(0), Bound(Rat(1)));
  h.add_term(1L, ratio(Int(-1), Int(8)), Rat(1));
  CHECK_FALSE(check_symmetry(h));
  h.add_term(3L, ratio(Int(-1), Int(8)), Rat(1));
  CHECK(check_symmetry(h));
  h.add_term(0L, Rat(0), Rat(7));
  PrincipalPart ph = principal_part(h);
  REQUIRE(ph.constant.has_value());
  CHECK(ph.constant->at(0) == 7);
  QSeries bad(a, Rat(0), Bound(Rat(1)));
  bad.add_term(1L, Rat(-1), Rat(1));
  CHECK_FALSE(exponents_match_fqm(bad));
}

TEST_CASE("contraction pairs with the negated module") {
  Fqm a = DiscriminantForm(diagonal_lattice({-2})).fqm();
  QSeries f(a, Rat(0), Bound(Rat(3))), g(a.scaled(-1), Rat(0), Bound(Rat(3)));
  f.add_term(0L, Rat(0), Rat(2));
  f.add_term(1L, ratio(Int(-1), Int(4)), Rat(1));
  g.add_term(0L, Rat(0), Rat(1));
  g.add_term(1L, ratio(Int(1), Int(4)), Rat(3));
  QSeries c = contract(f, g);
  CHECK(c.coeff(Rat(0)) == 2 + 3);
  CHECK_THROWS_AS(contract(f, f), Error);
}

}  // TEST_SUITE
