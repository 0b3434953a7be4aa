#include <doctest.h>

#include <random>

#include "thetaprod/exact.hpp"

using namespace thp;

TEST_SUITE("exact") {

TEST_CASE("ratio canonicalizes, the raw two-argument constructor does not") {
  Rat r = ratio(Int(4), Int(8));
  CHECK(r.get_num() == 1);
  CHECK(r.get_den() == 2);
  CHECK(ratio(Int(3), Int(-6)) == Rat(-1, 2));
  CHECK_THROWS_AS(ratio(Int(1), Int(0)), Error);
}

TEST_CASE("frac, floor, ceil") {
  CHECK(frac(ratio(Int(-1), Int(4))) == ratio(Int(3), Int(4)));
  CHECK(frac(Rat(5)) == 0);
  CHECK(rat_floor(ratio(Int(-7), Int(2))) == -4);
  CHECK(rat_ceil(ratio(Int(-7), Int(2))) == -3);
  CHECK(floor_div(Int(-7), Int(2)) == -4);
  CHECK(lcm(Int(4), Int(6)) == 12);
}

TEST_CASE("rational strings") {
  CHECK(to_string(ratio(Int(-3), Int(4))) == "-3/4");
  CHECK(to_string(Rat(12)) == "12");
  CHECK(parse_rat("6/8") == ratio(Int(3), Int(4)));
  CHECK(parse_rat("-5") == -5);
  CHECK_THROWS(parse_rat("1/0"));
  CHECK_THROWS(parse_rat("x"));
}

TEST_CASE("bounds order infinity last") {
  Bound a(Rat(3)), inf = Bound::infinity();
  CHECK(a < inf);
  CHECK_FALSE(inf < a);
  CHECK((a + inf).is_inf());
  CHECK(min(a, inf) == a);
  CHECK(max(a, Bound(Rat(5))) == Bound(Rat(5)));
}

TEST_CASE("hnf example") {
  IntMatrix m = IntMatrix::from_rows({{0, 2}, {1, 1}});
  Hnf h = matrix_hnf(m);
  CHECK(h.H == IntMatrix::from_rows({{1, 1}, {0, 2}}));
  CHECK(h.U * m == h.H);
  CHECK((determinant(h.U) == 1 || determinant(h.U) == -1));
}

TEST_CASE("hnf of [[2,1],[0,1]] reduces the entry above the pivot") {
  CHECK(hnf_basis(IntMatrix::from_rows({{2, 1}, {0, 1}})) == IntMatrix::from_rows({{2, 0}, {0, 1}}));
}

TEST_CASE("snf examples") {
  IntMatrix a = IntMatrix::from_rows({{2, 0}, {0, -2}});
  Snf s = matrix_snf(a);
  CHECK(s.D == IntMatrix::from_rows({{2, 0}, {0, 2}}));
  CHECK(s.U * a * s.V == s.D);
  IntMatrix b = IntMatrix::from_rows({{2, 1}, {0, 2}});
  Snf t = matrix_snf(b);
  CHECK(t.D == IntMatrix::from_rows({{1, 0}, {0, 4}}));
  CHECK(t.U * b * t.V == t.D);
}

TEST_CASE("random hnf and snf are consistent") {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> d(-6, 6);
  for (int it = 0; it < 40; ++it) {
    IntMatrix m(3, 3);
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) m(i, j) = d(rng);
    Hnf h = matrix_hnf(m);
    CHECK(h.U * m == h.H);
    Int du = determinant(h.U);
    CHECK((du == 1 || du == -1));
    Snf s = matrix_snf(m);
    CHECK(s.U * m * s.V == s.D);
    Int prod = 1;
    for (std::size_t i = 0; i < 3; ++i) {
      CHECK(s.D(i, i) >= 0);
      if (i + 1 < 3 && s.D(i, i) != 0) CHECK(s.D(i + 1, i + 1) % s.D(i, i) == 0);
      prod *= s.D(i, i);
    }
    Int dm = determinant(m);
    CHECK(prod == (dm < 0 ? Int(-dm) : dm));
  }
}

TEST_CASE("ldl of A2") {
  RatMatrix g = to_rat(IntMatrix::from_rows({{2, -1}, {-1, 2}}));
  Ldl l = rational_ldl(g);
  CHECK(l.D == std::vector<Rat>{Rat(2), ratio(Int(3), Int(2))});
  RatMatrix d(2, 2);
  d(0, 0) = l.D[0];
  d(1, 1) = l.D[1];
  CHECK(l.L * d * l.L.transpose() == g);
  CHECK_THROWS_AS(rational_ldl(to_rat(IntMatrix::from_rows({{0, 1}, {1, 0}}))), Error);
}

TEST_CASE("inverse, kernel, solve") {
  RatMatrix m = to_rat(IntMatrix::from_rows({{2, 1}, {1, 1}}));
  CHECK(inverse(m) * m == RatMatrix::identity(2));
  IntMatrix k = left_kernel(IntMatrix::from_rows({{1, 2}, {2, 4}, {0, 1}}));
  CHECK(k.rows() == 1);
  CHECK(k * IntMatrix::from_rows({{1, 2}, {2, 4}, {0, 1}}) == IntMatrix(1, 2));
  auto z = solve_left(m, RatVec{Rat(3), Rat(2)});
  REQUIRE(z);
  CHECK(vec_mul(*z, m) == RatVec{Rat(3), Rat(2)});
  CHECK_FALSE(solve_left(to_rat(IntMatrix::from_rows({{1, 0}})), RatVec{Rat(0), Rat(1)}));
}

TEST_CASE("cyclotomic arithmetic") {
  CycNum i = CycNum::root(ratio(Int(1), Int(4)));
  CHECK(i * i == CycNum(-1));
  CycNum z3 = CycNum::root(ratio(Int(1), Int(3)));
  CHECK(CycNum(1) + z3 + z3 * z3 == CycNum(0));
  CycNum s2 = CycNum::sqrt(Int(2));
  CHECK(s2 * s2 == CycNum(2));
  CycNum s3 = CycNum::sqrt(Int(3));
  CHECK(s3 * s3 == CycNum(3));
  CHECK((z3 * z3.conj()).as_rational() == Rat(1));
  CHECK(CycNum::root(ratio(Int(1), Int(8))) * CycNum::root(ratio(Int(-1), Int(8))) == CycNum(1));
  // sqrt 2 = e(1/8) + e(-1/8)
  CHECK(CycNum::root(ratio(Int(1), Int(8))) + CycNum::root(ratio(Int(-1), Int(8))) == s2);
}

}  // TEST_SUITE
