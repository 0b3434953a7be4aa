#include <doctest.h>

#include "oracles.hpp"
#include "thetaprod/forms.hpp"
#include "thetaprod/suites.hpp"
#include "thetaprod/theta.hpp"

using namespace thp;

TEST_SUITE("theta") {

TEST_CASE("E8 theta equals E4 and the coordinate-model count") {
  const long n = 11;
  QSeries th = theta_series(e8_lattice(), Rat(n));
  QSeries e4 = eisenstein_e4(Rat(n));
  auto counts = oracle::e8_counts(n);
  auto sums = oracle::e4_divisor_sums(n);
  CHECK(th.weight() == 4);
  for (long k = 0; k < n; ++k) {
    CHECK(th.coeff(Rat(k)) == counts[k]);
    CHECK(th.coeff(Rat(k)) == sums[k]);
    CHECK(e4.coeff(Rat(k)) == sums[k]);
  }
  CHECK(counts[1] == 240);
  CHECK(counts[2] == 2160);
}

TEST_CASE("theta of <2> per coset") {
  EvenLattice l = diagonal_lattice({2});
  DiscriminantForm d(l);
  QSeries th = theta_series(d, Rat(5));
  CHECK(th.weight() == ratio(Int(1), Int(2)));
  long h = d.fqm().index(d.proj({ratio(Int(1), Int(2))}));
  CHECK(th.coeff(0L, Rat(0)) == 1);
  CHECK(th.coeff(0L, Rat(1)) == 2);
  CHECK(th.coeff(0L, Rat(2)) == 0);
  CHECK(th.coeff(0L, Rat(4)) == 2);
  CHECK(th.coeff(h, ratio(Int(1), Int(4))) == 2);
  CHECK(th.coeff(h, ratio(Int(9), Int(4))) == 2);
  CHECK(th.coeff(h, ratio(Int(17), Int(4))) == 0);
  CHECK(th.nterms() == 5);
}

TEST_CASE("theta coefficients match box counts") {
  for (const EvenLattice& l : {a2_lattice(), d_lattice(4), diagonal_lattice({2, 4})}) {
    const long n = 6;
    QSeries th = theta_series(l, Rat(n));
    auto want = oracle::box_counts(l.gram(), n, 6);
    for (long k = 0; k < n; ++k) CHECK(th.coeff(Rat(k)) == want[k]);
  }
}

TEST_CASE("theta requires a positive-definite lattice") {
  CHECK_THROWS_AS(theta_series(hyperbolic_plane(), Rat(2)), Error);
}

TEST_CASE("overlattice theta checks") {
  {
    EvenLattice l = diagonal_lattice({2, 2});
    auto r = theta_overlattice_check(l, trivial_subgroup(DiscriminantForm(l).fqm()), Rat(4));
    CHECK(r.ok);
    CHECK(r.window == Bound(Rat(4)));
  }
  {
    EvenLattice l = diagonal_lattice({4, 4});
    DiscriminantForm d(l);
    FqmSubgroup h(d.fqm(), {d.proj({ratio(Int(1), Int(2)), ratio(Int(1), Int(2))})});
    REQUIRE(h.isotropic());
    auto r = theta_overlattice_check(l, h, Rat(4));
    CHECK(r.ok);
  }
  {
    EvenLattice l = d_lattice(8);
    int n = 0;
    for (const auto& h : enumerate_isotropic_subgroups(DiscriminantForm(l).fqm())) {
      if (h.size() != 2) continue;
      ++n;
      auto r = theta_overlattice_check(l, h, Rat(4));
      CHECK(r.ok);
      CHECK(r.window == Bound(Rat(4)));
    }
    CHECK(n == 2);
  }
}

TEST_CASE("(1/2,1/2) in <2>+<2> has norm 1") {
  EvenLattice l = diagonal_lattice({2, 2});
  DiscriminantForm d(l);
  FqmSubgroup h(d.fqm(), {d.proj({ratio(Int(1), Int(2)), ratio(Int(1), Int(2))})});
  CHECK_FALSE(h.isotropic());
  CHECK_THROWS_AS(theta_overlattice_check(l, h, Rat(4)), Error);
}

TEST_CASE("two-variable theta at Z = 0 is the coset theta") {
  DiscriminantForm d(a2_lattice());
  auto jt = jacobi_theta(d, Rat(4));
  QSeries th = theta_series(d, Rat(4));
  REQUIRE(static_cast<long>(jt.size()) == d.fqm().size());
  for (long i = 0; i < d.fqm().size(); ++i) {
    QSeries z = jt[i].at_zero();
    for (const auto& [n, c] : th.component(i)) CHECK(z.coeff(n) == c);
    CHECK(z.nterms() == th.component(i).size());
  }
}

}  // TEST_SUITE
