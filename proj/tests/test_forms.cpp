#include <doctest.h>

#include <algorithm>

#include "oracles.hpp"
#include "thetaprod/forms.hpp"
#include "thetaprod/suites.hpp"
#include "thetaprod/theta_algebra.hpp"

using namespace thp;

namespace {

void check_against(const Bivariate& b, const oracle::Coeffs2& want, long trunc) {
  long n = 0;
  for (const auto& [k, v] : b.coeffs())
    if (k.first < trunc) {
      auto it = want.find(k);
      CHECK_MESSAGE((it != want.end() && it->second == v), "c(" << k.first << ", " << k.second << ")");
      ++n;
    }
  CHECK(static_cast<std::size_t>(n) == want.size());
}

}  // namespace

TEST_SUITE("forms") {

TEST_CASE("Eisenstein series, Delta and j") {
  QSeries e4 = eisenstein_e4(Rat(4)), e6 = eisenstein_e6(Rat(4));
  CHECK(e4.coeff(Rat(1)) == 240);
  CHECK(e4.coeff(Rat(2)) == 2160);
  CHECK(e6.coeff(Rat(0)) == 1);
  CHECK(e6.coeff(Rat(1)) == -504);
  CHECK(e6.coeff(Rat(2)) == -16632);
  const long n = 12;
  QSeries d = delta_series(Rat(n));
  auto want = oracle::delta_product(n);
  for (long k = 0; k < n; ++k) CHECK(d.coeff(Rat(k)) == want[k]);
  CHECK(d.coeff(Rat(1)) == 1);
  CHECK(d.coeff(Rat(2)) == -24);
  CHECK(d.coeff(Rat(3)) == 252);
  QSeries j = j_series(Rat(3));
  CHECK(j.coeff(Rat(-1)) == 1);
  CHECK(j.coeff(Rat(0)) == 744);
  CHECK(j.coeff(Rat(1)) == 196884);
  CHECK(j.coeff(Rat(2)) == 21493760);
  CHECK(j.leading() == Bound(Rat(-1)));
}

TEST_CASE("E4^3 - E6^2 = 1728 Delta") {
  const Rat t(12);
  QSeries e4 = eisenstein_e4(t), e6 = eisenstein_e6(t);
  QSeries lhs = sub(mul_scalar_series(e4, mul_scalar_series(e4, e4)), mul_scalar_series(e6, e6));
  CHECK(agree_below(lhs, scale(delta_series(t), Rat(1728)), Bound(t)));
}

TEST_CASE("eta powers") {
  QSeries e1 = eta_pow(1, Rat(3));
  CHECK(e1.leading() == Bound(ratio(Int(1), Int(24))));
  CHECK(e1.weight() == ratio(Int(1), Int(2)));
  // Euler: exponents 1/24 + {0, 1, 2, 5, 7}
  CHECK(e1.coeff(ratio(Int(1), Int(24))) == 1);
  CHECK(e1.coeff(ratio(Int(25), Int(24))) == -1);
  CHECK(e1.coeff(ratio(Int(49), Int(24))) == -1);
  QSeries e24 = eta_pow(24, Rat(8));
  CHECK(agree_below(e24, delta_series(Rat(8)), Bound(Rat(8))));
  QSeries em = eta_pow(-24, Rat(3));
  CHECK(em.leading() == Bound(Rat(-1)));
  CHECK(em.coeff(Rat(0)) == 24);
  CHECK(scalar_catalog("eta_pow(3)", Rat(2)).leading() == Bound(ratio(Int(1), Int(8))));
  CHECK_THROWS_AS(scalar_catalog("nope", Rat(2)), Error);
}

TEST_CASE("weak Jacobi forms of index 1 against theta quotients") {
  const long t = 6;
  auto om2 = oracle::phi_m2_1(t), o0 = oracle::phi_0_1(t);
  Bivariate m2 = phi_m2_1(t), z = phi_0_1(t);
  check_against(m2, om2, t);
  check_against(z, o0, t);
  CHECK(z.coeff(0, 1) == 1);
  CHECK(z.coeff(0, 0) == 10);
  CHECK(z.coeff(1, 2) == 10);
  CHECK(z.coeff(1, 1) == -64);
  CHECK(z.coeff(1, 0) == 108);
  CHECK(m2.coeff(0, 1) == 1);
  CHECK(m2.coeff(0, 0) == -2);
  CHECK(m2.coeff(1, 2) == -2);
  CHECK(m2.coeff(1, 1) == 8);
  CHECK(m2.coeff(1, 0) == -12);
  CHECK(m2.weight() == -2);
  CHECK(z.weight() == 0);
}

TEST_CASE("bivariate and Jacobi expansions convert both ways") {
  Bivariate z = phi_0_1(5);
  JacobiExpansion j = bivariate_to_jacobi(z);
  CHECK(j.index_lattice == diagonal_lattice({2}));
  CHECK(jacobi_to_bivariate(j) == z);
}

TEST_CASE("theta decomposition round trip") {
  DiscriminantForm dk(diagonal_lattice({-2}));
  JacobiExpansion j = bivariate_to_jacobi(phi_0_1(6));
  QSeries f = vv_from_jacobi(j, dk.negated());
  CHECK(f.weight() == ratio(Int(-1), Int(2)));
  CHECK(f.trunc() == Bound(Rat(6) - ratio(Int(1), Int(4))));
  JacobiExpansion back = jacobi_from_vv(f, dk.negated());
  CHECK(agree_below(back, j, min(back.trunc, j.trunc)));
  CHECK(Bound(Rat(5)) < back.trunc);
  // bumping c(0, 1) alone breaks the theta decomposition
  JacobiExpansion bad = j;
  bad.add(Rat(0), RatVec{ratio(Int(1), Int(2))}, Rat(1));
  CHECK_THROWS_AS(vv_from_jacobi(bad, dk.negated()), Error);
}

TEST_CASE("f1 is phi_{0,1} read through c(n, r) = f_{r/2}(n - r^2/4)") {
  QSeries f1 = catalog_f1(Rat(5));
  DiscriminantForm dl(test_lattice("2U+<-2>").lattice);
  auto o = oracle::phi_0_1(7);
  long seen = 0;
  for (const auto& [k, v] : o) {
    auto [n, r] = k;
    Rat e = Rat(n) - ratio(Int(r * r), Int(4));
    if (!(Bound(e) < f1.trunc())) continue;
    FqmElem x = dl.proj({0, 0, 0, 0, ratio(Int(r), Int(2))});
    CHECK(f1.coeff(x, e) == v);
    ++seen;
  }
  CHECK(seen > 20);
  long i1 = dl.fqm().index(dl.proj({0, 0, 0, 0, ratio(Int(1), Int(2))}));
  CHECK(f1.coeff(i1, ratio(Int(-1), Int(4))) == 1);
  CHECK(f1.coeff(0L, Rat(0)) == 10);
  CHECK(f1.leading() == Bound(ratio(Int(-1), Int(4))));
}

TEST_CASE("solver: f0 and uniqueness under reordering") {
  DiscriminantForm dl(test_lattice("2U+<-2>").lattice);
  auto gens = index_t_generators(1, dl, Rat(8));
  PrincipalPart target;
  target.fqm = dl.fqm();
  target.terms[{0, Rat(-1)}] = Rat(1);
  SolveResult r = solve_principal_part(gens, target);
  CHECK(principal_part(r.form).terms == target.terms);
  CHECK(r.form.weight() == ratio(Int(-1), Int(2)));
  std::vector<QSeries> rev(gens.rbegin(), gens.rend());
  SolveResult r2 = solve_principal_part(rev, target);
  Bound w = common_trunc(r.form, r2.form);
  CHECK(Bound(Rat(3)) < w);
  CHECK(agree_below(r.form, r2.form, w));
  SolveResult r3 = solve_principal_part(gens, target, 4);
  CHECK(agree_below(r.form, r3.form, common_trunc(r.form, r3.form)));
}

TEST_CASE("solver errors") {
  DiscriminantForm dl(test_lattice("2U+<-2>").lattice);
  auto gens = index_t_generators(1, dl, Rat(6));
  PrincipalPart target;
  target.fqm = dl.fqm();
  target.terms[{0, Rat(-1)}] = Rat(1);
  try {
    (void)solve_principal_part({gens[0]}, target);
    FAIL("expected not_found");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::not_found);
  }
  PrincipalPart with_const = target;
  with_const.constant = std::map<long, Rat>{{0, Rat(1)}};
  CHECK_THROWS_AS(solve_principal_part(gens, with_const), Error);
  PrincipalPart asym;
  asym.fqm = DiscriminantForm(test_lattice("2U+<-4>").lattice).fqm();
  asym.terms[{1, ratio(Int(-1), Int(8))}] = Rat(1);
  CHECK_THROWS_AS(solve_principal_part(index_t_generators(2, DiscriminantForm(test_lattice("2U+<-4>").lattice), Rat(4)), asym),
                  Error);
  CHECK_THROWS_AS(orbit_target(dl.fqm(), 0, ratio(Int(-1), Int(4))), Error);
  CHECK_THROWS_AS(orbit_target(dl.fqm(), 0, Rat(1)), Error);
}

TEST_CASE("orbit targets double a self-dual class") {
  Fqm a = DiscriminantForm(test_lattice("2U+<-2>").lattice).fqm();
  PrincipalPart p = orbit_target(a, 1, ratio(Int(-1), Int(4)));
  CHECK(p.terms.size() == 1);
  CHECK(p.terms.begin()->second == 2);
}

TEST_CASE("generators: weight, symmetry, exponent classes") {
  for (long t = 1; t <= 4; ++t) {
    DiscriminantForm dl(test_lattice("2U+<-" + std::to_string(2 * t) + ">").lattice);
    auto gens = index_t_generators(t, dl, Rat(2));
    CHECK(static_cast<long>(gens.size()) == t + 1);
    for (const auto& g : gens) {
      CHECK(g.weight() == ratio(Int(-1), Int(2)));
      CHECK(g.trunc() == Bound(Rat(2)));
      CHECK(check_symmetry(g));
      CHECK(exponents_match_fqm(g));
      CHECK_FALSE(g.is_zero());
    }
    FqmLinMap tr = index_t_transport(t, dl);
    std::vector<long> hit;
    for (long i = 0; i < tr.source().size(); ++i) hit.push_back(tr.column(i).at(0).first);
    std::sort(hit.begin(), hit.end());
    CHECK(std::adjacent_find(hit.begin(), hit.end()) == hit.end());
  }
}

TEST_CASE("a_t constants for t = 2, 3, 4") {
  const long want[] = {4, 2, 1};
  for (long t = 2; t <= 4; ++t) {
    QSeries a = catalog_a_t(t, Rat(1));
    CHECK(a.coeff(a.fqm().zero(), Rat(0)) == want[t - 2]);
    PrincipalPart p = principal_part(a);
    CHECK(p.terms.size() == 2);
    for (const auto& [k, v] : p.terms) {
      CHECK(k.second == ratio(Int(-1), Int(4 * t)));
      CHECK(v == 1);
    }
  }
}

}  // TEST_SUITE
