#include <doctest.h>

#include <cmath>
#include <set>

#include "oracles.hpp"
#include "thetaprod/fqm.hpp"
#include "thetaprod/lattice.hpp"
#include "thetaprod/suites.hpp"

using namespace thp;

namespace {

// isotropic subgroups by brute force over pairs of generators, as sorted element-index sets
std::set<std::set<long>> brute_isotropic(const Fqm& a) {
  std::set<std::set<long>> out;
  for (long i = 0; i < a.size(); ++i)
    for (long j = i; j < a.size(); ++j) {
      std::set<long> h;
      FqmElem x = a.elem(i), y = a.elem(j);
      for (long s = 0; s < a.size(); ++s)
        for (long t = 0; t < a.size(); ++t) h.insert(a.index(a.add(a.mul(s, x), a.mul(t, y))));
      bool iso = true;
      for (long k : h) iso = iso && a.q(a.elem(k)) == 0;
      if (iso) out.insert(h);
    }
  return out;
}

}  // namespace

TEST_SUITE("fqm") {

TEST_CASE("<-2> by hand") {
  Fqm a = Fqm::make({2}, {ratio(Int(3), Int(4))}, {{ratio(Int(1), Int(2))}});
  CHECK(a.size() == 2);
  CHECK(a.level() == 4);
  CHECK(a.nondegenerate());
  CHECK(milgram_signature(a) == 7);
  CHECK(a == DiscriminantForm(diagonal_lattice({-2})).fqm());
  CHECK(milgram_signature(a.scaled(-1)) == 1);
}

TEST_CASE("degenerate forms are rejected") {
  CHECK_THROWS_AS(Fqm::make({2}, {Rat(0)}, {{Rat(0)}}), Error);
}

TEST_CASE("element indexing is a bijection") {
  for (const auto& c : fqm_catalog()) {
    const Fqm& a = c.fqm;
    for (long i = 0; i < a.size(); ++i) {
      CHECK(a.index(a.elem(i)) == i);
      CHECK(a.neg_index(a.neg_index(i)) == i);
      CHECK(a.q(a.elem(i)) == a.q(a.neg(a.elem(i))));
    }
  }
}

TEST_CASE("Milgram signature agrees with the floating Gauss sum") {
  for (const auto& c : fqm_catalog()) {
    const Fqm& a = c.fqm;
    std::complex<double> g = oracle::gauss_sum(a);
    double r = std::sqrt(static_cast<double>(a.size()));
    int s = milgram_signature(a);
    std::complex<double> want = r * std::polar(1.0, M_PI * s / 4.0);
    CHECK(std::abs(g - want) < 1e-9);
    auto [p, q] = signature(c.lattice);
    CHECK(s == ((static_cast<int>(p) - static_cast<int>(q)) % 8 + 8) % 8);
  }
}

TEST_CASE("isotropic subgroups match brute force") {
  for (const auto& c : fqm_catalog()) {
    if (c.fqm.size() > 36) continue;
    std::set<std::set<long>> got;
    for (const auto& h : enumerate_isotropic_subgroups(c.fqm)) {
      CHECK(h.isotropic());
      std::set<long> e;
      for (const auto& x : h.elements()) e.insert(c.fqm.index(x));
      CHECK(static_cast<long>(e.size()) == h.size());
      got.insert(e);
    }
    CHECK_MESSAGE(got == brute_isotropic(c.fqm), c.name);
  }
}

TEST_CASE("known isotropic counts") {
  auto count = [](const EvenLattice& l) { return enumerate_isotropic_subgroups(DiscriminantForm(l).fqm()).size(); };
  CHECK(count(diagonal_lattice({-8})) == 2);
  CHECK(count(u_lattice(2)) == 3);
  CHECK(count(d_lattice(4)) == 1);
  CHECK(count(d_lattice(8)) == 3);
}

TEST_CASE("perp and subquotient orders") {
  for (const auto& c : fqm_catalog()) {
    if (c.fqm.size() > 36) continue;
    for (const auto& h : enumerate_isotropic_subgroups(c.fqm)) {
      FqmSubgroup p = subgroup_perp(h);
      CHECK(p.size() * h.size() == c.fqm.size());
      for (const auto& x : h.elements()) CHECK(p.contains(x));
      Subquotient sq = subquotient(c.fqm, h);
      CHECK(sq.quotient().size() * h.size() * h.size() == c.fqm.size());
      CHECK(sq.quotient().nondegenerate());
      CHECK(milgram_signature(sq.quotient()) == milgram_signature(c.fqm));
      for (long i = 0; i < sq.quotient().size(); ++i) {
        FqmElem y = sq.quotient().elem(i);
        FqmElem x = sq.lift(y);
        CHECK(p.contains(x));
        CHECK(sq.proj(x) == y);
        CHECK(c.fqm.q(x) == sq.quotient().q(y));
      }
    }
  }
}

TEST_CASE("subquotient rejects non-isotropic subgroups") {
  Fqm a = DiscriminantForm(diagonal_lattice({-4})).fqm();
  FqmSubgroup h(a, {a.elem(1)});
  CHECK_THROWS_AS(subquotient(a, h), Error);
}

TEST_CASE("down after up is |I| times identity") {
  for (const auto& c : fqm_catalog()) {
    if (c.fqm.size() > 36) continue;
    for (const auto& h : enumerate_isotropic_subgroups(c.fqm)) {
      Subquotient sq = subquotient(c.fqm, h);
      FqmLinMap up = pullback_map(sq), down = pushforward_map(sq);
      CHECK(down * up == FqmLinMap::identity(sq.quotient()).scaled(Rat(h.size())));
      CHECK(up.transpose() == down);
    }
  }
}

TEST_CASE("intersection and sum") {
  Fqm a = DiscriminantForm(u_lattice(2)).fqm();
  auto subs = enumerate_isotropic_subgroups(a);
  REQUIRE(subs.size() == 3);
  for (const auto& x : subs)
    for (const auto& y : subs) {
      CHECK(intersect(x, y).size() * subgroup_sum(x, y).size() == x.size() * y.size());
      auto r = pullpush_compose_check(a, x, y);
      CHECK(r.ok);
      CHECK(r.factor == intersect(x, y).size());
    }
}

}  // TEST_SUITE
