#include "thetaprod/suites.hpp"

#include <functional>
#include <map>
#include <sstream>

#include "thetaprod/forms.hpp"
#include "thetaprod/functorial.hpp"
#include "thetaprod/theta.hpp"
#include "thetaprod/theta_algebra.hpp"
#include "thetaprod/weil.hpp"

namespace thp {

EvenLattice u_lattice(long scale) { return hyperbolic_plane().scaled(scale); }

EvenLattice a2_lattice() { return EvenLattice(IntMatrix::from_rows({{Int(2), Int(-1)}, {Int(-1), Int(2)}})); }

TestLattice split_lattice(const std::string& name, const EvenLattice& extra) {
  EvenLattice l = orthogonal_sum(orthogonal_sum(u_lattice(), u_lattice()), extra);
  IntMatrix i(2, l.rank());
  i(0, 0) = 1;
  i(1, 2) = 1;
  return {name, l, i};
}

std::vector<CatalogFqm> fqm_catalog() {
  std::vector<std::pair<std::string, EvenLattice>> ls = {
      {"trivial(U)", u_lattice()},
      {"E8", e8_lattice()},
      {"<-2>", diagonal_lattice({-2})},
      {"<2>", diagonal_lattice({2})},
      {"<-4>", diagonal_lattice({-4})},
      {"<-6>", diagonal_lattice({-6})},
      {"<-8>", diagonal_lattice({-8})},
      {"<-16>", diagonal_lattice({-16})},
      {"<-18>", diagonal_lattice({-18})},
      {"U(2)", u_lattice(2)},
      {"U(3)", u_lattice(3)},
      {"U(6)", u_lattice(6)},
      {"A2", a2_lattice()},
      {"D4", d_lattice(4)},
      {"<2>+<2>", diagonal_lattice({2, 2})},
      {"<-2>+<2>", diagonal_lattice({-2, 2})},
      {"<-2>+<-4>", diagonal_lattice({-2, -4})},
      {"U(2)+<-2>", orthogonal_sum(u_lattice(2), diagonal_lattice({-2}))},
      {"<-6>+<-6>", diagonal_lattice({-6, -6})},
      {"<-2>^3", diagonal_lattice({-2, -2, -2})},
  };
  std::vector<CatalogFqm> out;
  for (auto& [name, l] : ls) out.push_back({name, l, DiscriminantForm(l).fqm()});
  return out;
}

std::vector<TestLattice> test_lattices() {
  std::vector<TestLattice> out;
  TestLattice two_u = split_lattice("2U", EvenLattice());
  out.push_back(two_u);
  for (long t = 1; t <= 4; ++t)
    out.push_back(split_lattice("2U+<-" + std::to_string(2 * t) + ">", diagonal_lattice({-2 * t})));
  out.push_back(split_lattice("2U+E8(-1)", e8_lattice().scaled(-1)));
  out.push_back(split_lattice("2U+<-2>+<-2>", diagonal_lattice({-2, -2})));
  return out;
}

const TestLattice& test_lattice(const std::string& name) {
  static const std::vector<TestLattice> all = test_lattices();
  for (const auto& t : all)
    if (t.name == name) return t;
  fail(Errc::not_found, "unknown test lattice " + name);
}

QSeries catalog_f1(const Rat& trunc) {
  DiscriminantForm dl(test_lattice("2U+<-2>").lattice);
  return index_t_generators(1, dl, trunc)[0];
}

QSeries catalog_f0(const Rat& trunc) {
  DiscriminantForm dl(test_lattice("2U+<-2>").lattice);
  PrincipalPart target;
  target.fqm = dl.fqm();
  target.terms[{dl.fqm().index(dl.fqm().zero()), Rat(-1)}] = Rat(1);
  QSeries f = solve_principal_part(index_t_generators(1, dl, trunc + 4), target).form;
  f.truncate(Bound(trunc));
  return f;
}

QSeries catalog_a_t(long t, const Rat& trunc) {
  DiscriminantForm dl(test_lattice("2U+<-" + std::to_string(2 * t) + ">").lattice);
  FqmLinMap tr = index_t_transport(t, dl);
  DiscriminantForm dk(diagonal_lattice({-2 * t}));
  long std_idx = dk.fqm().index(dk.proj({ratio(Int(1), Int(2 * t))}));
  long idx = tr.column(std_idx).at(0).first;
  PrincipalPart target = orbit_target(dl.fqm(), idx, ratio(Int(-1), Int(4 * t)));
  QSeries f = solve_principal_part(index_t_generators(t, dl, trunc + 4), target).form;
  f.truncate(Bound(trunc));
  return f;
}

std::vector<std::string> catalog_names() {
  std::vector<std::string> out = {"E4", "E6", "Delta", "j", "eta_pow(1)", "phi_0_1", "phi_m2_1", "f1", "f0",
                                  "a_t2", "a_t3", "a_t4"};
  for (const auto& t : test_lattices()) {
    out.push_back("lattice:" + t.name);
    out.push_back("context:" + t.name);
  }
  return out;
}

Json catalog_entry(const std::string& name, const Rat& trunc) {
  auto form = [](const EvenLattice& l, const QSeries& f) { return Json{{"kind", "form"}, {"value", form_to_json(l, f)}}; };
  if (name.rfind("lattice:", 0) == 0)
    return Json{{"kind", "lattice"}, {"value", lattice_to_json(test_lattice(name.substr(8)).lattice)}};
  if (name.rfind("context:", 0) == 0) {
    const TestLattice& t = test_lattice(name.substr(8));
    return Json{{"kind", "context"}, {"value", context_spec_to_json({t.lattice, t.isotropic})}};
  }
  if (name == "phi_0_1" || name == "phi_m2_1") return form(diagonal_lattice({-2}), ez_jacobi(name, trunc));
  if (name == "f1") return form(test_lattice("2U+<-2>").lattice, catalog_f1(trunc));
  if (name == "f0") return form(test_lattice("2U+<-2>").lattice, catalog_f0(trunc));
  if (name.rfind("a_t", 0) == 0 && name.size() == 4 && name[3] >= '2' && name[3] <= '4') {
    long t = name[3] - '0';
    return form(test_lattice("2U+<-" + std::to_string(2 * t) + ">").lattice, catalog_a_t(t, trunc));
  }
  return form(EvenLattice(), scalar_catalog(name, trunc));
}

QSeries random_symmetric_series(const Fqm& a, const Rat& weight, const Rat& lo, const Rat& trunc, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> coef(-3, 3);
  QSeries f(a, weight, Bound(trunc));
  for (long i = 0; i < a.size(); ++i) {
    long ni = a.neg_index(i);
    if (ni < i) continue;
    Rat q = a.q(a.elem(i));
    for (Rat n = q + rat_ceil(lo - q); n < trunc; n += 1) {
      int c = coef(rng);
      if (c == 0) continue;
      f.add_term(i, n, Rat(c));
      if (ni != i) f.add_term(ni, n, Rat(c));
    }
  }
  return f;
}

QSeries random_combination(const std::vector<QSeries>& gens, std::mt19937_64& rng) {
  THP_REQUIRE(!gens.empty(), "random_combination: no generators");
  std::uniform_int_distribution<int> coef(-3, 3);
  Rat t = gens[0].trunc().value();
  QSeries j = j_series(t + 2);
  std::optional<QSeries> out;
  for (const auto& g : gens) {
    QSeries term = add(scale(g, Rat(coef(rng))), scale(mul_scalar_series(j, g), Rat(coef(rng))));
    out = out ? add(*out, term) : term;
  }
  return *out;
}

namespace {

using Suite = std::function<void(SuiteResult&)>;

void expect(SuiteResult& r, bool cond, const std::string& what) {
  ++r.cases;
  if (!cond) {
    r.ok = false;
    r.failures.push_back(what);
  }
}

// cases with |A| <= 36
std::vector<CatalogFqm> small_catalog() {
  std::vector<CatalogFqm> out;
  for (auto& c : fqm_catalog())
    if (c.fqm.size() <= 36) out.push_back(c);
  return out;
}

void suite_catalog(SuiteResult& r) {
  for (const auto& c : fqm_catalog()) {
    Int d = c.lattice.det();
    expect(r, c.fqm.nondegenerate(), c.name + ": nondegenerate");
    expect(r, Int(c.fqm.size()) == (d < 0 ? Int(-d) : d), c.name + ": |A| = |det|");
  }
}

void suite_updown(SuiteResult& r) {
  for (const auto& c : small_catalog())
    for (const auto& i : enumerate_isotropic_subgroups(c.fqm)) {
      Subquotient sq = subquotient(c.fqm, i);
      FqmLinMap up = pullback_map(sq), down = pushforward_map(sq);
      std::string tag = c.name + " |I|=" + std::to_string(i.size());
      expect(r, down * up == FqmLinMap::identity(sq.quotient()).scaled(Rat(i.size())), tag + ": down o up = |I| id");
      expect(r, up.transpose() == down, tag + ": up and down adjoint");
    }
}

void suite_intertwine(SuiteResult& r) {
  for (const auto& c : small_catalog())
    for (const auto& i : enumerate_isotropic_subgroups(c.fqm)) {
      CheckReport rep = check_intertwine(c.fqm, i);
      expect(r, rep.ok, c.name + " |I|=" + std::to_string(i.size()) + ": " + rep.detail);
    }
}

void suite_mp2(SuiteResult& r) {
  for (const auto& c : fqm_catalog()) {
    CheckReport rep = check_mp2_relations(c.fqm);
    expect(r, rep.ok, c.name + ": " + rep.detail);
  }
}

void suite_pullpush(SuiteResult& r) {
  for (const auto& c : small_catalog()) {
    auto subs = enumerate_isotropic_subgroups(c.fqm);
    for (const auto& i1 : subs)
      for (const auto& i2 : subs) {
        PullPushReport rep = pullpush_compose_check(c.fqm, i1, i2);
        expect(r, rep.ok && rep.factor == intersect(i1, i2).size(), c.name + ": " + rep.detail);
      }
  }
}

void suite_milgram(SuiteResult& r) {
  std::vector<std::pair<std::string, EvenLattice>> ls;
  for (const auto& t : test_lattices()) ls.push_back({t.name, t.lattice});
  for (const auto& c : fqm_catalog()) ls.push_back({c.name, c.lattice});
  for (const auto& [name, l] : ls) {
    auto [p, q] = signature(l);
    long want = ((static_cast<long>(p) - static_cast<long>(q)) % 8 + 8) % 8;
    expect(r, milgram_signature(DiscriminantForm(l).fqm()) == want, name + ": Milgram signature");
  }
}

void suite_overlattice(SuiteResult& r) {
  const Rat trunc(4);
  {
    EvenLattice l = diagonal_lattice({2, 2});
    DiscriminantForm d(l);
    auto rep = theta_overlattice_check(l, trivial_subgroup(d.fqm()), trunc);
    expect(r, rep.ok, "<2>+<2>, H = 0: " + rep.detail);
  }
  {
    EvenLattice l = diagonal_lattice({4, 4});
    DiscriminantForm d(l);
    FqmSubgroup h(d.fqm(), {d.proj({ratio(Int(1), Int(2)), ratio(Int(1), Int(2))})});
    auto rep = theta_overlattice_check(l, h, trunc);
    expect(r, rep.ok, "<4>+<4>, H = <(1/2,1/2)>: " + rep.detail);
  }
  {
    EvenLattice l = d_lattice(8);
    DiscriminantForm d(l);
    long n = 0;
    for (const auto& h : enumerate_isotropic_subgroups(d.fqm())) {
      if (h.size() != 2) continue;
      ++n;
      auto rep = theta_overlattice_check(l, h, trunc);
      expect(r, rep.ok, "D8 in E8: " + rep.detail);
    }
    expect(r, n == 2, "D8: two isotropic subgroups of order 2");
  }
}

void suite_split(SuiteResult& r) {
  for (const auto& t : test_lattices()) {
    AlgebraContext base = AlgebraContext::build(t.lattice, t.isotropic);
    for (unsigned seed = 1; seed <= 20; ++seed) {
      std::mt19937_64 rng(seed);
      AlgebraContext c = AlgebraContext::build(t.lattice, t.isotropic, &rng);
      expect(r, c.down_lk() == base.down_lk() && c.disc_k().fqm() == base.disc_k().fqm(),
             t.name + ": split seed " + std::to_string(seed));
    }
  }
}

void suite_forms(SuiteResult& r) {
  const Rat t(15);
  QSeries e4 = eisenstein_e4(t), e6 = eisenstein_e6(t), delta = delta_series(t);
  QSeries lhs = sub(mul_scalar_series(e4, mul_scalar_series(e4, e4)), mul_scalar_series(e6, e6));
  expect(r, agree_below(lhs, scale(delta, Rat(1728)), Bound(t)), "E4^3 - E6^2 = 1728 Delta");
  QSeries j = j_series(Rat(3));
  expect(r, j.coeff(Rat(-1)) == 1 && j.coeff(Rat(0)) == 744 && j.coeff(Rat(1)) == 196884, "j = q^-1 + 744 + 196884 q");

  const TestLattice& tl = test_lattice("2U+<-2>");
  AlgebraContext ctx = AlgebraContext::build(tl.lattice, tl.isotropic);
  QSeries f1 = catalog_f1(Rat(6)), f0 = catalog_f0(Rat(6));
  QSeries x = xi(ctx, f1);
  expect(r, x.nterms() == 1 && x.coeff(Rat(0)) == 12, "xi(f1) = 12");
  QSeries p11 = star(ctx, f1, f1), p10 = star(ctx, f1, f0);
  expect(r, agree_below(p11, scale(f1, Rat(12)), common_trunc(p11, f1)), "f1 * f1 = 12 f1");
  expect(r, agree_below(p10, scale(f0, Rat(12)), common_trunc(p10, f0)), "f1 * f0 = 12 f0");
  const long want[] = {4, 2, 1};
  for (long tt = 2; tt <= 4; ++tt) {
    QSeries a = catalog_a_t(tt, Rat(1));
    expect(r, a.coeff(a.fqm().zero(), Rat(0)) == want[tt - 2], "a_t for t = " + std::to_string(tt));
  }
}

void suite_algebra(SuiteResult& r) {
  std::mt19937_64 rng(7);
  for (const char* name : {"2U+<-2>", "2U+<-4>"}) {
    const TestLattice& tl = test_lattice(name);
    AlgebraContext ctx = AlgebraContext::build(tl.lattice, tl.isotropic);
    long t = to_ll(Int(tl.lattice.gram()(4, 4) / -2));
    auto gens = index_t_generators(t, ctx.disc_l(), Rat(7));
    for (int k = 0; k < 3; ++k) {
      QSeries f = random_combination(gens, rng), g = random_combination(gens, rng), h = random_combination(gens, rng);
      QSeries fg = star(ctx, f, g);
      QSeries a1 = star(ctx, fg, h), a2 = star(ctx, f, star(ctx, g, h));
      expect(r, agree_below(a1, a2, common_trunc(a1, a2)), std::string(name) + ": associativity");
      QSeries x1 = xi(ctx, fg), x2 = mul_scalar_series(xi(ctx, f), xi(ctx, g));
      expect(r, agree_below(x1, x2, common_trunc(x1, x2)), std::string(name) + ": xi multiplicative");
      QSeries c2 = star(ctx, star(ctx, g, f), h);
      expect(r, agree_below(a1, c2, common_trunc(a1, c2)), std::string(name) + ": f*g*h = g*f*h");
      expect(r, filtration_degree(fg) <= filtration_degree(f) + filtration_degree(g), std::string(name) + ": filtration");
    }
  }
}

void suite_functorial(SuiteResult& r) {
  std::mt19937_64 rng(11);
  {
    const TestLattice& big = test_lattice("2U+<-2>+<-2>");
    const TestLattice& small = test_lattice("2U+<-2>");
    IntMatrix lp(5, 6);
    for (std::size_t i = 0; i < 5; ++i) lp(i, i) = 1;
    AlgebraContext ctx = AlgebraContext::build(big.lattice, big.isotropic);
    AlgebraContext ctxp = AlgebraContext::build(small.lattice, small.isotropic);
    const Fqm& a = ctx.disc_l().fqm();
    for (int k = 0; k < 2; ++k) {
      QSeries f = random_symmetric_series(a, Rat(-1), Rat(-2), Rat(4), rng);
      QSeries g = random_symmetric_series(a, Rat(-1), Rat(-2), Rat(4), rng);
      auto rep = check_functoriality(ctx, ctxp, lp, f, g);
      expect(r, rep.ok && rep.factor == 1, "split pair: " + rep.detail);
    }
  }
  {
    const TestLattice& tl = test_lattice("2U+<-2>");
    IntMatrix lp = IntMatrix::identity(5);
    lp(0, 0) = 2;
    EvenLattice lpl = sublattice_lattice(tl.lattice, lp);
    IsotropicRestriction ri = restrict_isotropic(tl.lattice, lp, tl.isotropic);
    AlgebraContext ctx = AlgebraContext::build(tl.lattice, tl.isotropic);
    AlgebraContext ctxp = AlgebraContext::build(lpl, ri.ip);
    auto gens = index_t_generators(1, ctx.disc_l(), Rat(6));
    for (int k = 0; k < 2; ++k) {
      QSeries f = random_combination(gens, rng), g = random_combination(gens, rng);
      auto rep = check_functoriality(ctx, ctxp, lp, f, g);
      expect(r, rep.ok && rep.factor == 2, "finite-index pair: " + rep.detail);
      const Fqm& ap = ctxp.disc_l().fqm();
      QSeries fp = random_symmetric_series(ap, ratio(Int(-1), Int(2)), Rat(-2), Rat(4), rng);
      QSeries gp = random_symmetric_series(ap, ratio(Int(-1), Int(2)), Rat(-2), Rat(4), rng);
      auto rp = check_pushforward(ctx, ctxp, lp, fp, gp);
      expect(r, rp.ok, "pushforward: " + rp.detail);
    }
  }
}

void suite_roundtrip(SuiteResult& r) {
  for (const auto& name : catalog_names()) {
    Json e = catalog_entry(name, Rat(3));
    std::string s1 = dump(e);
    Json p = parse_json(s1);
    Json back;
    const std::string kind = p.at("kind");
    if (kind == "form") {
      LabeledForm lf = form_from_json(p.at("value"));
      back = form_to_json(lf.lattice, lf.form);
    } else if (kind == "lattice") {
      back = lattice_to_json(lattice_from_json(p.at("value")));
    } else {
      back = context_spec_to_json(context_spec_from_json(p.at("value")));
    }
    expect(r, dump(Json{{"kind", kind}, {"value", back}}) == s1, name + ": round trip");
  }
}

const std::map<std::string, Suite>& registry() {
  static const std::map<std::string, Suite> m = {
      {"catalog", suite_catalog},       {"updown", suite_updown},       {"intertwine", suite_intertwine},
      {"mp2", suite_mp2},               {"pullpush", suite_pullpush},   {"milgram", suite_milgram},
      {"overlattice", suite_overlattice}, {"split", suite_split},       {"forms", suite_forms},
      {"algebra", suite_algebra},       {"functorial", suite_functorial}, {"roundtrip", suite_roundtrip},
  };
  return m;
}

}  // namespace

std::vector<std::string> suite_names() {
  std::vector<std::string> out;
  for (const auto& [k, v] : registry()) out.push_back(k);
  return out;
}

SuiteResult run_suite(const std::string& name) {
  auto it = registry().find(name);
  if (it == registry().end()) fail(Errc::not_found, "unknown suite " + name);
  SuiteResult r;
  r.name = name;
  try {
    it->second(r);
  } catch (const Error& e) {
    r.ok = false;
    r.failures.push_back(std::string("error: ") + e.what());
  }
  return r;
}

}  // namespace thp
