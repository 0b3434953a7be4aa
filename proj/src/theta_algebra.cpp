#include "thetaprod/theta_algebra.hpp"

#include "thetaprod/forms.hpp"
#include "thetaprod/theta.hpp"

namespace thp {

namespace {

Int ipair(const IntMatrix& g, const IntVec& x, const IntVec& y) {
  Int s = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] == 0) continue;
    Int t = 0;
    for (std::size_t j = 0; j < y.size(); ++j) t += g(i, j) * y[j];
    s += x[i] * t;
  }
  return s;
}

IntMatrix rows_to_matrix(const std::vector<IntVec>& rows, std::size_t cols) {
  IntMatrix m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) m.set_row(i, rows[i]);
  return m;
}

IntMatrix column(const std::vector<Int>& v) {
  IntMatrix m(v.size(), 1);
  for (std::size_t i = 0; i < v.size(); ++i) m(i, 0) = v[i];
  return m;
}

void shuffle_basis(std::vector<IntVec>& rows, std::mt19937_64& rng) {
  if (rows.size() < 2) return;
  std::uniform_int_distribution<std::size_t> pick(0, rows.size() - 1);
  std::uniform_int_distribution<int> coef(-2, 2);
  for (int step = 0; step < 6; ++step) {
    std::size_t a = pick(rng), b = pick(rng);
    if (a == b) continue;
    if (rng() % 3 == 0) {
      std::swap(rows[a], rows[b]);
      continue;
    }
    int k = coef(rng);
    for (std::size_t t = 0; t < rows[a].size(); ++t) rows[a][t] += k * rows[b][t];
  }
}

}  // namespace

HyperbolicSplit hyperbolic_split(const EvenLattice& lstar, const IntMatrix& istar, std::mt19937_64* rng) {
  const IntMatrix& g = lstar.gram();
  const std::size_t n = lstar.rank(), p = istar.rows();
  std::vector<IntVec> icur = istar.to_rows();
  std::vector<IntVec> mb = IntMatrix::identity(n).to_rows();
  HyperbolicSplit out;
  out.ls = IntMatrix(p, n);
  out.ms = IntMatrix(p, n);
  for (std::size_t step = 0; step < p; ++step) {
    if (rng) {
      shuffle_basis(icur, *rng);
      shuffle_basis(mb, *rng);
    }
    const IntVec l = icur[0];
    std::vector<Int> v;
    for (const auto& y : mb) v.push_back(ipair(g, l, y));
    Hnf h = matrix_hnf(column(v));
    if (h.H(0, 0) != 1) fail(Errc::precondition, "hyperbolic_split: no vector pairs to 1 with the isotropic vector");
    IntVec m(n, 0);
    for (std::size_t j = 0; j < mb.size(); ++j)
      for (std::size_t t = 0; t < n; ++t) m[t] += h.U(0, j) * mb[j][t];
    if (rng) {
      IntMatrix ker = left_kernel(column(v));
      std::uniform_int_distribution<int> coef(-3, 3);
      for (std::size_t r = 0; r < ker.rows(); ++r) {
        int c = coef(*rng);
        if (c == 0) continue;
        for (std::size_t j = 0; j < mb.size(); ++j)
          for (std::size_t t = 0; t < n; ++t) m[t] += c * ker(r, j) * mb[j][t];
      }
    }
    THP_ASSERT(ipair(g, l, m) == 1, "hyperbolic_split: pairing is not 1");
    Int half = ipair(g, m, m) / 2;
    for (std::size_t t = 0; t < n; ++t) m[t] -= half * l[t];
    THP_ASSERT(ipair(g, m, m) == 0, "hyperbolic_split: corrected vector is not isotropic");
    out.ls.set_row(step, l);
    out.ms.set_row(step, m);

    std::vector<IntVec> proj;
    for (const auto& y : mb) {
      Int a = ipair(g, y, m), b = ipair(g, y, l);
      IntVec z = y;
      for (std::size_t t = 0; t < n; ++t) z[t] -= a * l[t] + b * m[t];
      proj.push_back(z);
    }
    IntMatrix next = hnf_basis(rows_to_matrix(proj, n));
    THP_ASSERT(next.rows() + 2 == mb.size(), "hyperbolic_split: complement has the wrong rank");
    mb = next.to_rows();

    std::vector<Int> w;
    for (const auto& s : icur) w.push_back(ipair(g, s, m));
    IntMatrix c = left_kernel(column(w));
    std::vector<IntVec> inext;
    for (std::size_t r = 0; r < c.rows(); ++r) {
      IntVec s(n, 0);
      for (std::size_t i = 0; i < icur.size(); ++i)
        for (std::size_t t = 0; t < n; ++t) s[t] += c(r, i) * icur[i][t];
      inext.push_back(s);
    }
    THP_ASSERT(inext.size() + 1 == icur.size(), "hyperbolic_split: isotropic remainder has the wrong rank");
    icur = std::move(inext);
  }
  out.ktilde = mb.empty() ? IntMatrix(0, n) : rows_to_matrix(mb, n);
  return out;
}

AlgebraContext AlgebraContext::build(const EvenLattice& l, const IntMatrix& ibasis, std::mt19937_64* rng) {
  AlgebraContext ctx;
  const std::size_t n = l.rank();
  ctx.l_ = l;
  ctx.i_ = make_sublattice(l, ibasis);
  THP_REQUIRE(is_maximal_isotropic(ctx.i_), "context: I is not a primitive maximal isotropic sublattice");
  const std::size_t p = ctx.i_.rank();
  auto [sp, sq] = signature(l);
  ctx.weight_ = ratio(static_cast<long>(sp) - static_cast<long>(sq), 2);

  ctx.istar_ = primitive_hull(ctx.i_, true);
  ctx.lstar_ = p ? sum_lattice(l, ctx.istar_.basis) : Overlattice{l, to_rat(IntMatrix::identity(n)), Int(1)};
  ctx.index_ = to_ll(ctx.lstar_.index);
  ctx.dl_ = DiscriminantForm(l);
  std::vector<FqmElem> jg;
  for (std::size_t r = 0; r < ctx.istar_.rank(); ++r) jg.push_back(ctx.dl_.proj(ctx.istar_.basis.row(r)));
  ctx.j_ = FqmSubgroup(ctx.dl_.fqm(), jg);
  THP_ASSERT(ctx.j_.size() == ctx.index_, "context: |J| differs from [I*:I]");

  // canonical model of K = (I^perp cap L) / I
  Sublattice perp = orthogonal_complement(ctx.i_);
  RatMatrix pb = to_rat(hnf_basis(to_int(perp.basis)));
  const std::size_t np = pb.rows();
  THP_ASSERT(np == n - p, "context: I^perp has the wrong rank");
  if (p > 0) {
    IntMatrix ic(p, np);
    for (std::size_t r = 0; r < p; ++r) {
      auto c = solve_left(pb, ctx.i_.basis.row(r));
      THP_ASSERT(c.has_value(), "context: I is not inside its orthogonal complement");
      for (std::size_t t = 0; t < np; ++t) {
        THP_ASSERT((*c)[t].get_den() == 1, "context: I is not integral in I^perp");
        ic(r, t) = (*c)[t].get_num();
      }
    }
    Hnf h = matrix_hnf(ic.transpose());
    for (std::size_t r = 0; r < np; ++r)
      for (std::size_t t = 0; t < p; ++t)
        THP_ASSERT(h.H(r, t) == (r == t ? 1 : 0), "context: I is not primitive in I^perp");
    RatMatrix v = to_rat(h.U.transpose());
    ctx.pprime_ = inverse(v) * pb;
  } else {
    ctx.pprime_ = pb;
  }
  for (std::size_t r = 0; r < p; ++r)
    THP_ASSERT(ctx.pprime_.row(r) == ctx.i_.basis.row(r), "context: adapted basis does not start with I");
  RatMatrix kb = ctx.pprime_.rows_range(p, np);
  ctx.k_ = kb.rows() ? EvenLattice(to_int(kb * l.gram_rat() * kb.transpose())) : EvenLattice();
  THP_REQUIRE(is_negative_definite(ctx.k_), "context: I^perp/I is not negative-definite");
  ctx.dk_ = DiscriminantForm(ctx.k_);
  ctx.dkplus_ = ctx.dk_.negated();

  if (p > 0) {
    RatMatrix bs = ctx.lstar_.basis;
    IntMatrix istar_in = to_int(ctx.istar_.basis * inverse(bs));
    ctx.split_ = hyperbolic_split(ctx.lstar_.lattice, istar_in, rng);
    ctx.l_vecs_ = to_rat(ctx.split_.ls) * bs;
    ctx.m_vecs_ = to_rat(ctx.split_.ms) * bs;
  } else {
    ctx.split_.ktilde = IntMatrix::identity(n);
    ctx.l_vecs_ = RatMatrix(0, n);
    ctx.m_vecs_ = RatMatrix(0, n);
  }

  const Fqm& al = ctx.dl_.fqm();
  ctx.down_ = FqmLinMap(al, ctx.dk_.fqm());
  for (long mu = 0; mu < al.size(); ++mu) {
    auto c = ctx.down_class(al.elem(mu));
    if (c) ctx.down_.set_column(mu, {{ctx.dk_.fqm().index(*c), Rat(1)}});
  }
  THP_ASSERT(ctx.dk_.fqm().size() * ctx.index_ * ctx.index_ == al.size(), "context: |A_K| |J|^2 != |A_L|");
  THP_ASSERT(ctx.down_ * ctx.down_.transpose() == FqmLinMap::identity(ctx.dk_.fqm()).scaled(Rat(ctx.index_)),
             "context: down o up is not |J| times the identity");
  return ctx;
}

std::optional<FqmElem> AlgebraContext::down_class(const FqmElem& mu) const {
  const std::size_t n = l_.rank(), p = i_.rank();
  RatVec x = dl_.lift(mu);
  for (std::size_t r = 0; r < istar_.rank(); ++r)
    if (l_.pair(x, istar_.basis.row(r)).get_den() != 1) return std::nullopt;
  if (n == 0 || k_.rank() == 0) return dk_.fqm().zero();
  RatVec xk = x;
  for (std::size_t r = 0; r < p; ++r) {
    RatVec lv = l_vecs_.row(r), mv = m_vecs_.row(r);
    Rat a = l_.pair(x, mv), b = l_.pair(x, lv);
    for (std::size_t t = 0; t < n; ++t) xk[t] -= a * lv[t] + b * mv[t];
  }
  auto c = solve_left(pprime_, xk);
  THP_ASSERT(c.has_value(), "down_class: projection left I^perp");
  RatVec ck(c->begin() + p, c->end());
  return dk_.proj(ck);
}

QSeries AlgebraContext::theta_kplus(const Rat& trunc) const {
  std::lock_guard<std::mutex> lock(cache_->mu);
  auto it = cache_->theta.lower_bound(trunc);
  if (it != cache_->theta.end()) return it->second.truncated(Bound(trunc));
  QSeries th = theta_series(dkplus_, trunc);
  cache_->theta.emplace(trunc, th);
  return th;
}

QSeries xi(const AlgebraContext& ctx, const QSeries& f) {
  if (f.fqm() != ctx.disc_l().fqm()) fail(Errc::mismatch, "xi: form does not live over A_L");
  if (f.weight() != ctx.weight()) fail(Errc::mismatch, "xi: form weight differs from sigma(L)/2");
  QSeries down = apply_linmap(ctx.down_lk(), f);
  QSeries th;
  if (ctx.k().rank() == 0) {
    th = QSeries(ctx.disc_kplus().fqm(), Rat(0), Bound::infinity());
    th.add_term(0L, Rat(0), Rat(1));
  } else {
    THP_REQUIRE(!f.trunc().is_inf(), "xi: form must carry a finite truncation");
    Rat t = f.trunc().value();
    Bound lead = f.lead_eff();
    if (lead.value() < 0) t -= lead.value();
    th = ctx.theta_kplus(t);
  }
  return contract(down, th);
}

QSeries star(const AlgebraContext& ctx, const QSeries& f, const QSeries& g) {
  if (g.fqm() != ctx.disc_l().fqm() || g.weight() != ctx.weight())
    fail(Errc::mismatch, "star: second factor does not live in M!(L)");
  return mul_scalar_series(xi(ctx, f), g);
}

Bound star_oracle_trunc(const QSeries& f, const QSeries& g) {
  return min(f.trunc() + g.lead_eff(), g.trunc() + f.lead_eff());
}

Rat star_coeff_oracle(const AlgebraContext& ctx, const QSeries& f, const QSeries& g, const FqmElem& lambda,
                      const Rat& n) {
  if (f.fqm() != ctx.disc_l().fqm() || g.fqm() != ctx.disc_l().fqm())
    fail(Errc::mismatch, "star_coeff_oracle: forms do not live over A_L");
  if (!(Bound(n) < star_oracle_trunc(f, g)))
    fail(Errc::truncation, "star_coeff_oracle: exponent beyond the provable truncation");
  const Fqm& al = ctx.disc_l().fqm();
  const DiscriminantForm& dkp = ctx.disc_kplus();
  std::vector<std::optional<long>> cls(al.size());
  for (long mu = 0; mu < al.size(); ++mu) {
    auto c = ctx.down_class(al.elem(mu));
    if (c) cls[mu] = dkp.fqm().index(*c);
  }
  std::map<std::pair<long, Rat>, Int> counts;
  auto count = [&](long c, const Rat& len) -> Int {
    auto key = std::make_pair(c, len);
    auto it = counts.find(key);
    if (it != counts.end()) return it->second;
    Int k = 0;
    if (dkp.lattice().rank() == 0) {
      k = len == 0 ? 1 : 0;
    } else {
      for (const auto& v : enumerate_vectors(dkp.lattice(), dkp.lift(dkp.fqm().elem(c)), len))
        if (dkp.lattice().pair(v, v) == 2 * len) ++k;
    }
    counts.emplace(key, k);
    return k;
  };
  Rat sum = 0;
  for (const auto& [k, c2] : g.component(al.index(lambda))) {
    Rat rest = n - k;
    for (long mu = 0; mu < al.size(); ++mu) {
      if (!cls[mu]) continue;
      for (const auto& [m, c1] : f.component(mu)) {
        if (m > rest) break;
        Int cnt = count(*cls[mu], rest - m);
        if (cnt != 0) sum += c1 * cnt * c2;
      }
    }
  }
  return sum;
}

QSeries bracket(const AlgebraContext& ctx, const QSeries& f, const QSeries& g) {
  return sub(star(ctx, f, g), star(ctx, g, f));
}

std::vector<Rat> fit_j_polynomial(const QSeries& s) {
  if (!s.is_scalar() || s.weight() != 0) fail(Errc::mismatch, "fit_j_polynomial: scalar weight-0 series expected");
  if (!(Bound(0L) < s.trunc())) fail(Errc::truncation, "fit_j_polynomial: constant term is not known");
  THP_REQUIRE(!s.trunc().is_inf(), "fit_j_polynomial: finite truncation expected");
  for (const auto& [e, c] : s.component(0))
    if (e.get_den() != 1) fail(Errc::mismatch, "input is not a weight-0 weakly holomorphic form (fractional exponent)");
  Bound lead = s.leading();
  if (lead.is_inf()) return {};
  long deg = lead.value() < 0 ? to_ll(-lead.value().get_num()) : 0;
  std::vector<Rat> a(deg + 1);
  std::vector<QSeries> jp{scalar_one()};
  if (deg > 0) {
    QSeries j = j_series(s.trunc().value() + deg);
    for (long k = 1; k <= deg; ++k) jp.push_back(mul_scalar_series(j, jp.back()));
  }
  QSeries r = s;
  for (long k = deg; k >= 0; --k) {
    a[k] = r.coeff(Rat(-k));
    if (a[k] != 0) r = sub(r, scale(jp[k], a[k]));
  }
  THP_ASSERT(r.trunc() == s.trunc(), "fit_j_polynomial: j powers computed too short");
  if (!r.is_zero()) fail(Errc::mismatch, "input is not a weight-0 weakly holomorphic form");
  while (!a.empty() && a.back() == 0) a.pop_back();
  return a;
}

bool in_theta_perp(const AlgebraContext& ctx, const QSeries& f) {
  if (!(Bound(0L) < f.trunc())) fail(Errc::truncation, "in_theta_perp: truncation must be positive");
  return fit_j_polynomial(xi(ctx, f)).empty();
}

bool is_left_unit(const AlgebraContext& ctx, const QSeries& f) {
  if (!(Bound(0L) < f.trunc())) fail(Errc::truncation, "is_left_unit: truncation must be positive");
  return fit_j_polynomial(xi(ctx, f)) == std::vector<Rat>{Rat(1)};
}

bool has_right_unit(const AlgebraContext& ctx) { return ctx.disc_l().fqm().size() == 1 && ctx.k().rank() == 0; }

}  // namespace thp
