#include "thetaprod/functorial.hpp"

#include "thetaprod/theta.hpp"

namespace thp {

EvenLattice sublattice_lattice(const EvenLattice& l, const IntMatrix& lp_basis) {
  THP_REQUIRE(lp_basis.cols() == l.rank(), "sublattice_lattice: basis has the wrong width");
  EvenLattice lp(lp_basis * l.gram() * lp_basis.transpose());
  if (lp.rank() > 0 && lp.det() == 0) fail(Errc::precondition, "sublattice: L' is degenerate");
  return lp;
}

QSeries quasi_pullback(const QSeries& f, const DiscriminantForm& dl, const IntMatrix& lp_basis) {
  const EvenLattice& l = dl.lattice();
  THP_REQUIRE(f.fqm() == dl.fqm(), "quasi_pullback: form does not live over A_L");
  EvenLattice lp = sublattice_lattice(l, lp_basis);
  Sublattice n = orthogonal_complement(make_sublattice(l, lp_basis));
  THP_REQUIRE(lp.rank() + n.rank() == l.rank(), "quasi_pullback: L' + N has smaller rank than L");
  IntMatrix nb = n.int_basis();
  EvenLattice nl = n.rank() ? EvenLattice(nb * l.gram() * nb.transpose()) : EvenLattice();
  if (nl.rank() > 0 && !is_negative_definite(nl)) fail(Errc::precondition, "quasi_pullback: N is not negative-definite");

  DiscriminantForm dlp(lp), dn(nl);
  const Fqm &ap = dlp.fqm(), &an = dn.fqm(), &a = dl.fqm();
  QSeries theta;
  if (nl.rank() == 0) {
    theta = QSeries(an, Rat(0), Bound::infinity());
    theta.add_term(0L, Rat(0), Rat(1));
  } else {
    THP_REQUIRE(!f.trunc().is_inf(), "quasi_pullback: infinite precision");
    Rat lead = f.lead_eff().value();
    theta = theta_series(dn.negated(), f.trunc().value() - (lead < 0 ? lead : Rat(0)));
  }
  Bound t = min(f.trunc() + theta.lead_eff(), theta.trunc() + f.lead_eff());
  QSeries out(ap, f.weight() + ratio(static_cast<long>(nl.rank()), 2), t);
  const RatMatrix bp = to_rat(lp_basis), bn = to_rat(nb);
  for (long i = 0; i < ap.size(); ++i) {
    RatVec x = vec_mul(dlp.lift(ap.elem(i)), bp);
    for (long k = 0; k < an.size(); ++k) {
      RatVec z = x;
      if (nl.rank() > 0) {
        RatVec y = vec_mul(dn.lift(an.elem(k)), bn);
        for (std::size_t c = 0; c < z.size(); ++c) z[c] += y[c];
      }
      if (!l.is_dual_vector(z)) continue;
      const auto& fc = f.component(a.index(dl.proj(z)));
      for (const auto& [m, u] : fc)
        for (const auto& [e, v] : theta.component(k)) {
          if (!(Bound(Rat(m + e)) < t)) break;
          out.add_term(i, m + e, u * v);
        }
    }
  }
  return out;
}

QSeries pushforward_form(const QSeries& f, const DiscriminantForm& dl, const IntMatrix& lp_basis, const IntMatrix& ibasis) {
  const EvenLattice& l = dl.lattice();
  const std::size_t n = l.rank();
  THP_REQUIRE(lp_basis.rows() == n && lp_basis.cols() == n, "pushforward_form: L' must have full rank in L");
  EvenLattice lp = sublattice_lattice(l, lp_basis);
  THP_REQUIRE(ibasis.cols() == n, "pushforward_form: isotropic basis has the wrong width");
  if (hnf_basis(stack(lp_basis, ibasis)) != IntMatrix::identity(n))
    fail(Errc::precondition, "pushforward_form: L is not generated by L' and I");
  DiscriminantForm dlp(lp);
  THP_REQUIRE(f.fqm() == dlp.fqm(), "pushforward_form: form does not live over A_L'");
  return apply_linmap(overlattice_pushforward(dlp, dl, inverse(to_rat(lp_basis))), f);
}

IsotropicRestriction restrict_isotropic(const EvenLattice& l, const IntMatrix& lp_basis, const IntMatrix& ibasis) {
  EvenLattice lp = sublattice_lattice(l, lp_basis);
  const RatMatrix bp = to_rat(lp_basis), bi = to_rat(ibasis);
  RatMatrix coords(ibasis.rows(), lp_basis.rows());
  for (std::size_t r = 0; r < ibasis.rows(); ++r) {
    auto z = solve_left(bp, bi.row(r));
    if (!z) fail(Errc::precondition, "restrict_isotropic: I is not inside the rational span of L'");
    coords.set_row(r, *z);
  }
  IsotropicRestriction out;
  Sublattice hull = primitive_hull(Sublattice{lp, coords}, false);
  out.ip = hnf_basis(hull.int_basis());
  // index: coordinates of I' in the basis of I
  RatMatrix ipl = to_rat(out.ip) * bp;
  RatMatrix m(ipl.rows(), ibasis.rows());
  for (std::size_t r = 0; r < ipl.rows(); ++r) {
    auto z = solve_left(bi, ipl.row(r));
    THP_ASSERT(z.has_value(), "restrict_isotropic: I' escapes I");
    m.set_row(r, *z);
  }
  Int d = determinant(to_int(m));
  out.index = to_ll(d < 0 ? Int(-d) : d);
  return out;
}

namespace {

void check_context_pair(const AlgebraContext& ctx, const AlgebraContext& ctxp, const IntMatrix& lp_basis,
                        FunctorialityReport& rep) {
  if (!(sublattice_lattice(ctx.lattice(), lp_basis) == ctxp.lattice()))
    fail(Errc::precondition, "functoriality: ctx_L' is not built on the given sublattice");
  IsotropicRestriction ri = restrict_isotropic(ctx.lattice(), lp_basis, ctx.isotropic().int_basis());
  if (ri.ip != hnf_basis(ctxp.isotropic().int_basis()))
    fail(Errc::precondition, "functoriality: ctx_L' is not built from I cap L'");
  rep.factor = ri.index;
}

bool compare(const QSeries& a, const QSeries& b, const char* what, FunctorialityReport& rep) {
  Bound w = common_trunc(a, b);
  if (!(Bound(Rat(0)) < w)) fail(Errc::truncation, std::string("functoriality: empty comparison window for ") + what);
  rep.window = (rep.window.is_inf() || w < rep.window) ? w : rep.window;
  if (agree_below(a, b, w)) return true;
  rep.detail += std::string(what) + ": " + a.str() + " vs " + b.str() + "\n";
  return false;
}

}  // namespace

FunctorialityReport check_functoriality(const AlgebraContext& ctx, const AlgebraContext& ctxp, const IntMatrix& lp_basis,
                                        const QSeries& f, const QSeries& g) {
  FunctorialityReport rep;
  rep.window = Bound::infinity();
  check_context_pair(ctx, ctxp, lp_basis, rep);
  const DiscriminantForm& dl = ctx.disc_l();
  QSeries fr = quasi_pullback(f, dl, lp_basis), gr = quasi_pullback(g, dl, lp_basis);
  const Rat c(rep.factor);
  QSeries lhs = star(ctxp, fr, gr);
  QSeries rhs = scale(quasi_pullback(star(ctx, f, g), dl, lp_basis), c);
  bool ok1 = compare(lhs, rhs, "product", rep);
  bool ok2 = compare(xi(ctxp, fr), scale(xi(ctx, f), c), "xi", rep);
  rep.ok = ok1 && ok2;
  return rep;
}

FunctorialityReport check_pushforward(const AlgebraContext& ctx, const AlgebraContext& ctxp, const IntMatrix& lp_basis,
                                      const QSeries& f, const QSeries& g) {
  FunctorialityReport rep;
  rep.window = Bound::infinity();
  check_context_pair(ctx, ctxp, lp_basis, rep);
  const DiscriminantForm& dl = ctx.disc_l();
  const IntMatrix ib = ctx.isotropic().int_basis();
  QSeries lhs = star(ctx, pushforward_form(f, dl, lp_basis, ib), pushforward_form(g, dl, lp_basis, ib));
  QSeries rhs = pushforward_form(star(ctxp, f, g), dl, lp_basis, ib);
  rep.ok = compare(lhs, rhs, "pushforward", rep);
  return rep;
}

}  // namespace thp
