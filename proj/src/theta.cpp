#include "thetaprod/theta.hpp"

namespace thp {

QSeries theta_series(const DiscriminantForm& d, const Rat& trunc) {
  const EvenLattice& l = d.lattice();
  THP_REQUIRE(is_positive_definite(l), "theta_series: lattice is not positive-definite");
  const Fqm& a = d.fqm();
  QSeries th(a, ratio(static_cast<long>(l.rank()), 2), Bound(trunc));
  for (long i = 0; i < a.size(); ++i) {
    std::map<long, long> counts;  // (w, w) -> multiplicity
    auto sv = for_each_vector(l, d.lift(a.elem(i)), trunc, [&](const std::vector<long>&, long norm) { ++counts[norm]; });
    Int den2 = Int(sv.den) * Int(sv.den);
    for (const auto& [norm, c] : counts) th.add_term(i, ratio(Int(norm), Int(2 * den2)), Rat(c));
  }
  return th;
}

QSeries theta_series(const EvenLattice& n, const Rat& trunc) { return theta_series(DiscriminantForm(n), trunc); }

FqmLinMap overlattice_pushforward(const DiscriminantForm& dn, const DiscriminantForm& dnp, const RatMatrix& basis) {
  const Fqm &a = dn.fqm(), &b = dnp.fqm();
  FqmLinMap m(a, b);
  const std::size_t r = dn.lattice().rank();
  THP_REQUIRE(dnp.lattice().rank() == r, "overlattice_pushforward: ranks differ");
  if (r == 0) {
    m.set_column(0, {{0, Rat(1)}});
    return m;
  }
  RatMatrix binv = inverse(basis);
  for (long i = 0; i < a.size(); ++i) {
    RatVec y = vec_mul(dn.lift(a.elem(i)), binv);
    if (!dnp.lattice().is_dual_vector(y)) continue;
    FqmElem z = dnp.proj(y);
    THP_ASSERT(a.q(a.elem(i)) == b.q(z), "overlattice_pushforward: labels do not preserve q");
    m.set_column(i, {{b.index(z), Rat(1)}});
  }
  return m;
}

OverlatticeReport theta_overlattice_check(const EvenLattice& n, const FqmSubgroup& h, const Rat& trunc) {
  DiscriminantForm dn(n);
  THP_REQUIRE(h.parent() == dn.fqm(), "theta_overlattice_check: subgroup of a different module");
  THP_REQUIRE(h.isotropic(), "theta_overlattice_check: subgroup is not isotropic");
  OverlatticeReport rep;
  RatMatrix lifts(h.gens().size(), n.rank());
  for (std::size_t i = 0; i < h.gens().size(); ++i) lifts.set_row(i, dn.lift(h.gens()[i]));
  Overlattice ov = h.gens().empty() ? Overlattice{n, to_rat(IntMatrix::identity(n.rank())), Int(1)} : sum_lattice(n, lifts);
  THP_ASSERT(ov.index == h.size(), "theta_overlattice_check: overlattice index differs from |H|");
  DiscriminantForm dnp(ov.lattice);
  FqmLinMap down = overlattice_pushforward(dn, dnp, ov.basis);
  QSeries lhs = theta_series(dnp, trunc);
  QSeries rhs = apply_linmap(down, theta_series(dn, trunc));
  rep.window = common_trunc(lhs, rhs);
  rep.ok = agree_below(lhs, rhs, rep.window);
  if (!rep.ok) rep.detail = "Theta_N' = " + lhs.str() + " but pushforward = " + rhs.str();
  return rep;
}

void JacobiExpansion::add(const Rat& n, const RatVec& l, const Rat& c) {
  if (c == 0 || !(Bound(n) < trunc)) return;
  auto [it, inserted] = coeffs.emplace(std::make_pair(n, l), c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) coeffs.erase(it);
  }
}

Bound JacobiExpansion::leading() const {
  if (coeffs.empty()) return Bound::infinity();
  return Bound(coeffs.begin()->first.first);
}

QSeries JacobiExpansion::at_zero() const {
  QSeries s = QSeries::scalar(weight, trunc);
  for (const auto& [key, c] : coeffs) s.add_term(key.first, c);
  return s;
}

void JacobiExpansion::truncate(const Bound& t) {
  if (!(t < trunc)) return;
  trunc = t;
  for (auto it = coeffs.begin(); it != coeffs.end();) {
    if (Bound(it->first.first) < t)
      ++it;
    else
      it = coeffs.erase(it);
  }
}

bool agree_below(const JacobiExpansion& a, const JacobiExpansion& b, const Bound& w) {
  THP_REQUIRE(w <= a.trunc && w <= b.trunc, "agree_below: window exceeds a truncation");
  JacobiExpansion x = a, y = b;
  x.truncate(w);
  y.truncate(w);
  return x.coeffs == y.coeffs;
}

JacobiExpansion mul_scalar_jacobi(const QSeries& s, const JacobiExpansion& phi) {
  THP_REQUIRE(s.is_scalar(), "mul_scalar_jacobi: scalar series expected");
  JacobiExpansion out;
  out.index_lattice = phi.index_lattice;
  out.weight = s.weight() + phi.weight;
  out.trunc = min(s.trunc() + phi.lead_eff(), phi.trunc + s.lead_eff());
  for (const auto& [a, x] : s.component(0))
    for (const auto& [key, y] : phi.coeffs) out.add(a + key.first, key.second, x * y);
  return out;
}

std::vector<JacobiExpansion> jacobi_theta(const DiscriminantForm& dkplus, const Rat& trunc) {
  const EvenLattice& l = dkplus.lattice();
  THP_REQUIRE(is_positive_definite(l), "jacobi_theta: lattice is not positive-definite");
  const Fqm& a = dkplus.fqm();
  std::vector<JacobiExpansion> out;
  for (long i = 0; i < a.size(); ++i) {
    JacobiExpansion th;
    th.index_lattice = l;
    th.weight = ratio(static_cast<long>(l.rank()), 2);
    th.trunc = Bound(trunc);
    for (const auto& v : enumerate_vectors(l, dkplus.lift(a.elem(i)), trunc)) th.add(l.pair(v, v) / 2, v, Rat(1));
    out.push_back(std::move(th));
  }
  return out;
}

}  // namespace thp
