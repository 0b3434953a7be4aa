#include "thetaprod/qseries.hpp"

#include <sstream>

namespace thp {

QSeries::QSeries(Fqm fqm, Rat weight, Bound trunc)
    : fqm_(std::move(fqm)), weight_(std::move(weight)), trunc_(std::move(trunc)), comp_(fqm_.size()) {}

Rat QSeries::coeff(long idx, const Rat& n) const {
  if (!(Bound(n) < trunc_))
    fail(Errc::truncation, "coefficient at q^" + to_string(n) + " lies beyond trunc " + trunc_.str());
  const auto& c = comp_.at(idx);
  auto it = c.find(n);
  return it == c.end() ? Rat(0) : it->second;
}

void QSeries::add_term(long idx, const Rat& n, const Rat& c) {
  if (c == 0 || !(Bound(n) < trunc_)) return;
  auto& comp = comp_.at(idx);
  auto [it, inserted] = comp.emplace(n, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) comp.erase(it);
  }
}

void QSeries::truncate(const Bound& t) {
  if (!(t < trunc_)) return;
  trunc_ = t;
  for (auto& comp : comp_) comp.erase(comp.lower_bound(t.value()), comp.end());
}

QSeries QSeries::truncated(const Bound& t) const {
  QSeries f = *this;
  f.truncate(t);
  return f;
}

Bound QSeries::leading() const {
  Bound b = Bound::infinity();
  for (const auto& comp : comp_)
    if (!comp.empty()) b = min(b, Bound(comp.begin()->first));
  return b;
}

bool QSeries::is_zero() const {
  for (const auto& comp : comp_)
    if (!comp.empty()) return false;
  return true;
}

std::size_t QSeries::nterms() const {
  std::size_t n = 0;
  for (const auto& comp : comp_) n += comp.size();
  return n;
}

std::string QSeries::str() const {
  std::ostringstream os;
  bool first = true;
  for (long i = 0; i < fqm_.size(); ++i)
    for (const auto& [n, c] : comp_[i]) {
      if (!first) os << " + ";
      first = false;
      os << to_string(c) << "*q^" << to_string(n);
      if (!is_scalar()) {
        os << "*e(";
        auto x = fqm_.elem(i);
        for (std::size_t t = 0; t < x.size(); ++t) os << (t ? "," : "") << x[t];
        os << ")";
      }
    }
  if (first) os << "0";
  os << " + O(q^" << trunc_.str() << ")";
  return os.str();
}

bool operator==(const QSeries& a, const QSeries& b) {
  return a.fqm_ == b.fqm_ && a.weight_ == b.weight_ && a.trunc_ == b.trunc_ && a.comp_ == b.comp_;
}

bool agree_below(const QSeries& a, const QSeries& b, const Bound& w) {
  THP_REQUIRE(a.fqm() == b.fqm(), "agree_below: series over different modules");
  THP_REQUIRE(w <= a.trunc() && w <= b.trunc(), "agree_below: window exceeds a truncation");
  for (long i = 0; i < a.fqm().size(); ++i) {
    const auto& ca = a.component(i);
    const auto& cb = b.component(i);
    auto ia = ca.begin(), ib = cb.begin();
    auto below = [&w](const Rat& n) { return Bound(n) < w; };
    while (true) {
      bool ea = ia == ca.end() || !below(ia->first);
      bool eb = ib == cb.end() || !below(ib->first);
      if (ea || eb) {
        if (ea != eb) return false;
        break;
      }
      if (ia->first != ib->first || ia->second != ib->second) return false;
      ++ia;
      ++ib;
    }
  }
  return true;
}

namespace {

void require_compatible(const QSeries& f, const QSeries& g, const char* op) {
  if (f.fqm() != g.fqm()) fail(Errc::mismatch, std::string(op) + ": series over different modules");
  if (f.weight() != g.weight()) fail(Errc::mismatch, std::string(op) + ": series of different weights");
}

}  // namespace

QSeries add(const QSeries& f, const QSeries& g) {
  require_compatible(f, g, "add");
  QSeries h(f.fqm(), f.weight(), min(f.trunc(), g.trunc()));
  for (long i = 0; i < f.fqm().size(); ++i) {
    for (const auto& [n, c] : f.component(i)) h.add_term(i, n, c);
    for (const auto& [n, c] : g.component(i)) h.add_term(i, n, c);
  }
  return h;
}

QSeries sub(const QSeries& f, const QSeries& g) { return add(f, scale(g, Rat(-1))); }

QSeries scale(const QSeries& f, const Rat& c) {
  QSeries h(f.fqm(), f.weight(), f.trunc());
  if (c == 0) return h;
  for (long i = 0; i < f.fqm().size(); ++i)
    for (const auto& [n, v] : f.component(i)) h.add_term(i, n, v * c);
  return h;
}

QSeries mul_scalar_series(const QSeries& s, const QSeries& f) {
  THP_REQUIRE(s.is_scalar(), "mul_scalar_series: first factor must be scalar");
  Bound t = min(s.trunc() + f.lead_eff(), f.trunc() + s.lead_eff());
  QSeries h(f.fqm(), s.weight() + f.weight(), t);
  const auto& sc = s.component(0);
  for (long i = 0; i < f.fqm().size(); ++i)
    for (const auto& [a, x] : sc)
      for (const auto& [b, y] : f.component(i)) {
        Rat n = a + b;
        if (!(Bound(n) < t)) break;
        h.add_term(i, n, x * y);
      }
  return h;
}

QSeries apply_linmap(const FqmLinMap& m, const QSeries& f) {
  if (m.source() != f.fqm()) fail(Errc::mismatch, "apply_linmap: source module differs from the series module");
  QSeries h(m.target(), f.weight(), f.trunc());
  for (long j = 0; j < f.fqm().size(); ++j) {
    const auto& comp = f.component(j);
    if (comp.empty()) continue;
    for (const auto& [i, v] : m.column(j))
      for (const auto& [n, c] : comp) h.add_term(i, n, v * c);
  }
  return h;
}

QSeries contract(const QSeries& f, const QSeries& g) {
  if (!f.fqm().same_group(g.fqm()) || f.fqm().scaled(-1) != g.fqm())
    fail(Errc::mismatch, "contract: second series must live over the negated module");
  Bound t = min(f.trunc() + g.lead_eff(), g.trunc() + f.lead_eff());
  QSeries h = QSeries::scalar(f.weight() + g.weight(), t);
  for (long i = 0; i < f.fqm().size(); ++i)
    for (const auto& [a, x] : f.component(i))
      for (const auto& [b, y] : g.component(i)) {
        Rat n = a + b;
        if (!(Bound(n) < t)) break;
        h.add_term(n, x * y);
      }
  return h;
}

PrincipalPart principal_part(const QSeries& f) {
  bool w0 = f.weight() == 0;
  if (w0 ? !(Bound(0L) < f.trunc()) : f.trunc() < Bound(0L))
    fail(Errc::truncation, "principal_part: truncation does not cover the principal part");
  PrincipalPart p;
  p.fqm = f.fqm();
  for (long i = 0; i < f.fqm().size(); ++i)
    for (const auto& [n, c] : f.component(i)) {
      if (n >= 0) break;
      p.terms[{i, n}] = c;
    }
  if (w0) {
    std::map<long, Rat> cst;
    for (long i = 0; i < f.fqm().size(); ++i) {
      Rat c = f.coeff(i, Rat(0));
      if (c != 0) cst[i] = c;
    }
    p.constant = std::move(cst);
  }
  return p;
}

long filtration_degree(const QSeries& f) {
  if (f.trunc() < Bound(0L)) fail(Errc::truncation, "filtration_degree: principal part not determined");
  Bound l = f.leading();
  if (l.is_inf() || l.value() >= 0) return 0;
  return to_ll(rat_ceil(-l.value()));
}

bool check_symmetry(const QSeries& f) {
  for (long i = 0; i < f.fqm().size(); ++i)
    if (f.component(i) != f.component(f.fqm().neg_index(i))) return false;
  return true;
}

bool check_symmetry(const PrincipalPart& p) {
  for (const auto& [key, c] : p.terms) {
    auto it = p.terms.find({p.fqm.neg_index(key.first), key.second});
    if (it == p.terms.end() || it->second != c) return false;
  }
  if (p.constant) {
    for (const auto& [i, c] : *p.constant) {
      auto it = p.constant->find(p.fqm.neg_index(i));
      if (it == p.constant->end() || it->second != c) return false;
    }
  }
  return true;
}

bool exponents_match_fqm(const QSeries& f) {
  for (long i = 0; i < f.fqm().size(); ++i) {
    Rat q = f.fqm().q(f.fqm().elem(i));
    for (const auto& [n, c] : f.component(i))
      if (frac(n) != q) return false;
  }
  return true;
}

QSeries scalar_one() {
  QSeries one = QSeries::scalar(Rat(0), Bound::infinity());
  one.add_term(Rat(0), Rat(1));
  return one;
}

QSeries scalar_inverse(const QSeries& s) {
  THP_REQUIRE(s.is_scalar(), "scalar_inverse: scalar series expected");
  Bound lead = s.leading();
  THP_REQUIRE(!lead.is_inf() && lead < s.trunc(), "scalar_inverse: leading term unknown or series is zero");
  const Rat a = lead.value();
  const Rat c = s.coeff(a);
  for (const auto& [n, v] : s.component(0))
    THP_REQUIRE(Rat(n - a).get_den() == 1, "scalar_inverse: exponents must lie in one class mod 1");
  QSeries inv = QSeries::scalar(-s.weight(), s.trunc().is_inf() ? Bound::infinity() : Bound(s.trunc().value() - 2 * a));
  THP_REQUIRE(!s.trunc().is_inf() || s.nterms() == 1, "scalar_inverse: infinite precision requires a monomial");
  if (s.trunc().is_inf()) {
    inv.add_term(-a, 1 / c);
    return inv;
  }
  // relative precision: offsets m < trunc - a
  Int prec = rat_ceil(s.trunc().value() - a);
  long mmax = to_ll(prec);
  std::vector<Rat> u(mmax > 0 ? mmax : 0), b(u.size());
  for (const auto& [n, v] : s.component(0)) {
    long m = to_ll(Rat(n - a).get_num());
    if (m < mmax) u[m] = v;
  }
  for (long m = 0; m < mmax; ++m) {
    Rat acc = m == 0 ? Rat(1) : Rat(0);
    for (long i = 1; i <= m; ++i)
      if (u[i] != 0) acc -= u[i] * b[m - i];
    b[m] = acc / c;
    inv.add_term(-a + m, b[m]);
  }
  return inv;
}

QSeries scalar_pow(const QSeries& s, long k) {
  THP_REQUIRE(s.is_scalar(), "scalar_pow: scalar series expected");
  if (k < 0) return scalar_pow(scalar_inverse(s), -k);
  QSeries r = scalar_one();
  QSeries base = s;
  while (k > 0) {
    if (k & 1) r = mul_scalar_series(base, r);
    k >>= 1;
    if (k > 0) base = mul_scalar_series(base, base);
  }
  return r;
}

}  // namespace thp
