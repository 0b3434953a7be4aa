#include "thetaprod/fqm.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

namespace thp {

namespace {

long mod(long a, long m) {
  long r = a % m;
  return r < 0 ? r + m : r;
}

Int den_lcm(const std::vector<Rat>& q, const std::vector<std::vector<Rat>>& b) {
  Int l = 1;
  for (const auto& x : q) l = lcm(l, frac(x).get_den());
  for (const auto& row : b)
    for (const auto& x : row) l = lcm(l, frac(x).get_den());
  return l;
}

}  // namespace

Fqm Fqm::raw(const std::vector<long>& orders, const std::vector<Rat>& qdiag,
             const std::vector<std::vector<Rat>>& bform) {
  const std::size_t k = orders.size();
  THP_REQUIRE(qdiag.size() == k && bform.size() == k, "fqm: shape mismatch between orders, qdiag and bform");
  for (const auto& row : bform) THP_REQUIRE(row.size() == k, "fqm: bform must be square");
  Fqm a;
  a.orders_ = orders;
  a.size_ = 1;
  for (long d : orders) {
    THP_REQUIRE(d >= 1, "fqm: orders must be positive");
    a.size_ *= d;
  }
  a.level_ = to_ll(den_lcm(qdiag, bform));
  a.qn_.resize(k);
  a.bn_.assign(k, std::vector<long>(k));
  for (std::size_t i = 0; i < k; ++i) {
    a.qn_[i] = to_ll(Rat(frac(qdiag[i]) * a.level_).get_num());
    for (std::size_t j = 0; j < k; ++j) {
      THP_REQUIRE(frac(bform[i][j]) == frac(bform[j][i]), "fqm: bform must be symmetric");
      a.bn_[i][j] = to_ll(Rat(frac(bform[i][j]) * a.level_).get_num());
    }
  }
  for (std::size_t i = 0; i < k; ++i) {
    THP_REQUIRE(mod(2 * a.qn_[i] - a.bn_[i][i], a.level_) == 0, "fqm: 2q(g_i) must equal b(g_i,g_i) mod 1");
    long d = orders[i];
    THP_REQUIRE(mod(d * d % a.level_ * a.qn_[i], a.level_) == 0, "fqm: q(d_i g_i) must vanish");
    for (std::size_t j = 0; j < k; ++j)
      THP_REQUIRE(mod(d * a.bn_[i][j], a.level_) == 0, "fqm: b(d_i g_i, g_j) must vanish");
  }
  return a;
}

Fqm Fqm::make(const std::vector<long>& orders, const std::vector<Rat>& qdiag,
              const std::vector<std::vector<Rat>>& bform) {
  Fqm a = raw(orders, qdiag, bform);
  bool chain = true;
  for (std::size_t i = 0; i < orders.size(); ++i) {
    if (orders[i] < 2) chain = false;
    if (i + 1 < orders.size() && orders[i + 1] % orders[i] != 0) chain = false;
  }
  if (!chain) a = Subquotient(a, trivial_subgroup(a)).quotient();
  THP_REQUIRE(a.nondegenerate(), "fqm: bilinear form is degenerate");
  return a;
}

std::vector<Rat> Fqm::qdiag() const {
  std::vector<Rat> out;
  for (long v : qn_) out.emplace_back(v, level_);
  for (auto& x : out) x.canonicalize();
  return out;
}

std::vector<std::vector<Rat>> Fqm::bform() const {
  std::vector<std::vector<Rat>> out(bn_.size());
  for (std::size_t i = 0; i < bn_.size(); ++i)
    for (long v : bn_[i]) {
      Rat r(v, level_);
      r.canonicalize();
      out[i].push_back(r);
    }
  return out;
}

long Fqm::qnum(const FqmElem& x) const {
  long s = 0;
  const std::size_t k = orders_.size();
  for (std::size_t i = 0; i < k; ++i) {
    if (x[i] == 0) continue;
    long xi = mod(x[i], level_);
    s = mod(s + mod(xi * xi, level_) * qn_[i], level_);
    for (std::size_t j = i + 1; j < k; ++j)
      if (x[j] != 0) s = mod(s + mod(xi * mod(x[j], level_), level_) * bn_[i][j], level_);
  }
  return s;
}

long Fqm::bnum(const FqmElem& x, const FqmElem& y) const {
  long s = 0;
  const std::size_t k = orders_.size();
  for (std::size_t i = 0; i < k; ++i) {
    if (x[i] == 0) continue;
    long xi = mod(x[i], level_);
    for (std::size_t j = 0; j < k; ++j)
      if (y[j] != 0) s = mod(s + mod(xi * mod(y[j], level_), level_) * bn_[i][j], level_);
  }
  return s;
}

FqmElem Fqm::add(const FqmElem& x, const FqmElem& y) const {
  FqmElem z(orders_.size());
  for (std::size_t i = 0; i < z.size(); ++i) z[i] = mod(x[i] + y[i], orders_[i]);
  return z;
}

FqmElem Fqm::neg(const FqmElem& x) const {
  FqmElem z(orders_.size());
  for (std::size_t i = 0; i < z.size(); ++i) z[i] = mod(-x[i], orders_[i]);
  return z;
}

FqmElem Fqm::mul(long k, const FqmElem& x) const {
  FqmElem z(orders_.size());
  for (std::size_t i = 0; i < z.size(); ++i) z[i] = mod(mod(k, orders_[i]) * x[i], orders_[i]);
  return z;
}

FqmElem Fqm::reduce(const std::vector<long>& raw) const {
  THP_REQUIRE(raw.size() == orders_.size(), "fqm element has the wrong length");
  FqmElem z(raw.size());
  for (std::size_t i = 0; i < z.size(); ++i) z[i] = mod(raw[i], orders_[i]);
  return z;
}

FqmElem Fqm::reduce(const IntVec& raw) const {
  THP_REQUIRE(raw.size() == orders_.size(), "fqm element has the wrong length");
  FqmElem z(raw.size());
  for (std::size_t i = 0; i < z.size(); ++i) {
    Int r;
    Int d(static_cast<long>(orders_[i]));
    mpz_fdiv_r(r.get_mpz_t(), raw[i].get_mpz_t(), d.get_mpz_t());
    z[i] = r.get_si();
  }
  return z;
}

long Fqm::index(const FqmElem& x) const {
  long idx = 0;
  for (std::size_t i = 0; i < orders_.size(); ++i) {
    THP_REQUIRE(x[i] >= 0 && x[i] < orders_[i], "fqm element is not reduced");
    idx = idx * orders_[i] + x[i];
  }
  return idx;
}

FqmElem Fqm::elem(long index) const {
  FqmElem x(orders_.size());
  for (std::size_t i = orders_.size(); i-- > 0;) {
    x[i] = index % orders_[i];
    index /= orders_[i];
  }
  return x;
}

std::vector<FqmElem> Fqm::elements() const {
  std::vector<FqmElem> out;
  out.reserve(size_);
  for (long i = 0; i < size_; ++i) out.push_back(elem(i));
  return out;
}

Fqm Fqm::scaled(long k) const {
  Fqm a = *this;
  for (auto& v : a.qn_) v = mod(k * v, level_);
  for (auto& row : a.bn_)
    for (auto& v : row) v = mod(k * v, level_);
  return a;
}

bool Fqm::nondegenerate() const {
  if (size_ > 200000) return true;  // generated by a lattice in practice; exhaustive check too costly
  std::vector<FqmElem> gens;
  for (std::size_t i = 0; i < orders_.size(); ++i) {
    FqmElem g = zero();
    g[i] = 1 % orders_[i];
    gens.push_back(g);
  }
  for (long i = 1; i < size_; ++i) {
    FqmElem x = elem(i);
    bool paired = false;
    for (const auto& g : gens)
      if (bnum(x, g) != 0) {
        paired = true;
        break;
      }
    if (!paired) return false;
  }
  return true;
}

Fqm direct_sum(const Fqm& a, const Fqm& b) {
  std::vector<long> orders = a.orders();
  orders.insert(orders.end(), b.orders().begin(), b.orders().end());
  std::vector<Rat> q = a.qdiag();
  auto qb = b.qdiag();
  q.insert(q.end(), qb.begin(), qb.end());
  const std::size_t k = orders.size(), ka = a.ngens();
  std::vector<std::vector<Rat>> bf(k, std::vector<Rat>(k));
  auto ba = a.bform(), bb = b.bform();
  for (std::size_t i = 0; i < ka; ++i)
    for (std::size_t j = 0; j < ka; ++j) bf[i][j] = ba[i][j];
  for (std::size_t i = ka; i < k; ++i)
    for (std::size_t j = ka; j < k; ++j) bf[i][j] = bb[i - ka][j - ka];
  return Fqm::make(orders, q, bf);
}

FqmSubgroup::FqmSubgroup(const Fqm& parent, std::vector<FqmElem> gens) : parent_(parent) {
  const std::size_t k = parent.ngens();
  std::vector<std::vector<Int>> rows;
  for (auto& g : gens) {
    g = parent.reduce(g);
    if (g == parent.zero()) continue;
    gens_.push_back(g);
    rows.emplace_back(g.begin(), g.end());
  }
  for (std::size_t i = 0; i < k; ++i) {
    std::vector<Int> r(k, 0);
    r[i] = Int(static_cast<long>(parent.orders()[i]));
    rows.push_back(r);
  }
  hnf_ = ::thp::hnf_basis(IntMatrix::from_rows(rows, k));
  THP_ASSERT(hnf_.rows() == k, "subgroup preimage must have full rank");
  Int s = 1;
  for (std::size_t i = 0; i < k; ++i) s *= Int(static_cast<long>(parent.orders()[i])) / hnf_(i, i);
  size_ = to_ll(s);
}

bool FqmSubgroup::contains(const FqmElem& x) const {
  const std::size_t k = parent_.ngens();
  std::vector<Int> r(x.begin(), x.end());
  for (std::size_t i = 0; i < k; ++i) {
    if (r[i] % hnf_(i, i) != 0) return false;
    Int c = r[i] / hnf_(i, i);
    if (c == 0) continue;
    for (std::size_t j = i; j < k; ++j) r[j] -= c * hnf_(i, j);
  }
  return true;
}

std::vector<FqmElem> FqmSubgroup::elements() const {
  std::vector<FqmElem> out;
  for (long i = 0; i < parent_.size(); ++i) {
    FqmElem x = parent_.elem(i);
    if (contains(x)) out.push_back(x);
  }
  return out;
}

bool FqmSubgroup::isotropic() const {
  for (std::size_t i = 0; i < gens_.size(); ++i) {
    if (parent_.qnum(gens_[i]) != 0) return false;
    for (std::size_t j = i + 1; j < gens_.size(); ++j)
      if (parent_.bnum(gens_[i], gens_[j]) != 0) return false;
  }
  return true;
}

FqmSubgroup whole_group(const Fqm& a) {
  std::vector<FqmElem> gens;
  for (std::size_t i = 0; i < a.ngens(); ++i) {
    FqmElem g = a.zero();
    g[i] = 1;
    gens.push_back(g);
  }
  return FqmSubgroup(a, gens);
}

FqmSubgroup trivial_subgroup(const Fqm& a) { return FqmSubgroup(a, {}); }

FqmSubgroup subgroup_perp(const FqmSubgroup& h) {
  const Fqm& a = h.parent();
  std::vector<FqmElem> gens;
  for (long i = 0; i < a.size(); ++i) {
    FqmElem x = a.elem(i);
    bool ok = true;
    for (const auto& g : h.gens())
      if (a.bnum(x, g) != 0) {
        ok = false;
        break;
      }
    if (ok) gens.push_back(x);
  }
  return FqmSubgroup(a, gens);
}

FqmSubgroup intersect(const FqmSubgroup& a, const FqmSubgroup& b) {
  THP_REQUIRE(a.parent() == b.parent(), "intersect: subgroups of different modules");
  std::vector<FqmElem> gens;
  for (const auto& x : a.elements())
    if (b.contains(x)) gens.push_back(x);
  return FqmSubgroup(a.parent(), gens);
}

FqmSubgroup subgroup_sum(const FqmSubgroup& a, const FqmSubgroup& b) {
  THP_REQUIRE(a.parent() == b.parent(), "subgroup_sum: subgroups of different modules");
  auto gens = a.gens();
  gens.insert(gens.end(), b.gens().begin(), b.gens().end());
  return FqmSubgroup(a.parent(), gens);
}

FqmLinMap::FqmLinMap(Fqm source, Fqm target)
    : source_(std::move(source)), target_(std::move(target)), cols_(source_.size()) {}

FqmLinMap FqmLinMap::identity(const Fqm& a) {
  FqmLinMap m(a, a);
  for (long j = 0; j < a.size(); ++j) m.cols_[j] = {{j, Rat(1)}};
  return m;
}

void FqmLinMap::set_column(long j, Column c) {
  std::sort(c.begin(), c.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  Column merged;
  for (auto& [i, v] : c) {
    THP_REQUIRE(i >= 0 && i < target_.size(), "linmap row index out of range");
    if (!merged.empty() && merged.back().first == i)
      merged.back().second += v;
    else
      merged.emplace_back(i, v);
  }
  merged.erase(std::remove_if(merged.begin(), merged.end(), [](const auto& e) { return e.second == 0; }),
               merged.end());
  cols_.at(j) = std::move(merged);
}

Rat FqmLinMap::entry(long row, long col) const {
  for (const auto& [i, v] : cols_.at(col))
    if (i == row) return v;
  return 0;
}

FqmLinMap FqmLinMap::transpose() const {
  FqmLinMap t(target_, source_);
  std::vector<Column> cols(target_.size());
  for (long j = 0; j < source_.size(); ++j)
    for (const auto& [i, v] : cols_[j]) cols[i].emplace_back(j, v);
  for (long i = 0; i < target_.size(); ++i) t.set_column(i, std::move(cols[i]));
  return t;
}

FqmLinMap FqmLinMap::scaled(const Rat& c) const {
  FqmLinMap m = *this;
  for (long j = 0; j < source_.size(); ++j) {
    Column col;
    for (const auto& [i, v] : cols_[j]) col.emplace_back(i, v * c);
    m.set_column(j, col);
  }
  return m;
}

FqmLinMap operator*(const FqmLinMap& a, const FqmLinMap& b) {
  THP_REQUIRE(b.target_ == a.source_, "linmap composition: module mismatch");
  FqmLinMap c(b.source_, a.target_);
  for (long j = 0; j < b.source_.size(); ++j) {
    FqmLinMap::Column col;
    for (const auto& [k, v] : b.cols_[j])
      for (const auto& [i, w] : a.cols_[k]) col.emplace_back(i, v * w);
    c.set_column(j, col);
  }
  return c;
}

bool operator==(const FqmLinMap& a, const FqmLinMap& b) {
  return a.source_ == b.source_ && a.target_ == b.target_ && a.cols_ == b.cols_;
}

Subquotient::Subquotient(const Fqm& a, const FqmSubgroup& i) : parent_(a), i_(i) {
  THP_REQUIRE(i.parent() == a, "subquotient: subgroup of a different module");
  THP_REQUIRE(i.isotropic(), "subquotient: subgroup is not isotropic");
  perp_ = subgroup_perp(i);
  const std::size_t k = a.ngens();
  RatMatrix p = to_rat(perp_.hnf_basis());
  RatMatrix pinv = inverse(p);
  IntMatrix c = to_int(to_rat(i.hnf_basis()) * pinv);
  Snf snf = matrix_snf(c);
  to_z_ = pinv * to_rat(snf.V);
  from_z_ = to_int(inverse(to_rat(snf.V)) * p);
  std::vector<long> orders;
  for (std::size_t t = 0; t < k; ++t) {
    Int d = snf.D(t, t);
    THP_ASSERT(d != 0, "subquotient: degenerate relation matrix");
    if (d > 1) {
      kept_.push_back(t);
      orders.push_back(to_ll(d));
    }
  }
  std::vector<FqmElem> gens;
  for (std::size_t t : kept_) gens.push_back(a.reduce(from_z_.row(t)));
  std::vector<Rat> q;
  std::vector<std::vector<Rat>> b(gens.size(), std::vector<Rat>(gens.size()));
  for (std::size_t s = 0; s < gens.size(); ++s) {
    q.push_back(a.q(gens[s]));
    for (std::size_t t = 0; t < gens.size(); ++t) b[s][t] = a.b(gens[s], gens[t]);
  }
  quotient_ = Fqm::raw(orders, q, b);
}

std::optional<FqmElem> Subquotient::proj(const FqmElem& x) const {
  if (!perp_.contains(x)) return std::nullopt;
  RatVec xv(x.begin(), x.end());
  RatVec z = vec_mul(xv, to_z_);
  FqmElem y;
  for (std::size_t t : kept_) {
    THP_ASSERT(z[t].get_den() == 1, "subquotient projection is not integral");
    Int r;
    Int d(static_cast<long>(quotient_.orders()[y.size()]));
    mpz_fdiv_r(r.get_mpz_t(), z[t].get_num_mpz_t(), d.get_mpz_t());
    y.push_back(r.get_si());
  }
  return y;
}

FqmElem Subquotient::lift(const FqmElem& y) const {
  const std::size_t k = parent_.ngens();
  IntVec x(k, 0);
  for (std::size_t s = 0; s < kept_.size(); ++s)
    for (std::size_t j = 0; j < k; ++j) x[j] += Int(static_cast<long>(y[s])) * from_z_(kept_[s], j);
  return parent_.reduce(x);
}

Subquotient subquotient(const Fqm& a, const FqmSubgroup& i) { return Subquotient(a, i); }

FqmLinMap pullback_map(const Subquotient& sq) {
  const Fqm& a = sq.perp().parent();
  FqmLinMap m(sq.quotient(), a);
  std::vector<FqmLinMap::Column> cols(sq.quotient().size());
  for (long j = 0; j < a.size(); ++j) {
    auto p = sq.proj(a.elem(j));
    if (p) cols[sq.quotient().index(*p)].emplace_back(j, Rat(1));
  }
  for (long i = 0; i < sq.quotient().size(); ++i) m.set_column(i, cols[i]);
  return m;
}

FqmLinMap pushforward_map(const Subquotient& sq) {
  const Fqm& a = sq.perp().parent();
  FqmLinMap m(a, sq.quotient());
  for (long j = 0; j < a.size(); ++j) {
    auto p = sq.proj(a.elem(j));
    if (p) m.set_column(j, {{sq.quotient().index(*p), Rat(1)}});
  }
  return m;
}

int milgram_signature(const Fqm& a) {
  std::vector<long> counts(a.level(), 0);
  for (long i = 0; i < a.size(); ++i) counts[a.qnum(a.elem(i))] += 1;
  CycNum gauss = CycNum::from_powers(a.level(), counts);
  CycNum s = CycNum::sqrt(Int(static_cast<long>(a.size())));
  for (int k = 0; k < 8; ++k)
    if (gauss == s * CycNum::root(ratio(k, 8))) return k;
  fail(Errc::precondition, "milgram_signature: Gauss sum matches no eighth root of unity (degenerate input?)");
}

std::vector<FqmSubgroup> enumerate_isotropic_subgroups(const Fqm& a, long cap) {
  if (a.size() > cap)
    fail(Errc::precondition, "enumerate_isotropic_subgroups: |A| = " + std::to_string(a.size()) +
                                 " exceeds the cap " + std::to_string(cap));
  std::vector<FqmElem> iso;
  for (long i = 1; i < a.size(); ++i) {
    FqmElem x = a.elem(i);
    if (a.qnum(x) == 0) iso.push_back(x);
  }
  std::vector<FqmSubgroup> found{trivial_subgroup(a)};
  std::set<std::vector<Int>> seen{found[0].hnf_basis().data()};
  for (std::size_t cur = 0; cur < found.size(); ++cur) {
    const FqmSubgroup h = found[cur];
    for (const auto& x : iso) {
      if (h.contains(x)) continue;
      bool orth = true;
      for (const auto& g : h.gens())
        if (a.bnum(x, g) != 0) {
          orth = false;
          break;
        }
      if (!orth) continue;
      auto gens = h.gens();
      gens.push_back(x);
      FqmSubgroup next(a, gens);
      if (seen.insert(next.hnf_basis().data()).second) found.push_back(next);
    }
  }
  std::sort(found.begin(), found.end(), [](const FqmSubgroup& x, const FqmSubgroup& y) {
    if (x.size() != y.size()) return x.size() < y.size();
    return x.hnf_basis().data() < y.hnf_basis().data();
  });
  return found;
}

PullPushReport pullpush_compose_check(const Fqm& a, const FqmSubgroup& i1, const FqmSubgroup& i2) {
  PullPushReport rep;
  Subquotient sq1(a, i1), sq2(a, i2);
  const Fqm &a1 = sq1.quotient(), &a2 = sq2.quotient();

  std::vector<FqmElem> g2, g1;
  for (const auto& x : i2.elements())
    if (auto y = sq1.proj(x)) g2.push_back(*y);
  for (const auto& x : i1.elements())
    if (auto y = sq2.proj(x)) g1.push_back(*y);
  FqmSubgroup i2p(a1, g2), i1p(a2, g1);
  Subquotient first(a1, i2p), second(a2, i1p);
  const Fqm &pa = first.quotient(), &pb = second.quotient();
  if (pa.size() != pb.size()) {
    rep.detail = "the two descriptions of A' have different orders";
    return rep;
  }

  // canonical isomorphism through I1^perp cap I2^perp
  std::vector<long> phi(pa.size(), -1);
  for (long t = 0; t < a.size(); ++t) {
    FqmElem x = a.elem(t);
    auto x1 = sq1.proj(x), x2 = sq2.proj(x);
    if (!x1 || !x2) continue;
    auto ya = first.proj(*x1), yb = second.proj(*x2);
    if (!ya || !yb) {
      rep.detail = "an element of I1^perp cap I2^perp leaves one description of A'";
      return rep;
    }
    long ia = pa.index(*ya), ib = pb.index(*yb);
    if (phi[ia] == -1) {
      phi[ia] = ib;
    } else if (phi[ia] != ib) {
      rep.detail = "the identification of the two descriptions of A' is not well defined";
      return rep;
    }
    if (pa.qnum(*ya) * pb.level() != pb.qnum(*yb) * pa.level()) {
      rep.detail = "the identification of the two descriptions of A' is not an isometry";
      return rep;
    }
  }
  std::vector<long> sorted = phi;
  std::sort(sorted.begin(), sorted.end());
  for (long t = 0; t < pa.size(); ++t)
    if (sorted[t] != t) {
      rep.detail = "the identification of the two descriptions of A' is not bijective";
      return rep;
    }
  FqmLinMap iso(pa, pb);
  for (long t = 0; t < pa.size(); ++t) iso.set_column(t, {{phi[t], Rat(1)}});

  rep.factor = intersect(i1, i2).size();
  FqmLinMap lhs = pushforward_map(sq2) * pullback_map(sq1);
  FqmLinMap rhs = (pullback_map(second) * iso * pushforward_map(first)).scaled(Rat(rep.factor));
  rep.ok = lhs == rhs;
  if (!rep.ok) rep.detail = "matrix identity fails";
  return rep;
}

}  // namespace thp
