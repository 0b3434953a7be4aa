#include "thetaprod/weil.hpp"

#include <numeric>

namespace thp {

namespace {

long lcm_l(long a, long b) { return a / std::gcd(a, b) * b; }

long mod(long a, long m) {
  long r = a % m;
  return r < 0 ? r + m : r;
}

}  // namespace

WeilMatrix::WeilMatrix(std::size_t rows, std::size_t cols, long cond)
    : rows_(rows), cols_(cols), cond_(cond), field_(cyc_field(cond)) {
  phi_ = field_->phi;
  a_.assign(rows * cols * phi_, 0);
}

WeilMatrix WeilMatrix::identity(std::size_t n, long cond) {
  WeilMatrix m(n, n, cond);
  for (std::size_t i = 0; i < n; ++i) m.add_root(i, i, 0);
  return m;
}

WeilMatrix WeilMatrix::from_linmap(const FqmLinMap& lm, long cond) {
  WeilMatrix m(lm.target().size(), lm.source().size(), cond);
  for (long j = 0; j < lm.source().size(); ++j)
    for (const auto& [i, v] : lm.column(j)) {
      THP_REQUIRE(v.get_den() == 1, "from_linmap: entries must be integers");
      m.add_root(i, j, 0, to_ll(v.get_num()));
    }
  return m;
}

void WeilMatrix::add_root(std::size_t i, std::size_t j, long power, long coefficient) {
  const auto& r = field_->red[mod(power, cond_)];
  long* e = raw(i, j);
  for (long t = 0; t < phi_; ++t) e[t] += coefficient * r[t];
}

CycNum WeilMatrix::entry(std::size_t i, std::size_t j) const {
  std::vector<long> p(cond_, 0);
  const long* e = raw(i, j);
  for (long t = 0; t < phi_; ++t) p[t] = e[t];
  return scale_ * CycNum::from_powers(cond_, p);
}

WeilMatrix WeilMatrix::lifted(long cond) const {
  THP_REQUIRE(cond % cond_ == 0, "WeilMatrix::lifted: conductor must be a multiple");
  if (cond == cond_) return *this;
  WeilMatrix m(rows_, cols_, cond);
  m.scale_ = scale_;
  long step = cond / cond_;
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) {
      const long* e = raw(i, j);
      for (long t = 0; t < phi_; ++t)
        if (e[t] != 0) m.add_root(i, j, t * step, e[t]);
    }
  return m;
}

WeilMatrix WeilMatrix::adjoint() const {
  WeilMatrix m(cols_, rows_, cond_);
  m.scale_ = scale_.conj();
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) {
      const long* e = raw(i, j);
      for (long t = 0; t < phi_; ++t)
        if (e[t] != 0) m.add_root(j, i, -t, e[t]);
    }
  return m;
}

WeilMatrix operator*(const WeilMatrix& x, const WeilMatrix& y) {
  THP_REQUIRE(x.cols_ == y.rows_, "WeilMatrix product shape mismatch");
  long cond = lcm_l(x.cond_, y.cond_);
  const WeilMatrix a = x.lifted(cond), b = y.lifted(cond);
  WeilMatrix c(a.rows_, b.cols_, cond);
  c.scale_ = a.scale_ * b.scale_;
  auto f = cyc_field(cond);
  const long phi = a.phi_;
  const std::size_t width = 2 * phi - 1;
  // sparse view of b
  std::vector<std::vector<std::pair<long, long>>> bnz(b.rows_ * b.cols_);
  for (std::size_t k = 0; k < b.rows_; ++k)
    for (std::size_t j = 0; j < b.cols_; ++j) {
      const long* e = b.raw(k, j);
      for (long t = 0; t < phi; ++t)
        if (e[t] != 0) bnz[k * b.cols_ + j].emplace_back(t, e[t]);
    }
  std::vector<long> buf(b.cols_ * width);
  for (std::size_t i = 0; i < a.rows_; ++i) {
    std::fill(buf.begin(), buf.end(), 0);
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const long* e = a.raw(i, k);
      for (long s = 0; s < phi; ++s) {
        if (e[s] == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j)
          for (const auto& [t, v] : bnz[k * b.cols_ + j]) buf[j * width + s + t] += e[s] * v;
      }
    }
    for (std::size_t j = 0; j < b.cols_; ++j) {
      long* out = c.raw(i, j);
      for (std::size_t t = 0; t < width; ++t) {
        long v = buf[j * width + t];
        if (v == 0) continue;
        if (static_cast<long>(t) < phi) {
          out[t] += v;
        } else {
          const auto& r = f->red[t % cond];
          for (long u = 0; u < phi; ++u) out[u] += v * r[u];
        }
      }
    }
  }
  return c;
}

bool operator==(const WeilMatrix& x, const WeilMatrix& y) {
  if (x.rows_ != y.rows_ || x.cols_ != y.cols_) return false;
  long cond = lcm_l(x.cond_, y.cond_);
  const WeilMatrix a = x.lifted(cond), b = y.lifted(cond);
  if (a.scale_ == b.scale_) return a.a_ == b.a_;
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t j = 0; j < a.cols_; ++j)
      if (a.entry(i, j) != b.entry(i, j)) return false;
  return true;
}

WeilMatrix rho_T(const Fqm& a) {
  WeilMatrix m(a.size(), a.size(), a.level());
  for (long i = 0; i < a.size(); ++i) m.add_root(i, i, a.qnum(a.elem(i)));
  return m;
}

WeilMatrix rho_S(const Fqm& a) {
  WeilMatrix m(a.size(), a.size(), a.level());
  const auto elems = a.elements();
  for (long mu = 0; mu < a.size(); ++mu)
    for (long lam = 0; lam < a.size(); ++lam) m.add_root(mu, lam, -a.bnum(elems[lam], elems[mu]));
  int sigma = milgram_signature(a);
  Int n(a.size());
  m.set_scale(CycNum::root(ratio(-sigma, 8)) * CycNum::sqrt(n) * CycNum(ratio(Int(1), n)));
  return m;
}

WeilMatrix rho_Z(const Fqm& a) {
  WeilMatrix m(a.size(), a.size(), 1);
  for (long i = 0; i < a.size(); ++i) m.add_root(a.neg_index(i), i, 0);
  m.set_scale(CycNum::root(ratio(-milgram_signature(a), 4)));
  return m;
}

CheckReport check_mp2_relations(const Fqm& a) {
  CheckReport rep;
  auto bad = [&rep](const std::string& what) {
    rep.ok = false;
    if (!rep.detail.empty()) rep.detail += "; ";
    rep.detail += what;
  };
  const WeilMatrix s = rho_S(a), t = rho_T(a), z = rho_Z(a);
  const WeilMatrix st = s * t;
  if (st * st * st != z) bad("(ST)^3 != Z");
  if (s * s != z) bad("S^2 != Z");
  if (z * t != t * z) bad("ZT != TZ");
  const WeilMatrix z2 = z * z;
  if (z2 * z2 != WeilMatrix::identity(a.size())) bad("Z^4 != 1");
  if (s * s.adjoint() != WeilMatrix::identity(a.size())) bad("S is not unitary");
  return rep;
}

CheckReport check_intertwine(const Fqm& a, const FqmSubgroup& i) {
  CheckReport rep;
  auto bad = [&rep](const std::string& what) {
    rep.ok = false;
    if (!rep.detail.empty()) rep.detail += "; ";
    rep.detail += what;
  };
  Subquotient sq(a, i);
  const Fqm& aq = sq.quotient();
  const WeilMatrix up = WeilMatrix::from_linmap(pullback_map(sq));
  const WeilMatrix down = WeilMatrix::from_linmap(pushforward_map(sq));
  const WeilMatrix ta = rho_T(a), sa = rho_S(a), tq = rho_T(aq), sq_s = rho_S(aq);
  if (ta * up != up * tq) bad("T does not commute with up");
  if (sa * up != up * sq_s) bad("S does not commute with up");
  if (down * ta != tq * down) bad("T does not commute with down");
  if (down * sa != sq_s * down) bad("S does not commute with down");
  return rep;
}

}  // namespace thp
