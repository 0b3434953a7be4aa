#include <map>
#include <mutex>
#include <numeric>
#include <sstream>

#include "thetaprod/exact.hpp"

namespace thp {

namespace {

using Poly = std::vector<long>;  // coefficient of x^i at index i

Poly poly_divexact(Poly a, const Poly& b) {
  // b monic
  std::size_t db = b.size() - 1;
  if (a.size() < b.size()) return {0};
  Poly q(a.size() - db, 0);
  for (std::size_t i = a.size(); i-- > db;) {
    long c = a[i];
    q[i - db] = c;
    if (c == 0) continue;
    for (std::size_t j = 0; j <= db; ++j) a[i - db + j] -= c * b[j];
  }
  return q;
}

std::mutex g_mu;
std::map<long, Poly> g_phi;
std::map<long, std::shared_ptr<const CycField>> g_fields;

const Poly& cyclotomic_poly(long n) {
  auto it = g_phi.find(n);
  if (it != g_phi.end()) return it->second;
  Poly p(n + 1, 0);
  p[0] = -1;
  p[n] = 1;
  for (long d = 1; d < n; ++d)
    if (n % d == 0) p = poly_divexact(p, cyclotomic_poly(d));
  return g_phi[n] = p;
}

long ll_lcm(long a, long b) { return a / std::gcd(a, b) * b; }

}  // namespace

std::shared_ptr<const CycField> cyc_field(long n) {
  THP_REQUIRE(n >= 1, "cyclotomic conductor must be positive");
  std::lock_guard<std::mutex> lock(g_mu);
  auto it = g_fields.find(n);
  if (it != g_fields.end()) return it->second;
  const Poly& phi = cyclotomic_poly(n);
  long deg = static_cast<long>(phi.size()) - 1;
  auto f = std::make_shared<CycField>();
  f->n = n;
  f->phi = deg;
  std::vector<long> cur(deg, 0);
  if (deg > 0) cur[0] = 1;
  for (long a = 0; a < n; ++a) {
    f->red.push_back(cur);
    // multiply by x and reduce with the monic Phi_n
    long top = deg > 0 ? cur[deg - 1] : 0;
    for (long i = deg - 1; i > 0; --i) cur[i] = cur[i - 1];
    if (deg > 0) cur[0] = 0;
    if (top != 0)
      for (long i = 0; i < deg; ++i) cur[i] -= top * phi[i];
  }
  g_fields[n] = f;
  return f;
}

std::vector<long> cyc_reduce(const CycField& f, const std::vector<long>& powers) {
  std::vector<long> out(f.phi, 0);
  for (std::size_t a = 0; a < powers.size(); ++a) {
    if (powers[a] == 0) continue;
    const auto& r = f.red[a % f.n];
    for (long i = 0; i < f.phi; ++i) out[i] += powers[a] * r[i];
  }
  return out;
}

CycNum::CycNum() : n_(1), c_{Rat(0)} {}

CycNum::CycNum(const Rat& r) : n_(1), c_{r} {}

CycNum CycNum::root(const Rat& x) {
  Rat y = frac(x);
  long n = static_cast<long>(to_ll(y.get_den()));
  long a = static_cast<long>(to_ll(y.get_num()));
  std::vector<long> p(n, 0);
  p[a] = 1;
  return from_powers(n, p);
}

CycNum CycNum::from_powers(long n, const std::vector<Rat>& c) {
  THP_REQUIRE(static_cast<long>(c.size()) == n, "from_powers: coefficient count must equal conductor");
  auto f = cyc_field(n);
  std::vector<Rat> out(f->phi);
  for (long a = 0; a < n; ++a) {
    if (c[a] == 0) continue;
    const auto& r = f->red[a];
    for (long i = 0; i < f->phi; ++i)
      if (r[i] != 0) out[i] += c[a] * r[i];
  }
  return CycNum(n, std::move(out));
}

CycNum CycNum::from_powers(long n, const std::vector<long>& c) {
  THP_REQUIRE(static_cast<long>(c.size()) == n, "from_powers: coefficient count must equal conductor");
  auto f = cyc_field(n);
  auto red = cyc_reduce(*f, c);
  std::vector<Rat> out(red.begin(), red.end());
  return CycNum(n, std::move(out));
}

CycNum CycNum::sqrt(const Int& n) {
  THP_REQUIRE(n > 0, "sqrt of a non-positive integer");
  Int m = n, s = 1;
  CycNum root_m(1);
  for (Int p = 2; p * p <= m; ++p) {
    while (m % (p * p) == 0) {
      m /= p * p;
      s *= p;
    }
  }
  // m is now squarefree
  Int rest = m;
  for (Int p = 2; rest > 1; ++p) {
    if (p * p > rest) p = rest;
    if (rest % p != 0) continue;
    rest /= p;
    CycNum r;
    if (p == 2) {
      r = root(ratio(1, 8)) + root(ratio(-1, 8));
    } else {
      long pl = static_cast<long>(to_ll(p));
      std::vector<long> g(pl, 0);
      for (long x = 0; x < pl; ++x) g[(x * x) % pl] += 1;
      CycNum gauss = from_powers(pl, g);
      r = (pl % 4 == 1) ? gauss : root(ratio(-1, 4)) * gauss;
    }
    root_m = root_m * r;
  }
  CycNum out = CycNum(Rat(s)) * root_m;
  THP_ASSERT(out * out == CycNum(Rat(n)), "sqrt: squaring check failed");
  return out;
}

CycNum CycNum::lifted(long m) const {
  THP_REQUIRE(m % n_ == 0, "lifted: target conductor must be a multiple");
  if (m == n_) return *this;
  long step = m / n_;
  std::vector<Rat> p(m);
  for (std::size_t i = 0; i < c_.size(); ++i) p[i * step] = c_[i];
  return from_powers(m, p);
}

bool CycNum::is_zero() const {
  for (const auto& x : c_)
    if (x != 0) return false;
  return true;
}

std::optional<Rat> CycNum::as_rational() const {
  if (c_.empty()) return Rat(0);
  for (std::size_t i = 1; i < c_.size(); ++i)
    if (c_[i] != 0) return std::nullopt;
  return c_[0];
}

CycNum CycNum::conj() const {
  std::vector<Rat> p(n_);
  for (std::size_t i = 0; i < c_.size(); ++i) p[(n_ - static_cast<long>(i)) % n_] += c_[i];
  return from_powers(n_, p);
}

CycNum operator+(const CycNum& a, const CycNum& b) {
  long m = ll_lcm(a.n_, b.n_);
  CycNum x = a.lifted(m), y = b.lifted(m);
  for (std::size_t i = 0; i < x.c_.size(); ++i) x.c_[i] += y.c_[i];
  return x;
}

CycNum CycNum::operator-() const {
  CycNum x = *this;
  for (auto& v : x.c_) v = -v;
  return x;
}

CycNum operator-(const CycNum& a, const CycNum& b) { return a + (-b); }

CycNum operator*(const CycNum& a, const CycNum& b) {
  long m = ll_lcm(a.n_, b.n_);
  CycNum x = a.lifted(m), y = b.lifted(m);
  auto f = cyc_field(m);
  std::vector<Rat> prod(2 * f->phi > 0 ? 2 * f->phi - 1 : 1);
  for (long i = 0; i < f->phi; ++i) {
    if (x.c_[i] == 0) continue;
    for (long j = 0; j < f->phi; ++j)
      if (y.c_[j] != 0) prod[i + j] += x.c_[i] * y.c_[j];
  }
  std::vector<Rat> out(f->phi);
  for (std::size_t k = 0; k < prod.size(); ++k) {
    if (prod[k] == 0) continue;
    if (static_cast<long>(k) < f->phi) {
      out[k] += prod[k];
      continue;
    }
    const auto& r = f->red[k % m];
    for (long i = 0; i < f->phi; ++i)
      if (r[i] != 0) out[i] += prod[k] * r[i];
  }
  return CycNum(m, std::move(out));
}

bool operator==(const CycNum& a, const CycNum& b) {
  if (a.n_ == b.n_) return a.c_ == b.c_;
  long m = ll_lcm(a.n_, b.n_);
  return a.lifted(m).c_ == b.lifted(m).c_;
}

std::string CycNum::str() const {
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    if (!first) os << " + ";
    first = false;
    os << to_string(c_[i]);
    if (i > 0) os << "*z" << n_ << "^" << i;
  }
  if (first) os << "0";
  return os.str();
}

}  // namespace thp
