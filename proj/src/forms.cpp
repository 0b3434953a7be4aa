#include "thetaprod/forms.hpp"

#include <algorithm>
#include <regex>
#include <set>

namespace thp {

namespace {

// largest integer n with n < t
long last_below(const Rat& t) { return to_ll(rat_ceil(t)) - 1; }

Int sigma(long n, int k) {
  Int s = 0;
  for (long d = 1; d <= n; ++d)
    if (n % d == 0) {
      Int p = 1;
      for (int i = 0; i < k; ++i) p *= d;
      s += p;
    }
  return s;
}

QSeries eisenstein(const Rat& trunc, int k, long c) {
  QSeries e = QSeries::scalar(Rat(k + 1), Bound(trunc));
  long nmax = last_below(trunc);
  if (nmax >= 0) e.add_term(Rat(0), Rat(1));
  for (long n = 1; n <= nmax; ++n) e.add_term(Rat(n), Rat(Int(c) * sigma(n, k)));
  return e;
}

// prod_{n >= 1} (1 - q^n), Euler's pentagonal series, complete below n < nt
QSeries euler_product(long nt) {
  QSeries p = QSeries::scalar(Rat(0), Bound(Rat(nt)));
  for (long m = 0;; ++m) {
    long e1 = m * (3 * m - 1) / 2, e2 = m * (3 * m + 1) / 2;
    if (e1 >= nt) break;
    Rat sgn((m % 2 == 0) ? 1 : -1);
    p.add_term(Rat(e1), sgn);
    if (m > 0) p.add_term(Rat(e2), sgn);
  }
  return p;
}

QSeries shift(const QSeries& s, const Rat& a) {
  QSeries out = QSeries::scalar(s.weight(), s.trunc() + Bound(a));
  for (const auto& [n, c] : s.component(0)) out.add_term(n + a, c);
  return out;
}

// (1 - q^n zeta^r) * b
Bivariate mul_binomial(const Bivariate& b, long n, long r) {
  Bivariate out(b.weight(), b.index(), b.trunc());
  for (const auto& [key, c] : b.coeffs()) {
    out.add(key.first, key.second, c);
    out.add(key.first + n, key.second + r, -c);
  }
  return out;
}

}  // namespace

QSeries eisenstein_e4(const Rat& trunc) { return eisenstein(trunc, 3, 240); }
QSeries eisenstein_e6(const Rat& trunc) { return eisenstein(trunc, 5, -504); }

QSeries eta_pow(long k, const Rat& trunc) {
  const Rat a = ratio(k, 24);
  long nt = to_ll(rat_ceil(trunc - a));
  if (nt < 1) nt = 1;
  QSeries p = scalar_pow(euler_product(nt), k);
  p.set_weight(ratio(Int(k), Int(2)));
  QSeries out = shift(p, a);
  out.truncate(Bound(trunc));
  return out;
}

QSeries delta_series(const Rat& trunc) { return eta_pow(24, trunc); }

QSeries j_series(const Rat& trunc) {
  QSeries e4 = eisenstein_e4(trunc + 1);
  QSeries num = mul_scalar_series(e4, mul_scalar_series(e4, e4));
  QSeries j = mul_scalar_series(num, scalar_inverse(delta_series(trunc + 2)));
  j.truncate(Bound(trunc));
  return j;
}

QSeries scalar_catalog(const std::string& name, const Rat& trunc) {
  if (name == "E4") return eisenstein_e4(trunc);
  if (name == "E6") return eisenstein_e6(trunc);
  if (name == "Delta") return delta_series(trunc);
  if (name == "j") return j_series(trunc);
  static const std::regex eta(R"(eta_pow\((-?\d+)\))");
  std::smatch m;
  if (std::regex_match(name, m, eta)) return eta_pow(std::stol(m[1].str()), trunc);
  fail(Errc::not_found, "scalar_catalog: unknown name " + name);
}

Rat Bivariate::coeff(long n, long r) const {
  if (n >= trunc_) fail(Errc::truncation, "Bivariate::coeff: exponent beyond truncation");
  auto it = c_.find({n, r});
  return it == c_.end() ? Rat(0) : it->second;
}

void Bivariate::add(long n, long r, const Rat& c) {
  if (c == 0 || n >= trunc_) return;
  auto [it, inserted] = c_.emplace(std::make_pair(n, r), c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) c_.erase(it);
  }
}

long Bivariate::leading() const { return c_.empty() ? trunc_ : std::min(c_.begin()->first.first, trunc_); }

Bivariate operator*(const Bivariate& a, const Bivariate& b) {
  long t = std::min(a.trunc_ + b.leading(), b.trunc_ + a.leading());
  Bivariate out(a.weight_ + b.weight_, a.index_ + b.index_, t);
  for (const auto& [ka, x] : a.c_)
    for (const auto& [kb, y] : b.c_) {
      if (ka.first + kb.first >= t) break;
      out.add(ka.first + kb.first, ka.second + kb.second, x * y);
    }
  return out;
}

Bivariate operator+(const Bivariate& a, const Bivariate& b) {
  THP_REQUIRE(a.weight_ == b.weight_ && a.index_ == b.index_, "Bivariate: weight or index mismatch in sum");
  Bivariate out(a.weight_, a.index_, std::min(a.trunc_, b.trunc_));
  for (const auto& [k, c] : a.c_) out.add(k.first, k.second, c);
  for (const auto& [k, c] : b.c_) out.add(k.first, k.second, c);
  return out;
}

Bivariate Bivariate::scaled(const Rat& c) const {
  Bivariate out(weight_, index_, trunc_);
  for (const auto& [k, v] : c_) out.add(k.first, k.second, v * c);
  return out;
}

Bivariate Bivariate::truncated(long t) const {
  Bivariate out(weight_, index_, std::min(t, trunc_));
  for (const auto& [k, v] : c_) out.add(k.first, k.second, v);
  return out;
}

Bivariate mul_scalar_bivariate(const QSeries& s, const Bivariate& phi) {
  THP_REQUIRE(s.is_scalar(), "mul_scalar_bivariate: scalar series expected");
  for (const auto& [n, c] : s.component(0))
    THP_REQUIRE(n.get_den() == 1, "mul_scalar_bivariate: exponents must be integral");
  Bound sl = s.lead_eff();
  Bound t = min(s.trunc() + Bound(Rat(phi.leading())), Bound(Rat(phi.trunc())) + sl);
  THP_REQUIRE(!t.is_inf(), "mul_scalar_bivariate: infinite precision");
  long tt = to_ll(rat_ceil(t.value()));
  Bivariate out(s.weight() + phi.weight(), phi.index(), tt);
  for (const auto& [n, x] : s.component(0))
    for (const auto& [k, y] : phi.coeffs()) out.add(to_ll(n.get_num()) + k.first, k.second, x * y);
  return out;
}

Bivariate phi_m2_1(long trunc) {
  Bivariate b(Rat(-2), 1, trunc);
  b.add(0, 1, Rat(1));
  b.add(0, 0, Rat(-2));
  b.add(0, -1, Rat(1));
  for (long n = 1; n < trunc; ++n)
    for (int rep = 0; rep < 2; ++rep) {
      b = mul_binomial(b, n, 1);
      b = mul_binomial(b, n, -1);
    }
  QSeries p4 = scalar_pow(euler_product(trunc), 4);
  return mul_scalar_bivariate(scalar_inverse(p4), b);
}

// phi_{0,1} = 12 * P * phi_{-2,1}, P the normalized Weierstrass function
// 1/12 + y/(1-y)^2 + sum_{n>=1} sum_{d|n} d (y^d - 2 + y^-d) q^n.
Bivariate phi_0_1(long trunc) {
  Bivariate m = phi_m2_1(trunc);
  Bivariate out = m.scaled(Rat(1));
  out.set_weight(Rat(0));
  // y/(1-y)^2 * (q^n coefficient): exact division per q-power
  std::map<long, std::map<long, Rat>> rows;
  for (const auto& [k, c] : m.coeffs()) rows[k.first][k.second] = c;
  for (const auto& [n, poly] : rows) {
    long lo = poly.begin()->first, hi = poly.rbegin()->first;
    std::map<long, Rat> quo;
    auto at = [&](const std::map<long, Rat>& p, long r) {
      auto it = p.find(r);
      return it == p.end() ? Rat(0) : it->second;
    };
    for (long r = lo; r <= hi - 2; ++r) quo[r] = at(poly, r) + 2 * at(quo, r - 1) - at(quo, r - 2);
    for (long r = lo; r <= hi; ++r) {
      Rat back = at(quo, r) - 2 * at(quo, r - 1) + at(quo, r - 2);
      THP_ASSERT(back == at(poly, r), "phi_0_1: q-coefficient of phi_{-2,1} not divisible by (1-y)^2");
    }
    for (const auto& [r, c] : quo) out.add(n, r + 1, 12 * c);
  }
  Bivariate s(Rat(2), 0, trunc);
  for (long n = 1; n < trunc; ++n)
    for (long d = 1; d <= n; ++d)
      if (n % d == 0) {
        s.add(n, d, Rat(d));
        s.add(n, 0, Rat(-2 * d));
        s.add(n, -d, Rat(d));
      }
  Bivariate sm = s * m;
  sm.set_index(1);
  sm.set_weight(Rat(0));
  return out + sm.scaled(Rat(12));
}

JacobiExpansion bivariate_to_jacobi(const Bivariate& phi) {
  THP_REQUIRE(phi.index() > 0, "bivariate_to_jacobi: index must be positive");
  JacobiExpansion j;
  j.index_lattice = EvenLattice(IntMatrix::from_rows({{Int(2 * phi.index())}}));
  j.weight = phi.weight();
  j.trunc = Bound(Rat(phi.trunc()));
  for (const auto& [k, c] : phi.coeffs()) j.add(Rat(k.first), {ratio(Int(k.second), Int(2 * phi.index()))}, c);
  return j;
}

Bivariate jacobi_to_bivariate(const JacobiExpansion& phi) {
  const EvenLattice& l = phi.index_lattice;
  THP_REQUIRE(l.rank() == 1 && l.gram()(0, 0) > 0, "jacobi_to_bivariate: index lattice must be <2m>");
  THP_REQUIRE(!phi.trunc.is_inf(), "jacobi_to_bivariate: infinite precision");
  long two_m = to_ll(l.gram()(0, 0));
  Bivariate b(phi.weight, two_m / 2, to_ll(rat_ceil(phi.trunc.value())));
  for (const auto& [k, c] : phi.coeffs) {
    Rat r = k.second[0] * two_m;
    THP_REQUIRE(r.get_den() == 1 && k.first.get_den() == 1, "jacobi_to_bivariate: non-integral exponent");
    b.add(to_ll(k.first.get_num()), to_ll(r.get_num()), c);
  }
  return b;
}

namespace {

// minimal-norm vector of the coset, ties broken lexicographically
RatVec min_norm_rep(const EvenLattice& l, const RatVec& coset) {
  Rat bound(1);
  for (;;) {
    auto vs = enumerate_vectors(l, coset, bound);
    if (!vs.empty()) {
      const RatVec* best = &vs[0];
      Rat bn = l.pair(vs[0], vs[0]);
      for (const auto& v : vs) {
        Rat nv = l.pair(v, v);
        if (nv < bn) {
          bn = nv;
          best = &v;
        }
      }
      return *best;
    }
    bound *= 2;
  }
}

}  // namespace

QSeries vv_from_jacobi(const JacobiExpansion& phi, const DiscriminantForm& dkplus) {
  const EvenLattice& kp = dkplus.lattice();
  THP_REQUIRE(phi.index_lattice == kp, "vv_from_jacobi: index lattice differs from K+");
  THP_REQUIRE(!phi.trunc.is_inf(), "vv_from_jacobi: infinite precision");
  const Fqm a = dkplus.fqm().scaled(-1);
  std::vector<RatVec> reps;
  Rat maxhalf(0);
  for (long i = 0; i < a.size(); ++i) {
    reps.push_back(kp.rank() == 0 ? RatVec{} : min_norm_rep(kp, dkplus.lift(a.elem(i))));
    maxhalf = std::max(maxhalf, Rat(kp.pair(reps.back(), reps.back()) / 2));
  }
  QSeries f(a, phi.weight - ratio(static_cast<long>(kp.rank()), 2), Bound(phi.trunc.value() - maxhalf));
  for (const auto& [k, c] : phi.coeffs) {
    THP_REQUIRE(kp.is_dual_vector(k.second), "vv_from_jacobi: exponent vector outside the dual of K+");
    long idx = a.index(dkplus.proj(k.second));
    if (k.second != reps[idx]) continue;
    f.add_term(idx, k.first - kp.pair(k.second, k.second) / 2, c);
  }
  JacobiExpansion back = jacobi_from_vv(f, dkplus);
  Bound w = min(back.trunc, phi.trunc);
  if (!agree_below(back, phi, w)) fail(Errc::precondition, "vv_from_jacobi: coefficients are not theta-decomposable");
  return f;
}

JacobiExpansion jacobi_from_vv(const QSeries& f, const DiscriminantForm& dkplus) {
  const EvenLattice& kp = dkplus.lattice();
  THP_REQUIRE(f.fqm() == dkplus.fqm().scaled(-1), "jacobi_from_vv: form does not live over A_K");
  THP_REQUIRE(!f.trunc().is_inf() || kp.rank() == 0, "jacobi_from_vv: infinite precision");
  JacobiExpansion phi;
  phi.index_lattice = kp;
  phi.weight = f.weight() + ratio(static_cast<long>(kp.rank()), 2);
  phi.trunc = f.trunc();
  const Fqm& a = f.fqm();
  if (kp.rank() == 0) {
    for (const auto& [n, c] : f.component(0)) phi.add(n, {}, c);
    return phi;
  }
  Rat span = f.trunc().value() - f.lead_eff().value();
  if (span < 0) return phi;
  for (long i = 0; i < a.size(); ++i) {
    const auto& comp = f.component(i);
    if (comp.empty()) continue;
    for (const auto& v : enumerate_vectors(kp, dkplus.lift(a.elem(i)), span)) {
      Rat h = kp.pair(v, v) / 2;
      for (const auto& [n, c] : comp) phi.add(n + h, v, c);
    }
  }
  return phi;
}

QSeries ez_jacobi(const std::string& name, const Rat& trunc) {
  Bivariate b;
  long tj = to_ll(rat_ceil(trunc)) + 1;
  if (tj < 1) tj = 1;
  if (name == "phi_0_1")
    b = phi_0_1(tj);
  else if (name == "phi_m2_1")
    b = phi_m2_1(tj);
  else
    fail(Errc::not_found, "ez_jacobi: unknown name " + name);
  DiscriminantForm dk(diagonal_lattice({-2}));
  QSeries f = vv_from_jacobi(bivariate_to_jacobi(b), dk.negated());
  f.truncate(Bound(trunc));
  return f;
}

PrincipalPart orbit_target(const Fqm& a, long idx, const Rat& n) {
  THP_REQUIRE(n < 0, "orbit_target: exponent must be negative");
  THP_REQUIRE(frac(n) == frac(a.q(a.elem(idx))), "orbit_target: exponent not congruent to q(lambda)");
  PrincipalPart p;
  p.fqm = a;
  p.terms[{idx, n}] += 1;
  p.terms[{a.neg_index(idx), n}] += 1;
  return p;
}

SolveResult solve_principal_part(const std::vector<QSeries>& generators, const PrincipalPart& target, long slack) {
  THP_REQUIRE(!generators.empty(), "solve_principal_part: no generators");
  THP_REQUIRE(slack >= 0, "solve_principal_part: negative slack");
  const Fqm& a = target.fqm;
  const Rat w = generators[0].weight();
  for (const auto& g : generators)
    THP_REQUIRE(g.fqm() == a && g.weight() == w, "solve_principal_part: generators differ in module or weight");
  THP_REQUIRE(check_symmetry(target), "solve_principal_part: target is not symmetric");
  const bool weight0 = (w == 0);
  if (weight0 && !target.constant) fail(Errc::precondition, "solve_principal_part: weight 0 needs a constant term");
  if (!weight0 && target.constant) fail(Errc::precondition, "solve_principal_part: constant term only in weight 0");

  Rat pole(0);
  for (const auto& [key, c] : target.terms) pole = std::max(pole, Rat(-key.second));
  const long deg = to_ll(rat_ceil(pole)) + slack;

  Rat tmin;  // smallest generator trunc
  for (const auto& g : generators) {
    THP_REQUIRE(!g.trunc().is_inf(), "solve_principal_part: generator with infinite precision");
    tmin = (&g == &generators[0]) ? g.trunc().value() : std::min(tmin, g.trunc().value());
  }
  QSeries j = j_series(tmin + deg + 1);
  std::vector<QSeries> jp{scalar_one()};
  for (long k = 1; k <= deg; ++k) jp.push_back(mul_scalar_series(j, jp.back()));

  std::vector<QSeries> unknowns;
  for (const auto& g : generators)
    for (long k = 0; k <= deg; ++k) {
      unknowns.push_back(mul_scalar_series(jp[k], g));
      if (!(Bound(Rat(0)) < unknowns.back().trunc()))
        fail(Errc::truncation, "solve_principal_part: generator truncation too low for the j-degree bound");
    }

  // equations on orbit representatives: every n < 0 that occurs, plus n = 0 in weight 0
  std::set<std::pair<long, Rat>> keys;
  auto is_rep = [&](long idx) { return idx <= a.neg_index(idx); };
  for (const auto& u : unknowns)
    for (long i = 0; i < a.size(); ++i) {
      if (!is_rep(i)) continue;
      for (const auto& [n, c] : u.component(i)) {
        if (n >= 0) break;
        keys.insert({i, n});
      }
    }
  for (const auto& [key, c] : target.terms)
    if (is_rep(key.first)) keys.insert(key);
  if (weight0)
    for (long i = 0; i < a.size(); ++i)
      if (is_rep(i)) keys.insert({i, Rat(0)});

  const std::size_t nu = unknowns.size();
  std::vector<std::vector<Rat>> m;
  for (const auto& [idx, n] : keys) {
    std::vector<Rat> row(nu + 1);
    for (std::size_t u = 0; u < nu; ++u) row[u] = unknowns[u].coeff(idx, n);
    if (n < 0) {
      auto it = target.terms.find({idx, n});
      if (it != target.terms.end()) row[nu] = it->second;
    } else {
      auto it = target.constant->find(idx);
      if (it != target.constant->end()) row[nu] = it->second;
    }
    m.push_back(std::move(row));
  }

  // reduced row echelon form
  std::vector<long> pivot_col;
  std::size_t r = 0;
  for (std::size_t c = 0; c < nu && r < m.size(); ++c) {
    std::size_t p = r;
    while (p < m.size() && m[p][c] == 0) ++p;
    if (p == m.size()) continue;
    std::swap(m[p], m[r]);
    Rat inv = 1 / m[r][c];
    for (auto& x : m[r]) x *= inv;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i == r || m[i][c] == 0) continue;
      Rat f = m[i][c];
      for (std::size_t k = c; k <= nu; ++k) m[i][k] -= f * m[r][k];
    }
    pivot_col.push_back(static_cast<long>(c));
    ++r;
  }
  for (std::size_t i = r; i < m.size(); ++i)
    if (m[i][nu] != 0) fail(Errc::not_found, "solve_principal_part: insufficient generators or obstructed principal part");

  std::vector<Rat> x(nu);
  for (std::size_t i = 0; i < r; ++i) x[pivot_col[i]] = m[i][nu];

  SolveResult out;
  out.poly.assign(generators.size(), std::vector<Rat>(deg + 1));
  std::optional<QSeries> form;
  for (std::size_t u = 0; u < nu; ++u) {
    out.poly[u / (deg + 1)][u % (deg + 1)] = x[u];
    if (x[u] == 0) continue;
    QSeries term = scale(unknowns[u], x[u]);
    form = form ? add(*form, term) : term;
  }
  out.form = form ? *form : QSeries(a, w, unknowns[0].trunc());
  THP_ASSERT(principal_part(out.form).terms == target.terms, "solve_principal_part: principal part mismatch after solve");
  return out;
}

FqmLinMap index_t_transport(long t, const DiscriminantForm& dl) {
  const EvenLattice& l = dl.lattice();
  THP_REQUIRE(t >= 1, "index_t_transport: t must be positive");
  THP_REQUIRE(l.rank() >= 1 && l.gram()(l.rank() - 1, l.rank() - 1) == -2 * t,
              "index_t_transport: last coordinate must carry <-2t>");
  for (std::size_t i = 0; i + 1 < l.rank(); ++i)
    THP_REQUIRE(l.gram()(i, l.rank() - 1) == 0, "index_t_transport: last coordinate not orthogonal to the rest");
  DiscriminantForm dk(diagonal_lattice({-2 * t}));
  RatMatrix embed(1, l.rank());
  embed(0, l.rank() - 1) = Rat(1);
  return disc_transport(dk, dl, embed);
}

std::vector<QSeries> index_t_generators(long t, const DiscriminantForm& dl, const Rat& trunc) {
  THP_REQUIRE(t >= 1 && t <= 4, "index_t_generators: t must be in 1..4");
  FqmLinMap tr = index_t_transport(t, dl);
  DiscriminantForm dk(diagonal_lattice({-2 * t}));
  const long tj = to_ll(rat_ceil(trunc)) + 3;
  Bivariate p0 = phi_0_1(tj), pm2 = phi_m2_1(tj);
  const Rat ts(tj + 2);
  std::vector<QSeries> out;
  for (long b = 0; b <= t; ++b) {
    QSeries m;
    switch (b) {
      case 0: m = scalar_one(); break;
      case 1: {
        QSeries e4 = eisenstein_e4(ts);
        m = mul_scalar_series(mul_scalar_series(e4, e4), mul_scalar_series(eisenstein_e6(ts), scalar_inverse(delta_series(ts + 2))));
        break;
      }
      case 2: m = eisenstein_e4(ts); break;
      case 3: m = eisenstein_e6(ts); break;
      default: m = mul_scalar_series(eisenstein_e4(ts), eisenstein_e4(ts)); break;
    }
    Bivariate phi(Rat(0), 0, tj);
    phi.add(0, 0, Rat(1));
    for (long i = 0; i < t - b; ++i) phi = phi * p0;
    for (long i = 0; i < b; ++i) phi = phi * pm2;
    if (m.trunc().is_inf()) {
      phi.set_weight(phi.weight() + m.weight());
    } else {
      phi = mul_scalar_bivariate(m, phi);
    }
    QSeries f = apply_linmap(tr, vv_from_jacobi(bivariate_to_jacobi(phi), dk.negated()));
    f.truncate(Bound(trunc));
    THP_ASSERT(f.trunc() == Bound(trunc), "index_t_generators: truncation fell short");
    out.push_back(std::move(f));
  }
  return out;
}

}  // namespace thp
