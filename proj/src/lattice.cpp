#include "thetaprod/lattice.hpp"

#include <algorithm>
#include <cmath>

namespace thp {

EvenLattice::EvenLattice(IntMatrix gram) : gram_(std::move(gram)) {
  const std::size_t n = gram_.rows();
  THP_REQUIRE(gram_.cols() == n, "gram matrix must be square");
  for (std::size_t i = 0; i < n; ++i) {
    THP_REQUIRE(gram_(i, i) % 2 == 0, "gram matrix must have even diagonal");
    for (std::size_t j = 0; j < n; ++j) THP_REQUIRE(gram_(i, j) == gram_(j, i), "gram matrix must be symmetric");
  }
  THP_REQUIRE(n == 0 || determinant(gram_) != 0, "gram matrix must be nondegenerate");
}

Int EvenLattice::det() const { return rank() == 0 ? Int(1) : determinant(gram_); }

Rat EvenLattice::pair(const RatVec& x, const RatVec& y) const {
  THP_REQUIRE(x.size() == rank() && y.size() == rank(), "pair: vector length mismatch");
  Rat s = 0;
  for (std::size_t i = 0; i < rank(); ++i) {
    if (x[i] == 0) continue;
    for (std::size_t j = 0; j < rank(); ++j)
      if (y[j] != 0) s += x[i] * gram_(i, j) * y[j];
  }
  return s;
}

bool EvenLattice::is_dual_vector(const RatVec& x) const {
  if (x.size() != rank()) return false;
  for (std::size_t j = 0; j < rank(); ++j) {
    Rat s = 0;
    for (std::size_t i = 0; i < rank(); ++i) s += x[i] * gram_(i, j);
    if (s.get_den() != 1) return false;
  }
  return true;
}

EvenLattice EvenLattice::scaled(long k) const {
  IntMatrix g = gram_;
  for (std::size_t i = 0; i < g.rows(); ++i)
    for (std::size_t j = 0; j < g.cols(); ++j) g(i, j) *= k;
  return EvenLattice(g);
}

EvenLattice hyperbolic_plane() { return EvenLattice(IntMatrix::from_rows({{0, 1}, {1, 0}})); }

EvenLattice diagonal_lattice(const std::vector<long>& entries) {
  IntMatrix g(entries.size(), entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i) g(i, i) = entries[i];
  return EvenLattice(g);
}

EvenLattice orthogonal_sum(const EvenLattice& a, const EvenLattice& b) {
  const std::size_t n = a.rank(), m = b.rank();
  IntMatrix g(n + m, n + m);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) g(i, j) = a.gram()(i, j);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) g(n + i, n + j) = b.gram()(i, j);
  return EvenLattice(g);
}

EvenLattice e8_lattice() {
  // Cartan matrix: chain 0..6, node 7 attached to node 4
  IntMatrix g(8, 8);
  for (std::size_t i = 0; i < 8; ++i) g(i, i) = 2;
  for (std::size_t i = 0; i + 1 < 7; ++i) g(i, i + 1) = g(i + 1, i) = -1;
  g(4, 7) = g(7, 4) = -1;
  return EvenLattice(g);
}

EvenLattice d_lattice(std::size_t n) {
  THP_REQUIRE(n >= 2, "D_n needs n >= 2");
  IntMatrix g(n, n);
  for (std::size_t i = 0; i < n; ++i) g(i, i) = 2;
  for (std::size_t i = 0; i + 2 < n; ++i) g(i, i + 1) = g(i + 1, i) = -1;
  if (n >= 3) g(n - 3, n - 1) = g(n - 1, n - 3) = -1;
  return EvenLattice(g);
}

bool Sublattice::integral() const {
  for (const auto& x : basis.data())
    if (x.get_den() != 1) return false;
  return true;
}

RatMatrix Sublattice::gram() const { return basis * ambient.gram_rat() * basis.transpose(); }

Sublattice make_sublattice(const EvenLattice& ambient, const IntMatrix& basis) {
  THP_REQUIRE(basis.rows() == 0 || basis.cols() == ambient.rank(), "sublattice basis has the wrong width");
  RatMatrix b = to_rat(basis);
  if (basis.rows() == 0) b = RatMatrix(0, ambient.rank());
  THP_REQUIRE(rank(b) == b.rows(), "sublattice basis rows must be linearly independent");
  return {ambient, b};
}

std::pair<std::size_t, std::size_t> signature(const EvenLattice& l) {
  RatMatrix a = l.gram_rat();
  const std::size_t n = a.rows();
  std::vector<bool> active(n, true);
  std::size_t p = 0, q = 0;
  for (std::size_t step = 0; step < n; ++step) {
    std::size_t piv = n;
    for (std::size_t i = 0; i < n && piv == n; ++i)
      if (active[i] && a(i, i) != 0) piv = i;
    if (piv == n) {
      // all active diagonal entries vanish: replace e_i by e_i + e_j with (e_i, e_j) != 0
      for (std::size_t i = 0; i < n && piv == n; ++i) {
        if (!active[i]) continue;
        for (std::size_t j = 0; j < n; ++j) {
          if (!active[j] || j == i || a(i, j) == 0) continue;
          for (std::size_t k = 0; k < n; ++k) a(i, k) += a(j, k);
          for (std::size_t k = 0; k < n; ++k) a(k, i) += a(k, j);
          piv = i;
          break;
        }
      }
      THP_ASSERT(piv != n, "signature: degenerate form");
    }
    Rat d = a(piv, piv);
    (d > 0 ? p : q) += 1;
    active[piv] = false;
    for (std::size_t i = 0; i < n; ++i) {
      if (!active[i] || a(i, piv) == 0) continue;
      Rat f = a(i, piv) / d;
      for (std::size_t j = 0; j < n; ++j)
        if (active[j]) a(i, j) -= f * a(piv, j);
    }
    for (std::size_t i = 0; i < n; ++i)
      if (active[i]) a(piv, i) = a(i, piv) = 0;
  }
  return {p, q};
}

bool is_positive_definite(const EvenLattice& l) { return signature(l).second == 0; }
bool is_negative_definite(const EvenLattice& l) { return signature(l).first == 0; }

DiscriminantForm::DiscriminantForm(const EvenLattice& l) : l_(l) {
  const std::size_t n = l.rank();
  if (n == 0) {
    p_ = IntMatrix(0, 0);
    gens_ = RatMatrix(0, 0);
    return;
  }
  Snf snf = matrix_snf(l.gram());
  RatMatrix ginv = inverse(l.gram_rat());
  RatMatrix uinv = inverse(to_rat(snf.U));
  std::vector<std::size_t> kept;
  std::vector<long> orders;
  for (std::size_t i = 0; i < n; ++i)
    if (snf.D(i, i) > 1) {
      kept.push_back(i);
      orders.push_back(to_ll(snf.D(i, i)));
    }
  p_ = IntMatrix(kept.size(), n);
  gens_ = RatMatrix(kept.size(), n);
  for (std::size_t t = 0; t < kept.size(); ++t) {
    for (std::size_t j = 0; j < n; ++j) p_(t, j) = snf.U(kept[t], j);
    RatVec e(n, Rat(0));
    for (std::size_t j = 0; j < n; ++j) e[j] = uinv(j, kept[t]);
    RatVec x = mat_vec(ginv, e);
    gens_.set_row(t, x);
  }
  std::vector<Rat> q;
  std::vector<std::vector<Rat>> b(kept.size(), std::vector<Rat>(kept.size()));
  for (std::size_t s = 0; s < kept.size(); ++s) {
    q.push_back(l.pair(gens_.row(s), gens_.row(s)) / 2);
    for (std::size_t t = 0; t < kept.size(); ++t) b[s][t] = l.pair(gens_.row(s), gens_.row(t));
  }
  fqm_ = Fqm::raw(orders, q, b);
}

FqmElem DiscriminantForm::proj(const RatVec& x) const {
  const std::size_t n = l_.rank();
  THP_REQUIRE(x.size() == n, "proj: vector length mismatch");
  IntVec w(n);
  for (std::size_t j = 0; j < n; ++j) {
    Rat s = 0;
    for (std::size_t i = 0; i < n; ++i) s += x[i] * l_.gram()(i, j);
    THP_REQUIRE(s.get_den() == 1, "proj: vector is not in the dual lattice");
    w[j] = s.get_num();
  }
  IntVec c(p_.rows());
  for (std::size_t t = 0; t < p_.rows(); ++t)
    for (std::size_t j = 0; j < n; ++j) c[t] += p_(t, j) * w[j];
  return fqm_.reduce(c);
}

RatVec DiscriminantForm::lift(const FqmElem& a) const {
  const std::size_t n = l_.rank();
  RatVec x(n, Rat(0));
  for (std::size_t t = 0; t < a.size(); ++t)
    if (a[t] != 0)
      for (std::size_t j = 0; j < n; ++j) x[j] += Rat(a[t]) * gens_(t, j);
  for (auto& v : x) v = frac(v);
  return x;
}

DiscriminantForm DiscriminantForm::negated() const {
  DiscriminantForm d = *this;
  d.l_ = l_.scaled(-1);
  d.fqm_ = fqm_.scaled(-1);
  for (std::size_t i = 0; i < p_.rows(); ++i)
    for (std::size_t j = 0; j < p_.cols(); ++j) d.p_(i, j) = -p_(i, j);
  return d;
}

DiscriminantForm discriminant_form(const EvenLattice& l) { return DiscriminantForm(l); }

FqmLinMap disc_transport(const DiscriminantForm& from, const DiscriminantForm& to, const RatMatrix& embed) {
  const Fqm &a = from.fqm(), &b = to.fqm();
  THP_REQUIRE(a.size() == b.size(), "disc_transport: groups of different order");
  FqmLinMap m(a, b);
  std::vector<bool> hit(b.size(), false);
  for (long i = 0; i < a.size(); ++i) {
    FqmElem x = a.elem(i);
    RatVec v = from.lattice().rank() ? vec_mul(from.lift(x), embed) : RatVec(to.lattice().rank(), Rat(0));
    FqmElem y = to.proj(v);
    THP_REQUIRE(a.q(x) == b.q(y), "disc_transport: coordinate map is not an isometry");
    long j = b.index(y);
    THP_REQUIRE(!hit[j], "disc_transport: coordinate map is not injective on discriminant groups");
    hit[j] = true;
    m.set_column(i, {{j, Rat(1)}});
  }
  return m;
}

Sublattice orthogonal_complement(const Sublattice& s) {
  const std::size_t n = s.ambient.rank();
  if (s.rank() == 0) return {s.ambient, to_rat(IntMatrix::identity(n))};
  RatMatrix m = s.basis * s.ambient.gram_rat();  // k x n
  IntMatrix k = left_kernel(clear_denominators(m).transpose());
  RatMatrix b = to_rat(k);
  if (k.rows() == 0) b = RatMatrix(0, n);
  return {s.ambient, b};
}

namespace {

// Z-basis (HNF) of span_Q(rows) cap Z^n for an integer matrix
IntMatrix saturate(const IntMatrix& rows, std::size_t n) {
  if (rows.rows() == 0) return IntMatrix(0, n);
  IntMatrix c = left_kernel(rows.transpose());  // dot-orthogonal complement
  if (c.rows() == 0) return IntMatrix::identity(n);
  return left_kernel(c.transpose());
}

}  // namespace

Sublattice primitive_hull(const Sublattice& s, bool in_dual) {
  const std::size_t n = s.ambient.rank();
  if (!in_dual) {
    IntMatrix h = saturate(clear_denominators(s.basis), n);
    return {s.ambient, h.rows() ? to_rat(h) : RatMatrix(0, n)};
  }
  if (s.rank() == 0) return {s.ambient, RatMatrix(0, n)};
  RatMatrix g = s.ambient.gram_rat();
  IntMatrix h = saturate(clear_denominators(s.basis * g), n);
  return {s.ambient, to_rat(h) * inverse(g)};
}

bool is_maximal_isotropic(const Sublattice& i) {
  if (!i.integral()) return false;
  auto [p, q] = signature(i.ambient);
  (void)q;
  if (i.rank() != p) return false;
  RatMatrix g = i.gram();
  for (const auto& x : g.data())
    if (x != 0) return false;
  if (i.rank() == 0) return true;
  IntMatrix hull = hnf_basis(to_int(primitive_hull(i, false).basis));
  return hull == hnf_basis(i.int_basis());
}

ScaledVectors for_each_vector(const EvenLattice& l, const RatVec& coset, const Rat& bound,
                              const std::function<void(const std::vector<long>& w, long norm)>& fn) {
  const std::size_t n = l.rank();
  THP_REQUIRE(coset.size() == n, "enumerate_vectors: coset has the wrong length");
  THP_REQUIRE(is_positive_definite(l), "enumerate_vectors: lattice is not positive-definite");
  THP_REQUIRE(l.is_dual_vector(coset), "enumerate_vectors: coset is not in the dual lattice");
  Int den = 1;
  for (const auto& c : coset) den = lcm(den, c.get_den());
  ScaledVectors out;
  out.den = to_ll(den);
  if (bound < 0) return out;
  const long d = out.den;
  // exact leaf test: (w,w) * bound.den <= 2 * bound.num * d^2
  const __int128 lhs_scale = static_cast<__int128>(to_ll(bound.get_den()));
  const __int128 rhs = static_cast<__int128>(to_ll(bound.get_num())) * 2 * d * d;
  std::vector<long> cw(n);
  for (std::size_t i = 0; i < n; ++i) cw[i] = to_ll(Rat(coset[i] * d).get_num());
  std::vector<std::vector<long>> g(n, std::vector<long>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) g[i][j] = to_ll(l.gram()(i, j));
  if (n == 0) {
    fn({}, 0);
    return out;
  }

  Ldl ldl = rational_ldl(l.gram_rat());
  std::vector<std::vector<long double>> lw(n, std::vector<long double>(n));
  std::vector<long double> dd(n), cc(n);
  for (std::size_t i = 0; i < n; ++i) {
    dd[i] = ldl.D[i].get_d();
    cc[i] = coset[i].get_d();
    for (std::size_t j = 0; j < n; ++j) lw[i][j] = ldl.L(i, j).get_d();
  }
  const long double slack = 1e-9L * (1.0L + std::fabs(static_cast<long double>(bound.get_d())));
  std::vector<long> x(n), w(n);

  auto leaf = [&]() {
    for (std::size_t i = 0; i < n; ++i) w[i] = cw[i] + d * x[i];
    __int128 norm = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (w[i] == 0) continue;
      __int128 s = 0;
      for (std::size_t j = 0; j < n; ++j) s += static_cast<__int128>(g[i][j]) * w[j];
      norm += s * w[i];
    }
    if (norm * lhs_scale <= rhs) fn(w, static_cast<long>(norm));
  };

  std::function<void(std::size_t, long double)> rec = [&](std::size_t i, long double remaining) {
    long double t = 0;
    for (std::size_t j = i + 1; j < n; ++j) t += (cc[j] + static_cast<long double>(x[j])) * lw[j][i];
    long double s = cc[i] + t;
    long double r2 = remaining / dd[i];
    if (r2 < -slack) return;
    long double r = std::sqrt(std::max(0.0L, r2) + slack);
    long lo = static_cast<long>(std::ceil(-s - r - slack));
    long hi = static_cast<long>(std::floor(-s + r + slack));
    for (long xi = lo; xi <= hi; ++xi) {
      x[i] = xi;
      long double y = xi + s;
      long double rem = remaining - dd[i] * y * y;
      if (rem < -slack * 4) continue;
      if (i == 0)
        leaf();
      else
        rec(i - 1, rem);
    }
  };
  rec(n - 1, static_cast<long double>(2 * bound.get_d()) + slack);
  return out;
}

std::vector<RatVec> enumerate_vectors(const EvenLattice& l, const RatVec& coset, const Rat& bound) {
  std::vector<std::vector<long>> raw;
  auto sv = for_each_vector(l, coset, bound, [&](const std::vector<long>& w, long) { raw.push_back(w); });
  std::vector<RatVec> out;
  for (const auto& w : raw) {
    RatVec v;
    for (long c : w) {
      v.emplace_back(c, sv.den);
      v.back().canonicalize();
    }
    out.push_back(std::move(v));
  }
  std::sort(out.begin(), out.end());
  return out;
}

Overlattice sum_lattice(const EvenLattice& l, const RatMatrix& s) {
  const std::size_t n = l.rank();
  for (std::size_t i = 0; i < s.rows(); ++i)
    THP_REQUIRE(l.is_dual_vector(s.row(i)), "sum_lattice: generator is not in the dual lattice");
  Int d = 1;
  for (const auto& x : s.data()) d = lcm(d, x.get_den());
  IntMatrix gens(n + s.rows(), n);
  for (std::size_t i = 0; i < n; ++i) gens(i, i) = d;
  for (std::size_t i = 0; i < s.rows(); ++i)
    for (std::size_t j = 0; j < n; ++j) gens(n + i, j) = Rat(s(i, j) * d).get_num();
  IntMatrix h = hnf_basis(gens);
  THP_ASSERT(h.rows() == n, "sum_lattice: overlattice must have full rank");
  RatMatrix b = to_rat(h);
  for (auto i = 0u; i < n; ++i)
    for (auto j = 0u; j < n; ++j) b(i, j) /= d;
  RatMatrix gram = b * l.gram_rat() * b.transpose();
  IntMatrix gi(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (gram(i, j).get_den() != 1) fail(Errc::precondition, "sum_lattice: generated lattice is not integral");
      gi(i, j) = gram(i, j).get_num();
    }
  for (std::size_t i = 0; i < n; ++i)
    if (gi(i, i) % 2 != 0) fail(Errc::precondition, "sum_lattice: generated lattice is not even");
  Rat detb = n ? determinant(b) : Rat(1);
  Rat index = 1 / abs(detb);
  THP_ASSERT(index.get_den() == 1, "sum_lattice: index is not an integer");
  return {EvenLattice(gi), b, index.get_num()};
}

}  // namespace thp
