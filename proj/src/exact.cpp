#include "thetaprod/exact.hpp"

#include <algorithm>
#include <utility>

namespace thp {

void fail(Errc code, const std::string& what) { throw Error(code, what); }

Rat frac(const Rat& x) {
  Rat r = x - Rat(rat_floor(x));
  return r;
}

Int floor_div(const Int& a, const Int& b) {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

Int rat_floor(const Rat& x) { return floor_div(x.get_num(), x.get_den()); }

Int rat_ceil(const Rat& x) { return -rat_floor(-x); }

Int lcm(const Int& a, const Int& b) {
  Int r;
  mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

long to_ll(const Int& x) {
  if (!x.fits_slong_p()) fail(Errc::precondition, "integer too large for machine word: " + x.get_str());
  return x.get_si();
}

std::string to_string(const Int& x) { return x.get_str(); }

std::string to_string(const Rat& x) {
  if (x.get_den() == 1) return x.get_num().get_str();
  return x.get_num().get_str() + "/" + x.get_den().get_str();
}

Rat ratio(const Int& n, const Int& d) {
  if (d == 0) fail(Errc::precondition, "ratio: zero denominator");
  Rat r(n, d);
  r.canonicalize();
  return r;
}

Rat parse_rat(const std::string& s) {
  auto bad = [&]() -> Rat { fail(Errc::precondition, "malformed rational \"" + s + "\""); };
  if (s.empty()) return bad();
  auto slash = s.find('/');
  auto digits = [](const std::string& t, bool allow_sign) {
    if (t.empty()) return false;
    std::size_t i = 0;
    if (allow_sign && (t[0] == '-' || t[0] == '+')) i = 1;
    if (i == t.size()) return false;
    for (; i < t.size(); ++i)
      if (t[i] < '0' || t[i] > '9') return false;
    return true;
  };
  std::string num = s.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
  if (!digits(num, true) || !digits(den, false)) return bad();
  if (num[0] == '+') num = num.substr(1);
  Int d(den);
  if (d == 0) return bad();
  Rat r(Int(num), d);
  r.canonicalize();
  return r;
}

const Rat& Bound::value() const {
  if (inf_) fail(Errc::internal, "value() of an infinite bound");
  return v_;
}

Bound operator+(const Bound& a, const Bound& b) {
  if (a.inf_ || b.inf_) return Bound::infinity();
  return Bound(Rat(a.v_ + b.v_));
}

bool operator<(const Bound& a, const Bound& b) {
  if (a.inf_) return false;
  if (b.inf_) return true;
  return a.v_ < b.v_;
}

bool operator==(const Bound& a, const Bound& b) {
  if (a.inf_ || b.inf_) return a.inf_ == b.inf_;
  return a.v_ == b.v_;
}

std::string Bound::str() const { return inf_ ? "inf" : to_string(v_); }

Bound min(const Bound& a, const Bound& b) { return b < a ? b : a; }
Bound max(const Bound& a, const Bound& b) { return a < b ? b : a; }

RatMatrix to_rat(const IntMatrix& m) {
  RatMatrix r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = Rat(m(i, j));
  return r;
}

IntMatrix to_int(const RatMatrix& m) {
  IntMatrix r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (m(i, j).get_den() != 1) fail(Errc::precondition, "matrix is not integral");
      r(i, j) = m(i, j).get_num();
    }
  return r;
}

template <class T>
static Matrix<T> stack_impl(const Matrix<T>& a, const Matrix<T>& b) {
  std::size_t cols = a.rows() ? a.cols() : b.cols();
  if (a.rows() && b.rows() && a.cols() != b.cols()) fail(Errc::precondition, "stack: column mismatch");
  Matrix<T> m(a.rows() + b.rows(), cols);
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = a(i, j);
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < cols; ++j) m(a.rows() + i, j) = b(i, j);
  return m;
}

IntMatrix stack(const IntMatrix& top, const IntMatrix& bottom) { return stack_impl(top, bottom); }
RatMatrix stack(const RatMatrix& top, const RatMatrix& bottom) { return stack_impl(top, bottom); }

RatVec vec_mul(const RatVec& x, const RatMatrix& m) {
  if (x.size() != m.rows()) fail(Errc::precondition, "vec_mul shape mismatch");
  RatVec y(m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (x[i] == 0) continue;
    for (std::size_t j = 0; j < m.cols(); ++j) y[j] += x[i] * m(i, j);
  }
  return y;
}

RatVec mat_vec(const RatMatrix& m, const RatVec& x) {
  if (x.size() != m.cols()) fail(Errc::precondition, "mat_vec shape mismatch");
  RatVec y(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) y[i] += m(i, j) * x[j];
  return y;
}

Rat dot(const RatVec& a, const RatVec& b) {
  if (a.size() != b.size()) fail(Errc::precondition, "dot shape mismatch");
  Rat s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

namespace {

// rows r1 <- a*r1 + b*r2, r2 <- c*r1 + d*r2
void row_combine(IntMatrix& m, std::size_t r1, std::size_t r2, const Int& a, const Int& b, const Int& c,
                 const Int& d) {
  for (std::size_t j = 0; j < m.cols(); ++j) {
    Int x = m(r1, j), y = m(r2, j);
    m(r1, j) = a * x + b * y;
    m(r2, j) = c * x + d * y;
  }
}

void col_combine(IntMatrix& m, std::size_t c1, std::size_t c2, const Int& a, const Int& b, const Int& c,
                 const Int& d) {
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Int x = m(i, c1), y = m(i, c2);
    m(i, c1) = a * x + b * y;
    m(i, c2) = c * x + d * y;
  }
}

void gcdext(const Int& a, const Int& b, Int& g, Int& s, Int& t) {
  mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
}

void row_addmul(IntMatrix& m, std::size_t dst, std::size_t src, const Int& k) {
  if (k == 0) return;
  for (std::size_t j = 0; j < m.cols(); ++j) m(dst, j) += k * m(src, j);
}

void row_negate(IntMatrix& m, std::size_t r) {
  for (std::size_t j = 0; j < m.cols(); ++j) m(r, j) = -m(r, j);
}

}  // namespace

Hnf matrix_hnf(const IntMatrix& m) {
  IntMatrix h = m;
  IntMatrix u = IntMatrix::identity(m.rows());
  std::size_t r = 0;
  for (std::size_t c = 0; c < h.cols() && r < h.rows(); ++c) {
    for (std::size_t i = r + 1; i < h.rows(); ++i) {
      if (h(i, c) == 0) continue;
      Int a = h(r, c), b = h(i, c), g, s, t;
      gcdext(a, b, g, s, t);
      Int ag = a / g, bg = b / g;
      row_combine(h, r, i, s, t, -bg, ag);
      row_combine(u, r, i, s, t, -bg, ag);
    }
    if (h(r, c) == 0) continue;
    if (h(r, c) < 0) {
      row_negate(h, r);
      row_negate(u, r);
    }
    for (std::size_t i = 0; i < r; ++i) {
      Int q = floor_div(h(i, c), h(r, c));
      row_addmul(h, i, r, -q);
      row_addmul(u, i, r, -q);
    }
    ++r;
  }
  return {h, u};
}

IntMatrix hnf_basis(const IntMatrix& m) {
  IntMatrix h = matrix_hnf(m).H;
  std::size_t nz = 0;
  for (std::size_t i = 0; i < h.rows(); ++i) {
    bool zero = true;
    for (std::size_t j = 0; j < h.cols(); ++j)
      if (h(i, j) != 0) zero = false;
    if (!zero) nz = i + 1;
  }
  return h.rows_range(0, nz);
}

Snf matrix_snf(const IntMatrix& m) {
  IntMatrix d = m;
  IntMatrix u = IntMatrix::identity(m.rows());
  IntMatrix v = IntMatrix::identity(m.cols());
  const std::size_t rows = m.rows(), cols = m.cols();
  for (std::size_t t = 0; t < std::min(rows, cols); ++t) {
    for (;;) {
      // smallest nonzero entry of the trailing block becomes the pivot
      bool found = false;
      std::size_t pi = t, pj = t;
      Int best;
      for (std::size_t i = t; i < rows; ++i)
        for (std::size_t j = t; j < cols; ++j) {
          if (d(i, j) == 0) continue;
          Int a = abs(d(i, j));
          if (!found || a < best) {
            found = true;
            best = a;
            pi = i;
            pj = j;
          }
        }
      if (!found) goto done;
      if (pi != t) {
        row_combine(d, t, pi, 0, 1, 1, 0);
        row_combine(u, t, pi, 0, 1, 1, 0);
      }
      if (pj != t) {
        col_combine(d, t, pj, 0, 1, 1, 0);
        col_combine(v, t, pj, 0, 1, 1, 0);
      }
      bool clean = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (d(i, t) == 0) continue;
        Int q = d(i, t) / d(t, t);  // truncating division keeps the remainder smaller than the pivot
        row_addmul(d, i, t, -q);
        row_addmul(u, i, t, -q);
        if (d(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (d(t, j) == 0) continue;
        Int q = d(t, j) / d(t, t);
        for (std::size_t i = 0; i < rows; ++i) d(i, j) -= q * d(i, t);
        for (std::size_t i = 0; i < cols; ++i) v(i, j) -= q * v(i, t);
        if (d(t, j) != 0) clean = false;
      }
      if (!clean) continue;
      // pivot must divide the rest of the block
      bool divides = true;
      for (std::size_t i = t + 1; i < rows && divides; ++i)
        for (std::size_t j = t + 1; j < cols; ++j)
          if (d(i, j) % d(t, t) != 0) {
            row_addmul(d, t, i, 1);
            row_addmul(u, t, i, 1);
            divides = false;
            break;
          }
      if (divides) break;
    }
    if (d(t, t) < 0) {
      row_negate(d, t);
      row_negate(u, t);
    }
  }
done:
  return {u, d, v};
}

Ldl rational_ldl(const RatMatrix& g) {
  const std::size_t n = g.rows();
  THP_REQUIRE(g.cols() == n, "rational_ldl: matrix must be square");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) THP_REQUIRE(g(i, j) == g(j, i), "rational_ldl: matrix must be symmetric");
  RatMatrix l = RatMatrix::identity(n);
  std::vector<Rat> d(n);
  for (std::size_t i = 0; i < n; ++i) {
    Rat s = g(i, i);
    for (std::size_t k = 0; k < i; ++k) s -= l(i, k) * l(i, k) * d[k];
    if (s == 0) fail(Errc::precondition, "rational_ldl: vanishing leading principal minor; permute the basis");
    d[i] = s;
    for (std::size_t j = i + 1; j < n; ++j) {
      Rat t = g(j, i);
      for (std::size_t k = 0; k < i; ++k) t -= l(j, k) * l(i, k) * d[k];
      l(j, i) = t / s;
    }
  }
  return {l, d};
}

namespace {

// Gaussian elimination to reduced row echelon form; returns pivot columns.
std::vector<std::size_t> rref(RatMatrix& a) {
  std::vector<std::size_t> piv;
  std::size_t r = 0;
  for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
    std::size_t p = r;
    while (p < a.rows() && a(p, c) == 0) ++p;
    if (p == a.rows()) continue;
    if (p != r)
      for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a(p, j), a(r, j));
    Rat inv = 1 / a(r, c);
    for (std::size_t j = 0; j < a.cols(); ++j) a(r, j) *= inv;
    for (std::size_t i = 0; i < a.rows(); ++i) {
      if (i == r || a(i, c) == 0) continue;
      Rat f = a(i, c);
      for (std::size_t j = 0; j < a.cols(); ++j) a(i, j) -= f * a(r, j);
    }
    piv.push_back(c);
    ++r;
  }
  return piv;
}

}  // namespace

Rat determinant(const RatMatrix& m) {
  THP_REQUIRE(m.rows() == m.cols(), "determinant of a non-square matrix");
  RatMatrix a = m;
  const std::size_t n = a.rows();
  Rat det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a(p, c) == 0) ++p;
    if (p == n) return 0;
    if (p != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(p, j), a(c, j));
      det = -det;
    }
    det *= a(c, c);
    for (std::size_t i = c + 1; i < n; ++i) {
      if (a(i, c) == 0) continue;
      Rat f = a(i, c) / a(c, c);
      for (std::size_t j = c; j < n; ++j) a(i, j) -= f * a(c, j);
    }
  }
  return det;
}

Int determinant(const IntMatrix& m) {
  Rat d = determinant(to_rat(m));
  return d.get_num();
}

std::size_t rank(const RatMatrix& m) {
  RatMatrix a = m;
  return rref(a).size();
}

RatMatrix inverse(const RatMatrix& m) {
  const std::size_t n = m.rows();
  THP_REQUIRE(m.cols() == n, "inverse of a non-square matrix");
  RatMatrix a(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) a(i, j) = m(i, j);
    a(i, n + i) = 1;
  }
  auto piv = rref(a);
  if (piv.size() < n || (n && piv.back() >= n)) fail(Errc::precondition, "inverse of a singular matrix");
  RatMatrix inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = a(i, n + j);
  return inv;
}

std::optional<RatVec> solve_left(const RatMatrix& b, const RatVec& x) {
  // z*B = x  <=>  B^T z^T = x^T
  const std::size_t k = b.rows(), n = b.cols();
  if (x.size() != n) fail(Errc::precondition, "solve_left shape mismatch");
  RatMatrix a(n, k + 1);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < k; ++j) a(i, j) = b(j, i);
    a(i, k) = x[i];
  }
  auto piv = rref(a);
  if (!piv.empty() && piv.back() == k) return std::nullopt;
  RatVec z(k);
  for (std::size_t r = 0; r < piv.size(); ++r) z[piv[r]] = a(r, k);
  return z;
}

IntMatrix left_kernel(const IntMatrix& a) {
  Hnf h = matrix_hnf(a);
  std::vector<std::vector<Int>> rows;
  for (std::size_t i = 0; i < h.H.rows(); ++i) {
    bool zero = true;
    for (std::size_t j = 0; j < h.H.cols(); ++j)
      if (h.H(i, j) != 0) zero = false;
    if (zero) rows.push_back(h.U.row(i));
  }
  IntMatrix k = IntMatrix::from_rows(rows, a.rows());
  if (k.rows() == 0) return k;
  return hnf_basis(k);
}

IntMatrix clear_denominators(const RatMatrix& m) {
  IntMatrix r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Int d = 1;
    for (std::size_t j = 0; j < m.cols(); ++j) d = lcm(d, m(i, j).get_den());
    for (std::size_t j = 0; j < m.cols(); ++j) {
      Rat x = m(i, j) * d;
      r(i, j) = x.get_num();
    }
  }
  return r;
}

}  // namespace thp
