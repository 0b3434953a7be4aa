#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace thp {

using Int = mpz_class;
using Rat = mpq_class;

enum class Errc {
  precondition,  // caller violated a documented precondition
  truncation,    // requested data lies beyond the provable truncation
  mismatch,      // operands live over different modules / weights
  not_found,     // search or solve produced no answer
  internal,      // an internal consistency check failed
};

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  Errc code() const { return code_; }

 private:
  Errc code_;
};

[[noreturn]] void fail(Errc code, const std::string& what);

#define THP_REQUIRE(cond, msg)                                     \
  do {                                                             \
    if (!(cond)) ::thp::fail(::thp::Errc::precondition, (msg));    \
  } while (0)

#define THP_ASSERT(cond, msg)                                      \
  do {                                                             \
    if (!(cond)) ::thp::fail(::thp::Errc::internal, (msg));        \
  } while (0)

// n/d in canonical form (gmpxx's two-argument constructor does not reduce)
Rat ratio(const Int& n, const Int& d);

// x mod 1 in [0, 1)
Rat frac(const Rat& x);
Int floor_div(const Int& a, const Int& b);
Int rat_floor(const Rat& x);
Int rat_ceil(const Rat& x);
Int lcm(const Int& a, const Int& b);
long to_ll(const Int& x);  // throws if it does not fit

std::string to_string(const Int& x);
// "p/q", or "n" when integral
std::string to_string(const Rat& x);
Rat parse_rat(const std::string& s);

// Exponent bound with a +infinity sentinel.
class Bound {
 public:
  Bound() : inf_(true) {}
  Bound(const Rat& v) : inf_(false), v_(v) {}  // NOLINT(google-explicit-constructor)
  Bound(long v) : inf_(false), v_(v) {}       // NOLINT(google-explicit-constructor)
  static Bound infinity() { return Bound(); }

  bool is_inf() const { return inf_; }
  const Rat& value() const;

  friend Bound operator+(const Bound& a, const Bound& b);
  friend bool operator<(const Bound& a, const Bound& b);
  friend bool operator==(const Bound& a, const Bound& b);
  friend bool operator<=(const Bound& a, const Bound& b) { return !(b < a); }
  friend bool operator>(const Bound& a, const Bound& b) { return b < a; }
  friend bool operator>=(const Bound& a, const Bound& b) { return !(a < b); }
  std::string str() const;

 private:
  bool inf_;
  Rat v_;
};

Bound min(const Bound& a, const Bound& b);
Bound max(const Bound& a, const Bound& b);

template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}
  Matrix(std::size_t rows, std::size_t cols, std::vector<T> entries)
      : rows_(rows), cols_(cols), a_(std::move(entries)) {
    if (a_.size() != rows * cols) fail(Errc::precondition, "matrix entry count does not match shape");
  }
  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }
  static Matrix from_rows(const std::vector<std::vector<T>>& rows, std::size_t cols = 0) {
    if (!rows.empty()) cols = rows[0].size();
    Matrix m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != cols) fail(Errc::precondition, "ragged matrix rows");
      for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
    }
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  T& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }
  const std::vector<T>& data() const { return a_; }

  std::vector<T> row(std::size_t i) const {
    return std::vector<T>(a_.begin() + i * cols_, a_.begin() + (i + 1) * cols_);
  }
  void set_row(std::size_t i, const std::vector<T>& r) {
    for (std::size_t j = 0; j < cols_; ++j) (*this)(i, j) = r[j];
  }
  std::vector<std::vector<T>> to_rows() const {
    std::vector<std::vector<T>> out;
    for (std::size_t i = 0; i < rows_; ++i) out.push_back(row(i));
    return out;
  }
  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }
  Matrix rows_range(std::size_t begin, std::size_t end) const {
    Matrix m(end - begin, cols_);
    for (std::size_t i = begin; i < end; ++i)
      for (std::size_t j = 0; j < cols_; ++j) m(i - begin, j) = (*this)(i, j);
    return m;
  }
  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
  }
  friend bool operator!=(const Matrix& a, const Matrix& b) { return !(a == b); }
  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) fail(Errc::precondition, "matrix product shape mismatch");
    Matrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const T& x = a(i, k);
        if (x == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += x * b(k, j);
      }
    return c;
  }

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<T> a_;
};

using IntMatrix = Matrix<Int>;
using RatMatrix = Matrix<Rat>;
using RatVec = std::vector<Rat>;
using IntVec = std::vector<Int>;

RatMatrix to_rat(const IntMatrix& m);
// throws unless every entry is integral
IntMatrix to_int(const RatMatrix& m);
IntMatrix stack(const IntMatrix& top, const IntMatrix& bottom);
RatMatrix stack(const RatMatrix& top, const RatMatrix& bottom);
RatVec vec_mul(const RatVec& x, const RatMatrix& m);  // row vector times matrix
RatVec mat_vec(const RatMatrix& m, const RatVec& x);
Rat dot(const RatVec& a, const RatVec& b);

struct Hnf {
  IntMatrix H, U;
};
struct Snf {
  IntMatrix U, D, V;
};
struct Ldl {
  RatMatrix L;
  std::vector<Rat> D;
};

// Row Hermite normal form: H = U*M, pivots positive, entries above pivots in [0, pivot).
Hnf matrix_hnf(const IntMatrix& m);
// H with its zero rows dropped
IntMatrix hnf_basis(const IntMatrix& m);
// D = U*M*V diagonal with d1 | d2 | ..., entries nonnegative.
Snf matrix_snf(const IntMatrix& m);
// G = L*D*L^T; throws Errc::precondition on a vanishing leading minor.
Ldl rational_ldl(const RatMatrix& g);

Rat determinant(const RatMatrix& m);
Int determinant(const IntMatrix& m);
std::size_t rank(const RatMatrix& m);
RatMatrix inverse(const RatMatrix& m);
// z with z*B = x, or nullopt
std::optional<RatVec> solve_left(const RatMatrix& b, const RatVec& x);
// saturated Z-basis (rows) of {y in Z^rows : y*A = 0}
IntMatrix left_kernel(const IntMatrix& a);
// integer matrix with the same row space after clearing denominators row by row
IntMatrix clear_denominators(const RatMatrix& m);

// Element of Q(zeta_N) kept in the power basis 1, z, ..., z^(phi(N)-1) reduced by Phi_N.
class CycNum {
 public:
  CycNum();  // 0
  CycNum(const Rat& r);  // NOLINT(google-explicit-constructor)
  CycNum(long v) : CycNum(Rat(v)) {}  // NOLINT(google-explicit-constructor)

  // e(x) = exp(2 pi i x)
  static CycNum root(const Rat& x);
  // sum_a c[a] * zeta_N^a with c.size() == N
  static CycNum from_powers(long n, const std::vector<Rat>& c);
  static CycNum from_powers(long n, const std::vector<long>& c);
  // positive real square root of a positive integer
  static CycNum sqrt(const Int& n);

  long conductor() const { return n_; }
  const std::vector<Rat>& coeffs() const { return c_; }
  CycNum lifted(long m) const;

  bool is_zero() const;
  std::optional<Rat> as_rational() const;
  CycNum conj() const;

  friend CycNum operator+(const CycNum& a, const CycNum& b);
  friend CycNum operator-(const CycNum& a, const CycNum& b);
  friend CycNum operator*(const CycNum& a, const CycNum& b);
  CycNum operator-() const;
  friend bool operator==(const CycNum& a, const CycNum& b);
  friend bool operator!=(const CycNum& a, const CycNum& b) { return !(a == b); }
  std::string str() const;

 private:
  CycNum(long n, std::vector<Rat> c) : n_(n), c_(std::move(c)) {}
  long n_;
  std::vector<Rat> c_;
};

// Power-basis data of Q(zeta_N): phi(N) and the reduction of each z^a, a < N.
struct CycField {
  long n;
  long phi;
  std::vector<std::vector<long>> red;
};
std::shared_ptr<const CycField> cyc_field(long n);
// reduce an integer group-ring vector (length N) to power-basis coordinates
std::vector<long> cyc_reduce(const CycField& f, const std::vector<long>& powers);

}  // namespace thp
