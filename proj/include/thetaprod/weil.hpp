#pragma once

#include <string>
#include <vector>

#include "thetaprod/exact.hpp"
#include "thetaprod/fqm.hpp"

namespace thp {

// Matrix over Q(zeta_M): scale * X where X has integer power-basis entries mod Phi_M.
// Weil matrices are monomial up to a common scalar, which keeps the inner arithmetic in int64.
class WeilMatrix {
 public:
  WeilMatrix() = default;
  WeilMatrix(std::size_t rows, std::size_t cols, long cond);

  static WeilMatrix identity(std::size_t n, long cond = 1);
  // 0/1 (integer) matrix of a linear map, rows = target elements
  static WeilMatrix from_linmap(const FqmLinMap& m, long cond = 1);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  long conductor() const { return cond_; }
  const CycNum& scale() const { return scale_; }

  // adds coefficient * zeta_M^power to entry (i, j)
  void add_root(std::size_t i, std::size_t j, long power, long coefficient = 1);
  void set_scale(CycNum s) { scale_ = std::move(s); }

  CycNum entry(std::size_t i, std::size_t j) const;
  WeilMatrix lifted(long cond) const;
  WeilMatrix adjoint() const;  // conjugate transpose

  friend WeilMatrix operator*(const WeilMatrix& a, const WeilMatrix& b);
  friend bool operator==(const WeilMatrix& a, const WeilMatrix& b);
  friend bool operator!=(const WeilMatrix& a, const WeilMatrix& b) { return !(a == b); }

 private:
  const long* raw(std::size_t i, std::size_t j) const { return &a_[(i * cols_ + j) * phi_]; }
  long* raw(std::size_t i, std::size_t j) { return &a_[(i * cols_ + j) * phi_]; }

  std::size_t rows_ = 0, cols_ = 0;
  long cond_ = 1, phi_ = 1;
  std::shared_ptr<const CycField> field_;
  CycNum scale_ = CycNum(1);
  std::vector<long> a_;
};

WeilMatrix rho_T(const Fqm& a);
WeilMatrix rho_S(const Fqm& a);
WeilMatrix rho_Z(const Fqm& a);

struct CheckReport {
  bool ok = true;
  std::string detail;
};

// (ST)^3 = S^2 = Z, ZT = TZ, Z^4 = 1, S unitary
CheckReport check_mp2_relations(const Fqm& a);
// up and down commute with rho(T) and rho(S) of source and target
CheckReport check_intertwine(const Fqm& a, const FqmSubgroup& i);

}  // namespace thp
