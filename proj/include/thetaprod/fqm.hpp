#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "thetaprod/exact.hpp"

namespace thp {

// Coordinates on the generators, reduced: 0 <= coords[i] < orders[i].
using FqmElem = std::vector<long>;

// Finite quadratic module on generators g_i of orders d_1 | d_2 | ... .
// Values q(g_i) and (g_i, g_j) are stored as numerators over a common level.
class Fqm {
 public:
  Fqm() = default;  // trivial group

  // Validates and, when the orders are not already an SNF chain, re-presents on SNF generators.
  static Fqm make(const std::vector<long>& orders, const std::vector<Rat>& qdiag,
                  const std::vector<std::vector<Rat>>& bform);

  std::size_t ngens() const { return orders_.size(); }
  const std::vector<long>& orders() const { return orders_; }
  long size() const { return size_; }
  // common denominator of all q and b values
  long level() const { return level_; }

  std::vector<Rat> qdiag() const;
  std::vector<std::vector<Rat>> bform() const;

  // numerator of q(x) (resp. b(x,y)) over level(), reduced into [0, level)
  long qnum(const FqmElem& x) const;
  long bnum(const FqmElem& x, const FqmElem& y) const;
  Rat q(const FqmElem& x) const { return ratio(qnum(x), level_); }
  Rat b(const FqmElem& x, const FqmElem& y) const { return ratio(bnum(x, y), level_); }

  FqmElem zero() const { return FqmElem(orders_.size(), 0); }
  FqmElem add(const FqmElem& x, const FqmElem& y) const;
  FqmElem neg(const FqmElem& x) const;
  FqmElem mul(long k, const FqmElem& x) const;
  FqmElem reduce(const std::vector<long>& raw) const;
  FqmElem reduce(const IntVec& raw) const;

  // lexicographic enumeration order on coords
  long index(const FqmElem& x) const;
  FqmElem elem(long index) const;
  std::vector<FqmElem> elements() const;
  long neg_index(long i) const { return index(neg(elem(i))); }

  Fqm scaled(long k) const;  // q -> k*q on the same group and labels
  bool nondegenerate() const;

  friend bool operator==(const Fqm& a, const Fqm& b) {
    return a.orders_ == b.orders_ && a.level_ == b.level_ && a.qn_ == b.qn_ && a.bn_ == b.bn_;
  }
  friend bool operator!=(const Fqm& a, const Fqm& b) { return !(a == b); }

  // same group (orders), arbitrary forms
  bool same_group(const Fqm& o) const { return orders_ == o.orders_; }

  // Raw constructor: no normalization. Orders need not form a chain.
  static Fqm raw(const std::vector<long>& orders, const std::vector<Rat>& qdiag,
                 const std::vector<std::vector<Rat>>& bform);

 private:
  std::vector<long> orders_;
  long size_ = 1;
  long level_ = 1;
  std::vector<long> qn_;
  std::vector<std::vector<long>> bn_;
};

Fqm direct_sum(const Fqm& a, const Fqm& b);

class FqmSubgroup {
 public:
  FqmSubgroup() = default;
  FqmSubgroup(const Fqm& parent, std::vector<FqmElem> gens);

  const Fqm& parent() const { return parent_; }
  const std::vector<FqmElem>& gens() const { return gens_; }
  // canonical HNF basis (k x k) of the preimage in Z^k
  const IntMatrix& hnf_basis() const { return hnf_; }

  bool contains(const FqmElem& x) const;
  long size() const { return size_; }
  std::vector<FqmElem> elements() const;
  bool isotropic() const;

  friend bool operator==(const FqmSubgroup& a, const FqmSubgroup& b) {
    return a.parent_ == b.parent_ && a.hnf_ == b.hnf_;
  }

 private:
  Fqm parent_;
  std::vector<FqmElem> gens_;
  IntMatrix hnf_;
  long size_ = 1;
};

FqmSubgroup whole_group(const Fqm& a);
FqmSubgroup trivial_subgroup(const Fqm& a);
FqmSubgroup subgroup_perp(const FqmSubgroup& h);
FqmSubgroup intersect(const FqmSubgroup& a, const FqmSubgroup& b);
FqmSubgroup subgroup_sum(const FqmSubgroup& a, const FqmSubgroup& b);

// Linear map C[source] -> C[target]; column j is the image of e_j (source lexicographic index).
// The maps built here have rational (in fact integer) entries, stored sparsely.
class FqmLinMap {
 public:
  using Column = std::vector<std::pair<long, Rat>>;  // (target index, coefficient), sorted

  FqmLinMap() = default;
  FqmLinMap(Fqm source, Fqm target);
  static FqmLinMap identity(const Fqm& a);

  const Fqm& source() const { return source_; }
  const Fqm& target() const { return target_; }
  const Column& column(long j) const { return cols_.at(j); }
  void set_column(long j, Column c);
  Rat entry(long row, long col) const;

  FqmLinMap transpose() const;  // adjoint for the standard pairing (entries are real)
  FqmLinMap scaled(const Rat& c) const;

  friend FqmLinMap operator*(const FqmLinMap& a, const FqmLinMap& b);  // a after b
  friend bool operator==(const FqmLinMap& a, const FqmLinMap& b);

 private:
  Fqm source_, target_;
  std::vector<Column> cols_;
};

// A' = I^perp / I on SNF generators, with the projection I^perp -> A'.
class Subquotient {
 public:
  Subquotient(const Fqm& a, const FqmSubgroup& i);

  const Fqm& quotient() const { return quotient_; }
  const FqmSubgroup& isotropic() const { return i_; }
  const FqmSubgroup& perp() const { return perp_; }
  // nullopt when x is outside I^perp
  std::optional<FqmElem> proj(const FqmElem& x) const;
  FqmElem lift(const FqmElem& y) const;

 private:
  Fqm parent_, quotient_;
  FqmSubgroup i_, perp_;
  RatMatrix to_z_;       // Z^k coordinates of I^perp -> quotient coordinates (before reduction)
  IntMatrix from_z_;     // quotient generators as elements of Z^k
  std::vector<std::size_t> kept_;
};

// errors with Errc::precondition if I is not isotropic
Subquotient subquotient(const Fqm& a, const FqmSubgroup& i);
FqmLinMap pullback_map(const Subquotient& sq);
FqmLinMap pushforward_map(const Subquotient& sq);

int milgram_signature(const Fqm& a);

std::vector<FqmSubgroup> enumerate_isotropic_subgroups(const Fqm& a, long cap = 100);

struct PullPushReport {
  bool ok = false;
  long factor = 0;  // |I1 cap I2|
  std::string detail;
};
PullPushReport pullpush_compose_check(const Fqm& a, const FqmSubgroup& i1, const FqmSubgroup& i2);

}  // namespace thp
