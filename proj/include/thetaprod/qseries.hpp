#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "thetaprod/exact.hpp"
#include "thetaprod/fqm.hpp"

namespace thp {

// Truncated q-expansion sum_lambda sum_n c_lambda(n) q^n e_lambda over an Fqm.
// Exponents below trunc() are complete; zero coefficients are never stored.
class QSeries {
 public:
  using Component = std::map<Rat, Rat>;  // exponent -> coefficient

  QSeries() : QSeries(Fqm(), Rat(0), Bound::infinity()) {}
  QSeries(Fqm fqm, Rat weight, Bound trunc);
  static QSeries scalar(Rat weight, Bound trunc) { return QSeries(Fqm(), std::move(weight), std::move(trunc)); }

  const Fqm& fqm() const { return fqm_; }
  const Rat& weight() const { return weight_; }
  const Bound& trunc() const { return trunc_; }
  bool is_scalar() const { return fqm_.size() == 1; }

  const Component& component(long idx) const { return comp_.at(idx); }
  // throws Errc::truncation when n >= trunc
  Rat coeff(long idx, const Rat& n) const;
  Rat coeff(const FqmElem& x, const Rat& n) const { return coeff(fqm_.index(x), n); }
  Rat coeff(const Rat& n) const { return coeff(0L, n); }

  // accumulates; terms at or above trunc are dropped
  void add_term(long idx, const Rat& n, const Rat& c);
  void add_term(const FqmElem& x, const Rat& n, const Rat& c) { add_term(fqm_.index(x), n, c); }
  void add_term(const Rat& n, const Rat& c) { add_term(0L, n, c); }

  // lowers trunc (never raises it) and drops terms beyond
  void truncate(const Bound& t);
  QSeries truncated(const Bound& t) const;
  void set_weight(Rat w) { weight_ = std::move(w); }

  // minimal stored exponent, infinity for the zero series
  Bound leading() const;
  // min(leading, trunc): lower bound for every exponent that may be nonzero
  Bound lead_eff() const { return min(leading(), trunc_); }
  bool is_zero() const;
  std::size_t nterms() const;

  std::string str() const;

  friend bool operator==(const QSeries& a, const QSeries& b);
  friend bool operator!=(const QSeries& a, const QSeries& b) { return !(a == b); }

 private:
  Fqm fqm_;
  Rat weight_;
  Bound trunc_;
  std::vector<Component> comp_;
};

// coefficientwise comparison below w (which must not exceed either trunc); fqm must agree
bool agree_below(const QSeries& a, const QSeries& b, const Bound& w);
// common window of two series
inline Bound common_trunc(const QSeries& a, const QSeries& b) { return min(a.trunc(), b.trunc()); }

QSeries add(const QSeries& f, const QSeries& g);
QSeries sub(const QSeries& f, const QSeries& g);
QSeries scale(const QSeries& f, const Rat& c);
// Cauchy product of a scalar series with f
QSeries mul_scalar_series(const QSeries& s, const QSeries& f);
QSeries apply_linmap(const FqmLinMap& m, const QSeries& f);
// sum_lambda f_lambda g_lambda; g lives over the same group with negated form
QSeries contract(const QSeries& f, const QSeries& g);

struct PrincipalPart {
  Fqm fqm;
  std::map<std::pair<long, Rat>, Rat> terms;  // (element index, n < 0) -> coefficient
  std::optional<std::map<long, Rat>> constant;  // weight 0 only
  friend bool operator==(const PrincipalPart& a, const PrincipalPart& b) {
    return a.fqm == b.fqm && a.terms == b.terms && a.constant == b.constant;
  }
};

PrincipalPart principal_part(const QSeries& f);
long filtration_degree(const QSeries& f);
bool check_symmetry(const QSeries& f);
bool check_symmetry(const PrincipalPart& p);
// every stored exponent n satisfies n = q(lambda) mod 1
bool exponents_match_fqm(const QSeries& f);

// scalar series whose exponents lie in a single class a + Z
QSeries scalar_inverse(const QSeries& s);
QSeries scalar_pow(const QSeries& s, long k);
// q^0 coefficient one, trunc infinity
QSeries scalar_one();

}  // namespace thp
