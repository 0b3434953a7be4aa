#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <random>
#include <vector>

#include "thetaprod/exact.hpp"
#include "thetaprod/fqm.hpp"
#include "thetaprod/lattice.hpp"
#include "thetaprod/qseries.hpp"

namespace thp {

// L* = phi(pU) + Ktilde; all rows in L* coordinates.
struct HyperbolicSplit {
  IntMatrix ls, ms;  // isotropic pairs with (l_i, m_j) = delta_ij
  IntMatrix ktilde;  // basis of the orthogonal complement of phi(pU)
};

// istar: basis rows of I* in the coordinates of lstar; rng randomizes pivots when given
HyperbolicSplit hyperbolic_split(const EvenLattice& lstar, const IntMatrix& istar, std::mt19937_64* rng = nullptr);

class AlgebraContext {
 public:
  static AlgebraContext build(const EvenLattice& l, const IntMatrix& i, std::mt19937_64* rng = nullptr);

  const EvenLattice& lattice() const { return l_; }
  const Sublattice& isotropic() const { return i_; }
  const Sublattice& istar() const { return istar_; }
  long index_istar_i() const { return index_; }
  const Overlattice& lstar() const { return lstar_; }
  const HyperbolicSplit& split() const { return split_; }
  const FqmSubgroup& j() const { return j_; }
  const EvenLattice& k() const { return k_; }
  const EvenLattice& kplus() const { return dkplus_.lattice(); }
  const DiscriminantForm& disc_l() const { return dl_; }
  const DiscriminantForm& disc_k() const { return dk_; }
  const DiscriminantForm& disc_kplus() const { return dkplus_; }
  const FqmLinMap& down_lk() const { return down_; }
  Rat weight() const { return weight_; }

  // p(mu) for mu in J^perp, nullopt otherwise; computed from the split vectors directly
  std::optional<FqmElem> down_class(const FqmElem& mu) const;
  // cached per trunc; complete below trunc
  QSeries theta_kplus(const Rat& trunc) const;

 private:
  EvenLattice l_;
  Sublattice i_, istar_;
  long index_ = 1;
  Overlattice lstar_;
  HyperbolicSplit split_;
  FqmSubgroup j_;
  EvenLattice k_;
  DiscriminantForm dl_, dk_, dkplus_;
  RatMatrix pprime_;  // basis of I^perp cap L (L coordinates) whose first p rows span I
  RatMatrix l_vecs_, m_vecs_;  // split vectors in L coordinates
  FqmLinMap down_;
  Rat weight_;

  struct Cache {
    std::mutex mu;
    std::map<Rat, QSeries> theta;
  };
  std::shared_ptr<Cache> cache_ = std::make_shared<Cache>();
};

QSeries xi(const AlgebraContext& ctx, const QSeries& f);
QSeries star(const AlgebraContext& ctx, const QSeries& f, const QSeries& g);
// largest exponent bound for which star_coeff_oracle is defined
Bound star_oracle_trunc(const QSeries& f, const QSeries& g);
// direct triple sum over m + l + k = n
Rat star_coeff_oracle(const AlgebraContext& ctx, const QSeries& f, const QSeries& g, const FqmElem& lambda,
                      const Rat& n);
QSeries bracket(const AlgebraContext& ctx, const QSeries& f, const QSeries& g);

// coefficients a_k of P(j) = sum a_k j^k matching s; errors with Errc::mismatch if s is not of that form
std::vector<Rat> fit_j_polynomial(const QSeries& s);
bool in_theta_perp(const AlgebraContext& ctx, const QSeries& f);
bool is_left_unit(const AlgebraContext& ctx, const QSeries& f);
// right units exist exactly for L = pU
bool has_right_unit(const AlgebraContext& ctx);

}  // namespace thp
