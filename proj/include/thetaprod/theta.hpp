#pragma once

#include <map>
#include <utility>
#include <vector>

#include "thetaprod/exact.hpp"
#include "thetaprod/lattice.hpp"
#include "thetaprod/qseries.hpp"

namespace thp {

// Theta_N over the labels of d (d.lattice() positive-definite), weight rk/2, complete below trunc.
QSeries theta_series(const DiscriminantForm& d, const Rat& trunc);
QSeries theta_series(const EvenLattice& n, const Rat& trunc);

// A_N -> A_N' for an overlattice N' (rows of basis = N' basis in N coordinates):
// e_lambda -> e_[lambda] when lambda pairs integrally with N', else 0.
FqmLinMap overlattice_pushforward(const DiscriminantForm& dn, const DiscriminantForm& dnp, const RatMatrix& basis);

struct OverlatticeReport {
  bool ok = false;
  Bound window;
  std::string detail;
};
// Theta_N' == Theta_N pushed forward, with N' = <N, lifts of H>
OverlatticeReport theta_overlattice_check(const EvenLattice& n, const FqmSubgroup& h, const Rat& trunc);

// Two-variable expansion sum c(n, l) q^n zeta^l, l a vector of the dual of the index lattice.
struct JacobiExpansion {
  EvenLattice index_lattice;
  Rat weight;
  Bound trunc;
  std::map<std::pair<Rat, RatVec>, Rat> coeffs;

  void add(const Rat& n, const RatVec& l, const Rat& c);
  Bound leading() const;
  Bound lead_eff() const { return min(leading(), trunc); }
  // Z = 0
  QSeries at_zero() const;
  void truncate(const Bound& t);
  friend bool operator==(const JacobiExpansion& a, const JacobiExpansion& b) {
    return a.index_lattice == b.index_lattice && a.weight == b.weight && a.trunc == b.trunc && a.coeffs == b.coeffs;
  }
};

bool agree_below(const JacobiExpansion& a, const JacobiExpansion& b, const Bound& w);
JacobiExpansion mul_scalar_jacobi(const QSeries& s, const JacobiExpansion& phi);

// theta_{K+ + lambda}(tau, Z) for each lambda (lexicographic index), labels from dkplus
std::vector<JacobiExpansion> jacobi_theta(const DiscriminantForm& dkplus, const Rat& trunc);

}  // namespace thp
