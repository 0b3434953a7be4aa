#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "thetaprod/exact.hpp"
#include "thetaprod/lattice.hpp"
#include "thetaprod/qseries.hpp"
#include "thetaprod/theta.hpp"

namespace thp {

// Scalar classics, complete below trunc.
QSeries eisenstein_e4(const Rat& trunc);
QSeries eisenstein_e6(const Rat& trunc);
QSeries eta_pow(long k, const Rat& trunc);
QSeries delta_series(const Rat& trunc);
QSeries j_series(const Rat& trunc);
// name: E4 | E6 | Delta | j | eta_pow(k)
QSeries scalar_catalog(const std::string& name, const Rat& trunc);

// Two-variable series sum c(n, r) q^n zeta^r with integral n, r; complete for n < trunc.
class Bivariate {
 public:
  Bivariate() = default;
  Bivariate(Rat weight, long index, long trunc) : weight_(std::move(weight)), index_(index), trunc_(trunc) {}

  const Rat& weight() const { return weight_; }
  long index() const { return index_; }
  long trunc() const { return trunc_; }
  const std::map<std::pair<long, long>, Rat>& coeffs() const { return c_; }

  Rat coeff(long n, long r) const;
  void add(long n, long r, const Rat& c);
  void set_weight(Rat w) { weight_ = std::move(w); }
  void set_index(long i) { index_ = i; }
  long leading() const;  // minimal n, or trunc when zero

  friend Bivariate operator*(const Bivariate& a, const Bivariate& b);
  friend Bivariate operator+(const Bivariate& a, const Bivariate& b);
  friend bool operator==(const Bivariate& a, const Bivariate& b) { return a.trunc_ == b.trunc_ && a.c_ == b.c_; }
  Bivariate scaled(const Rat& c) const;
  Bivariate truncated(long t) const;

 private:
  Rat weight_;
  long index_ = 0;
  long trunc_ = 0;
  std::map<std::pair<long, long>, Rat> c_;
};

// s(q) * phi with s scalar, integral exponents
Bivariate mul_scalar_bivariate(const QSeries& s, const Bivariate& phi);

// Weak Jacobi forms of index 1, built from their product / structure formulas.
Bivariate phi_m2_1(long trunc);
Bivariate phi_0_1(long trunc);

// zeta^r -> l = r / (2m) in the coordinate of <2m>
JacobiExpansion bivariate_to_jacobi(const Bivariate& phi);
Bivariate jacobi_to_bivariate(const JacobiExpansion& phi);

// Theta decomposition. dkplus labels K+ = K(-1); the vector-valued side lives over A_K.
QSeries vv_from_jacobi(const JacobiExpansion& phi, const DiscriminantForm& dkplus);
JacobiExpansion jacobi_from_vv(const QSeries& f, const DiscriminantForm& dkplus);

// over A(<-2>) in its standard labels; weights -1/2 and -5/2
QSeries ez_jacobi(const std::string& name, const Rat& trunc);

struct SolveResult {
  QSeries form;
  // poly[i][k] = coefficient of j^k * generators[i]
  std::vector<std::vector<Rat>> poly;
};

// Exact solve for sum_i P_i(j) g_i with the given principal part (and constant term in weight 0).
// Unknowns are j^k g_i for k <= (pole order of target) + slack.
SolveResult solve_principal_part(const std::vector<QSeries>& generators, const PrincipalPart& target, long slack = 2);

// target q^n (e_lambda + e_-lambda)
PrincipalPart orbit_target(const Fqm& a, long idx, const Rat& n);

// Generators over A_L for L = 2U + <-2t>, t = 1..4: phi_{0,1}^a phi_{-2,1}^b times modular forms of
// weight 2b, transported into the labels of dl (whose last coordinate carries <-2t>).
std::vector<QSeries> index_t_generators(long t, const DiscriminantForm& dl, const Rat& trunc);
// A(<-2t>) in standard labels -> A_L for the same layout
FqmLinMap index_t_transport(long t, const DiscriminantForm& dl);

}  // namespace thp
