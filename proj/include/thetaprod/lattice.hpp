#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "thetaprod/exact.hpp"
#include "thetaprod/fqm.hpp"

namespace thp {

class EvenLattice {
 public:
  EvenLattice() = default;  // rank 0
  explicit EvenLattice(IntMatrix gram);

  const IntMatrix& gram() const { return gram_; }
  std::size_t rank() const { return gram_.rows(); }
  Int det() const;
  // (x, y) for rational coordinate vectors
  Rat pair(const RatVec& x, const RatVec& y) const;
  RatMatrix gram_rat() const { return to_rat(gram_); }
  bool is_dual_vector(const RatVec& x) const;

  EvenLattice scaled(long k) const;

  friend bool operator==(const EvenLattice& a, const EvenLattice& b) { return a.gram_ == b.gram_; }

 private:
  IntMatrix gram_;
};

EvenLattice hyperbolic_plane();
EvenLattice diagonal_lattice(const std::vector<long>& entries);
EvenLattice orthogonal_sum(const EvenLattice& a, const EvenLattice& b);
EvenLattice e8_lattice();
EvenLattice d_lattice(std::size_t n);  // D_n root lattice, n >= 2 (negative of nothing: positive-definite)

// Rows are coordinates in the ambient basis. Rational rows describe sublattices of the dual.
struct Sublattice {
  EvenLattice ambient;
  RatMatrix basis;
  std::size_t rank() const { return basis.rows(); }
  bool integral() const;
  IntMatrix int_basis() const { return to_int(basis); }
  // Gram matrix of the sublattice in its own basis
  RatMatrix gram() const;
};

Sublattice make_sublattice(const EvenLattice& ambient, const IntMatrix& basis);

std::pair<std::size_t, std::size_t> signature(const EvenLattice& l);
bool is_positive_definite(const EvenLattice& l);
bool is_negative_definite(const EvenLattice& l);

// A_L = L^dual / L presented on SNF-canonical generators.
class DiscriminantForm {
 public:
  DiscriminantForm() = default;
  explicit DiscriminantForm(const EvenLattice& l);

  const EvenLattice& lattice() const { return l_; }
  const Fqm& fqm() const { return fqm_; }
  // dual vector (ambient coordinates) -> class in A_L; errors if x is not in the dual
  FqmElem proj(const RatVec& x) const;
  // representative with coordinates in [0, 1)
  RatVec lift(const FqmElem& a) const;
  // Same group and labels for L(-1).
  DiscriminantForm negated() const;

 private:
  EvenLattice l_;
  Fqm fqm_;
  IntMatrix p_;     // rows of the SNF transform acting on G*x
  RatMatrix gens_;  // generator dual vectors
};

DiscriminantForm discriminant_form(const EvenLattice& l);

// Bijection A_from -> A_to induced by a rational coordinate map of duals (row vector x -> x*embed).
FqmLinMap disc_transport(const DiscriminantForm& from, const DiscriminantForm& to, const RatMatrix& embed);

Sublattice orthogonal_complement(const Sublattice& s);
// S_Q cap L, or S_Q cap L^dual when in_dual
Sublattice primitive_hull(const Sublattice& s, bool in_dual);
bool is_maximal_isotropic(const Sublattice& i);

// All v in coset + L with (v,v)/2 <= bound, sorted lexicographically.
std::vector<RatVec> enumerate_vectors(const EvenLattice& l, const RatVec& coset, const Rat& bound);

// Streaming variant: v = w / den with w integral; the callback receives w and (w, w) = den^2 (v, v).
struct ScaledVectors {
  long den = 1;
};
ScaledVectors for_each_vector(const EvenLattice& l, const RatVec& coset, const Rat& bound,
                              const std::function<void(const std::vector<long>& w, long norm)>& fn);

struct Overlattice {
  EvenLattice lattice;
  RatMatrix basis;  // rows: basis of the overlattice in the coordinates of L
  Int index;
};

// <L, S> for S inside the dual; errors unless the result is even and integral.
Overlattice sum_lattice(const EvenLattice& l, const RatMatrix& s);

}  // namespace thp
