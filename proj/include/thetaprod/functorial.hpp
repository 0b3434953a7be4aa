#pragma once

#include <string>

#include "thetaprod/exact.hpp"
#include "thetaprod/lattice.hpp"
#include "thetaprod/qseries.hpp"
#include "thetaprod/theta_algebra.hpp"

namespace thp {

// L' given by basis rows in L coordinates; its labels are those of DiscriminantForm(L').
EvenLattice sublattice_lattice(const EvenLattice& l, const IntMatrix& lp_basis);

// f|_{L'} = < f up to L' + N, Theta_{N+} >, N = (L')^perp in L negative-definite
QSeries quasi_pullback(const QSeries& f, const DiscriminantForm& dl, const IntMatrix& lp_basis);

// f over A_{L'} pushed to A_L for L = <L', I>
QSeries pushforward_form(const QSeries& f, const DiscriminantForm& dl, const IntMatrix& lp_basis, const IntMatrix& ibasis);

// I' = I cap L' in L' coordinates (requires I_Q inside L'_Q) and the index |I / I'|
struct IsotropicRestriction {
  IntMatrix ip;  // L' coordinates
  long index = 1;
};
IsotropicRestriction restrict_isotropic(const EvenLattice& l, const IntMatrix& lp_basis, const IntMatrix& ibasis);

struct FunctorialityReport {
  bool ok = false;
  long factor = 1;
  Bound window;
  std::string detail;
};

// (f|)*'(g|) = |I/I'| (f*g)| and xi'(f|) = |I/I'| xi(f)
FunctorialityReport check_functoriality(const AlgebraContext& ctx, const AlgebraContext& ctxp, const IntMatrix& lp_basis,
                                        const QSeries& f, const QSeries& g);
// (f down) * (g down) = (f *' g) down, for forms f, g over A_{L'}
FunctorialityReport check_pushforward(const AlgebraContext& ctx, const AlgebraContext& ctxp, const IntMatrix& lp_basis,
                                      const QSeries& f, const QSeries& g);

}  // namespace thp
