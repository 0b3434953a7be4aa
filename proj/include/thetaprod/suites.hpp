#pragma once

#include <random>
#include <string>
#include <vector>

#include "thetaprod/exact.hpp"
#include "thetaprod/fqm.hpp"
#include "thetaprod/io.hpp"
#include "thetaprod/lattice.hpp"
#include "thetaprod/qseries.hpp"

namespace thp {

struct CatalogFqm {
  std::string name;
  EvenLattice lattice;
  Fqm fqm;
};
// discriminant forms of order <= 36 plus the trivial module
std::vector<CatalogFqm> fqm_catalog();

struct TestLattice {
  std::string name;
  EvenLattice lattice;
  IntMatrix isotropic;  // maximal isotropic basis, rows in lattice coordinates
};
// 2U, 2U + <-2t> (t = 1..4), 2U + E8(-1), 2U + <-2> + <-2>
std::vector<TestLattice> test_lattices();
const TestLattice& test_lattice(const std::string& name);

EvenLattice u_lattice(long scale = 1);
EvenLattice a2_lattice();
// 2U + extra, isotropic basis e1, e2
TestLattice split_lattice(const std::string& name, const EvenLattice& extra);

// f1 = vv(phi_{0,1}) and the solved f0 = q^-1 e0 + O(1), over 2U + <-2>
QSeries catalog_f1(const Rat& trunc);
QSeries catalog_f0(const Rat& trunc);
// solution of q^{-1/4t} (e1 + e-1) over 2U + <-2t>
QSeries catalog_a_t(long t, const Rat& trunc);

std::vector<std::string> catalog_names();
// {"kind": "form" | "lattice" | "context", "value": ...}
Json catalog_entry(const std::string& name, const Rat& trunc);

struct SuiteResult {
  std::string name;
  bool ok = true;
  long cases = 0;
  std::vector<std::string> failures;
};
std::vector<std::string> suite_names();
SuiteResult run_suite(const std::string& name);

// symmetric q-series with random small coefficients on exponents in [lo, trunc) congruent to q(lambda)
QSeries random_symmetric_series(const Fqm& a, const Rat& weight, const Rat& lo, const Rat& trunc, std::mt19937_64& rng);
// random C[j]-combination (j-degree <= 1) of the given forms; truncation drops by one
QSeries random_combination(const std::vector<QSeries>& gens, std::mt19937_64& rng);

}  // namespace thp
