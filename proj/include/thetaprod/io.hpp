#pragma once

#include <functional>
#include <string>

#include <json.hpp>

#include "thetaprod/exact.hpp"
#include "thetaprod/fqm.hpp"
#include "thetaprod/lattice.hpp"
#include "thetaprod/qseries.hpp"

namespace thp {

using Json = nlohmann::json;
// resolves a string reference (e.g. a file path) to a lattice object
using LatticeResolver = std::function<Json(const std::string&)>;

// Schema violations throw Error(Errc::precondition) with a "schema:" prefix.
std::string rat_to_json(const Rat& x);
Rat rat_from_json(const Json& j);
Json bound_to_json(const Bound& b);  // "inf" for infinity
Bound bound_from_json(const Json& j);

Json int_matrix_to_json(const IntMatrix& m);
IntMatrix int_matrix_from_json(const Json& j, std::size_t cols);

Json lattice_to_json(const EvenLattice& l);
EvenLattice lattice_from_json(const Json& j, const LatticeResolver& resolve = {});

Json fqm_to_json(const Fqm& a);

struct LabeledForm {
  EvenLattice lattice;  // labels are those of DiscriminantForm(lattice)
  QSeries form;
};
// only orbit representatives (the smaller index of lambda, -lambda) are written; requires a symmetric form
Json form_to_json(const EvenLattice& l, const QSeries& f);
LabeledForm form_from_json(const Json& j, const LatticeResolver& resolve = {});

struct LabeledPrincipalPart {
  EvenLattice lattice;
  PrincipalPart pp;
};
Json principal_part_to_json(const EvenLattice& l, const PrincipalPart& p);
LabeledPrincipalPart principal_part_from_json(const Json& j, const LatticeResolver& resolve = {});

// {"lattice": ..., "isotropic": {"basis": [[int]]}}
struct ContextSpec {
  EvenLattice lattice;
  IntMatrix isotropic;
};
Json context_spec_to_json(const ContextSpec& c);
ContextSpec context_spec_from_json(const Json& j, const LatticeResolver& resolve = {});

// canonical text: two-space indent, sorted keys, trailing newline
std::string dump(const Json& j);
Json parse_json(const std::string& text);

}  // namespace thp
