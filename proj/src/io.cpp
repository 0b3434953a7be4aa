#include "thetaprod/io.hpp"

#include <set>

namespace thp {

namespace {

[[noreturn]] void schema(const std::string& what) { fail(Errc::precondition, "schema: " + what); }

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) schema(std::string("missing field '") + key + "'");
  return j.at(key);
}

long as_long(const Json& j, const char* what) {
  if (!j.is_number_integer()) schema(std::string(what) + " must be an integer");
  return j.get<long>();
}

FqmElem elem_from_json(const Json& j, const Fqm& a) {
  if (!j.is_array() || j.size() != a.ngens()) schema("elem has the wrong length");
  FqmElem x;
  for (const auto& v : j) x.push_back(as_long(v, "elem entry"));
  return a.reduce(x);
}

Json elem_to_json(const FqmElem& x) { return Json(x); }

}  // namespace

std::string rat_to_json(const Rat& x) { return to_string(x); }

Rat rat_from_json(const Json& j) {
  if (j.is_number_integer()) return Rat(j.get<long>());
  if (!j.is_string()) schema("rational must be a string \"p/q\"");
  try {
    return parse_rat(j.get<std::string>());
  } catch (const Error&) {
    schema("malformed rational '" + j.get<std::string>() + "'");
  }
}

Json bound_to_json(const Bound& b) { return b.is_inf() ? Json("inf") : Json(rat_to_json(b.value())); }

Bound bound_from_json(const Json& j) {
  if (j.is_string() && j.get<std::string>() == "inf") return Bound::infinity();
  return Bound(rat_from_json(j));
}

Json int_matrix_to_json(const IntMatrix& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t k = 0; k < m.cols(); ++k) row.push_back(to_ll(m(i, k)));
    rows.push_back(row);
  }
  return rows;
}

IntMatrix int_matrix_from_json(const Json& j, std::size_t cols) {
  if (!j.is_array()) schema("matrix must be an array of rows");
  IntMatrix m(j.size(), cols);
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_array() || j[i].size() != cols) schema("matrix row has the wrong length");
    for (std::size_t k = 0; k < cols; ++k) m(i, k) = Int(as_long(j[i][k], "matrix entry"));
  }
  return m;
}

Json lattice_to_json(const EvenLattice& l) { return Json{{"gram", int_matrix_to_json(l.gram())}}; }

EvenLattice lattice_from_json(const Json& j, const LatticeResolver& resolve) {
  if (j.is_string()) {
    if (!resolve) schema("lattice reference without a resolver");
    return lattice_from_json(resolve(j.get<std::string>()), resolve);
  }
  const Json& g = field(j, "gram");
  if (!g.is_array()) schema("gram must be an array");
  IntMatrix m = int_matrix_from_json(g, g.size());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (m(i, i) % 2 != 0) schema("gram matrix is not even");
    for (std::size_t k = 0; k < i; ++k)
      if (m(i, k) != m(k, i)) schema("gram matrix is not symmetric");
  }
  if (m.rows() > 0 && determinant(m) == 0) schema("gram matrix is degenerate");
  return EvenLattice(m);
}

Json fqm_to_json(const Fqm& a) {
  Json q = Json::array(), b = Json::array();
  for (std::size_t i = 0; i < a.ngens(); ++i) {
    FqmElem ei = a.zero();
    ei[i] = 1;
    q.push_back(rat_to_json(a.q(ei)));
    Json row = Json::array();
    for (std::size_t k = 0; k < a.ngens(); ++k) {
      FqmElem ek = a.zero();
      ek[k] = 1;
      row.push_back(rat_to_json(a.b(ei, ek)));
    }
    b.push_back(row);
  }
  return Json{{"orders", a.orders()}, {"size", a.size()}, {"level", a.level()}, {"q", q}, {"b", b}};
}

Json form_to_json(const EvenLattice& l, const QSeries& f) {
  DiscriminantForm d(l);
  const Fqm& a = f.fqm();
  THP_REQUIRE(a == d.fqm(), "form_to_json: form does not live over A_L");
  THP_REQUIRE(check_symmetry(f), "form_to_json: only symmetric forms are serialized");
  Json coeffs = Json::array();
  for (long i = 0; i < a.size(); ++i) {
    if (a.neg_index(i) < i) continue;
    for (const auto& [n, c] : f.component(i))
      coeffs.push_back(Json{{"elem", elem_to_json(a.elem(i))}, {"exp", rat_to_json(n)}, {"val", rat_to_json(c)}});
  }
  return Json{{"lattice", lattice_to_json(l)},
              {"weight", rat_to_json(f.weight())},
              {"trunc", bound_to_json(f.trunc())},
              {"coeffs", coeffs}};
}

LabeledForm form_from_json(const Json& j, const LatticeResolver& resolve) {
  LabeledForm out;
  out.lattice = lattice_from_json(field(j, "lattice"), resolve);
  DiscriminantForm d(out.lattice);
  const Fqm& a = d.fqm();
  out.form = QSeries(a, rat_from_json(field(j, "weight")), bound_from_json(field(j, "trunc")));
  const Json& cs = field(j, "coeffs");
  if (!cs.is_array()) schema("coeffs must be an array");
  std::set<std::pair<long, Rat>> seen;
  for (const auto& c : cs) {
    long i = a.index(elem_from_json(field(c, "elem"), a));
    long ni = a.neg_index(i);
    if (ni < i) schema("coefficient on a non-representative element");
    Rat n = rat_from_json(field(c, "exp")), v = rat_from_json(field(c, "val"));
    if (!seen.insert({i, n}).second) schema("duplicate coefficient");
    if (!(Bound(n) < out.form.trunc())) schema("coefficient at or beyond trunc");
    // scalar series (eta powers) may carry a multiplier system
    if (out.lattice.rank() > 0 && frac(n) != a.q(a.elem(i))) schema("exponent not congruent to q(elem) mod 1");
    out.form.add_term(i, n, v);
    if (ni != i) out.form.add_term(ni, n, v);
  }
  return out;
}

Json principal_part_to_json(const EvenLattice& l, const PrincipalPart& p) {
  DiscriminantForm d(l);
  THP_REQUIRE(p.fqm == d.fqm(), "principal_part_to_json: wrong module");
  THP_REQUIRE(check_symmetry(p), "principal_part_to_json: principal part is not symmetric");
  const Fqm& a = p.fqm;
  Json terms = Json::array();
  for (const auto& [key, c] : p.terms) {
    if (a.neg_index(key.first) < key.first) continue;
    terms.push_back(Json{{"elem", elem_to_json(a.elem(key.first))}, {"exp", rat_to_json(key.second)}, {"val", rat_to_json(c)}});
  }
  Json out{{"lattice", lattice_to_json(l)}, {"terms", terms}};
  if (p.constant) {
    Json cs = Json::array();
    for (const auto& [i, c] : *p.constant)
      if (a.neg_index(i) >= i) cs.push_back(Json{{"elem", elem_to_json(a.elem(i))}, {"val", rat_to_json(c)}});
    out["constant"] = cs;
  }
  return out;
}

LabeledPrincipalPart principal_part_from_json(const Json& j, const LatticeResolver& resolve) {
  LabeledPrincipalPart out;
  out.lattice = lattice_from_json(field(j, "lattice"), resolve);
  DiscriminantForm d(out.lattice);
  const Fqm& a = d.fqm();
  out.pp.fqm = a;
  const Json& ts = field(j, "terms");
  if (!ts.is_array()) schema("terms must be an array");
  for (const auto& t : ts) {
    long i = a.index(elem_from_json(field(t, "elem"), a));
    if (a.neg_index(i) < i) schema("term on a non-representative element");
    Rat n = rat_from_json(field(t, "exp")), v = rat_from_json(field(t, "val"));
    if (!(n < 0)) schema("principal part exponents must be negative");
    if (frac(n) != a.q(a.elem(i))) schema("exponent not congruent to q(elem) mod 1");
    if (v == 0) continue;
    if (out.pp.terms.count({i, n})) schema("duplicate term");
    out.pp.terms[{i, n}] = v;
    out.pp.terms[{a.neg_index(i), n}] = v;
  }
  if (j.contains("constant")) {
    std::map<long, Rat> cmap;
    for (const auto& t : j.at("constant")) {
      long i = a.index(elem_from_json(field(t, "elem"), a));
      if (a.neg_index(i) < i) schema("constant on a non-representative element");
      if (frac(a.q(a.elem(i))) != 0) schema("constant term on an element with q != 0");
      Rat v = rat_from_json(field(t, "val"));
      if (v == 0) continue;
      cmap[i] = v;
      cmap[a.neg_index(i)] = v;
    }
    out.pp.constant = cmap;
  }
  return out;
}

Json context_spec_to_json(const ContextSpec& c) {
  return Json{{"lattice", lattice_to_json(c.lattice)}, {"isotropic", Json{{"basis", int_matrix_to_json(c.isotropic)}}}};
}

ContextSpec context_spec_from_json(const Json& j, const LatticeResolver& resolve) {
  ContextSpec c;
  c.lattice = lattice_from_json(field(j, "lattice"), resolve);
  c.isotropic = int_matrix_from_json(field(field(j, "isotropic"), "basis"), c.lattice.rank());
  return c;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    schema(std::string("invalid JSON: ") + e.what());
  }
}

}  // namespace thp
