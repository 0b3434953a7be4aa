// Exercises the shared library through its C header only.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>
#include <json.hpp>

#include <string>
#include <vector>

#include "thetaprod/thetaprod.h"

using nlohmann::json;

namespace {

std::string take(char* s) {
  std::string out(s);
  tp_string_free(s);
  return out;
}

json catalog(const char* name, const char* trunc = "5") {
  char* s = nullptr;
  REQUIRE(tp_catalog(name, trunc, &s) == TP_OK);
  return json::parse(take(s));
}

const char* kCtx = R"({"lattice": {"gram": [[0,1,0,0,0],[1,0,0,0,0],[0,0,0,1,0],[0,0,1,0,0],[0,0,0,0,-2]]},
                       "isotropic": {"basis": [[1,0,0,0,0],[0,0,1,0,0]]}})";

}  // namespace

TEST_CASE("lattice handles and discriminant forms") {
  tp_lattice* l = nullptr;
  REQUIRE(tp_lattice_parse(R"({"gram": [[-2]]})", &l) == TP_OK);
  char* s = nullptr;
  REQUIRE(tp_lattice_disc(l, &s) == TP_OK);
  json d = json::parse(take(s));
  CHECK(d["fqm"]["size"] == 2);
  CHECK(d["fqm"]["milgram_signature"] == 7);
  CHECK(d["signature"] == json::array({0, 1}));
  CHECK(tp_lattice_theta(l, "3", &s) == TP_ERR_PRECONDITION);
  CHECK(std::string(tp_last_error()).find("positive-definite") != std::string::npos);
  tp_lattice_free(l);

  REQUIRE(tp_lattice_parse(R"({"gram": [[2]]})", &l) == TP_OK);
  REQUIRE(tp_lattice_theta(l, "2", &s) == TP_OK);
  json th = json::parse(take(s));
  CHECK(th["weight"] == "1/2");
  tp_lattice_free(l);
}

TEST_CASE("schema and argument errors") {
  tp_lattice* l = nullptr;
  CHECK(tp_lattice_parse(R"({"gram": [[1]]})", &l) == TP_ERR_SCHEMA);
  CHECK(l == nullptr);
  CHECK(tp_lattice_parse("{not json", &l) == TP_ERR_SCHEMA);
  CHECK(tp_lattice_parse(nullptr, &l) == TP_ERR_PRECONDITION);
  CHECK(std::string(tp_status_name(TP_ERR_SCHEMA)) == "schema");
  char* s = nullptr;
  CHECK(tp_catalog("no-such-entry", "3", &s) == TP_ERR_NOT_FOUND);
  CHECK(tp_catalog("j", "x", &s) == TP_ERR_PRECONDITION);
}

TEST_CASE("xi, star and bracket through handles") {
  tp_context* c = nullptr;
  REQUIRE(tp_context_parse(kCtx, &c) == TP_OK);
  char* s = nullptr;
  REQUIRE(tp_context_describe(c, &s) == TP_OK);
  json desc = json::parse(take(s));
  CHECK(desc["weight"] == "-1/2");
  CHECK(desc["index_Istar_I"] == 1);
  CHECK(desc["K"]["gram"] == json::array({json::array({-2})}));

  tp_form *f1 = nullptr, *f0 = nullptr;
  REQUIRE(tp_form_parse(catalog("f1")["value"].dump().c_str(), &f1) == TP_OK);
  REQUIRE(tp_form_parse(catalog("f0")["value"].dump().c_str(), &f0) == TP_OK);

  tp_form* x = nullptr;
  REQUIRE(tp_xi(c, f1, &x) == TP_OK);
  long none = 0;
  REQUIRE(tp_form_coeff(x, &none, 0, "0", &s) == TP_OK);
  CHECK(take(s) == "12");
  tp_form_free(x);

  tp_form* p = nullptr;
  REQUIRE(tp_star(c, f1, f0, &p) == TP_OK);
  long e0 = 0;
  REQUIRE(tp_form_coeff(p, &e0, 1, "-1", &s) == TP_OK);
  CHECK(take(s) == "12");
  CHECK(tp_form_coeff(p, &e0, 1, "100", &s) == TP_ERR_TRUNCATION);
  tp_form_free(p);

  tp_form* b = nullptr;
  REQUIRE(tp_bracket(c, f1, f0, &b) == TP_OK);
  int r = -1;
  REQUIRE(tp_in_theta_perp(c, b, &r) == TP_OK);
  CHECK(r == 1);
  long e1 = 1;
  REQUIRE(tp_form_coeff(b, &e1, 1, "-5/4", &s) == TP_OK);
  CHECK(take(s) == "-1");
  tp_form_free(b);

  REQUIRE(tp_is_left_unit(c, f1, &r) == TP_OK);
  CHECK(r == 0);

  tp_form* q = nullptr;
  REQUIRE(tp_quasi_pullback(c, R"({"basis": [[1,0,0,0,0],[0,1,0,0,0],[0,0,1,0,0],[0,0,0,1,0]]})", f1, &q) == TP_OK);
  REQUIRE(tp_form_serialize(q, &s) == TP_OK);
  json qj = json::parse(take(s));
  CHECK(qj["lattice"]["gram"].size() == 4);
  tp_form_free(q);

  tp_form_free(f1);
  tp_form_free(f0);
  tp_context_free(c);
}

TEST_CASE("forms on another lattice are refused") {
  tp_context* c = nullptr;
  REQUIRE(tp_context_parse(kCtx, &c) == TP_OK);
  tp_form* a = nullptr;
  REQUIRE(tp_form_parse(catalog("a_t2", "2")["value"].dump().c_str(), &a) == TP_OK);
  tp_form* x = nullptr;
  CHECK(tp_xi(c, a, &x) == TP_ERR_MISMATCH);
  CHECK(x == nullptr);
  tp_form_free(a);
  tp_context_free(c);
}

TEST_CASE("solve through the C interface") {
  tp_context* c = nullptr;
  REQUIRE(tp_context_parse(kCtx, &c) == TP_OK);
  json ctx = json::parse(kCtx);
  std::vector<tp_form*> gens;
  // f0 is itself a generator, so the answer is 1 * f0
  for (const char* n : {"f1", "f0"}) {
    tp_form* g = nullptr;
    REQUIRE(tp_form_parse(catalog(n, "6")["value"].dump().c_str(), &g) == TP_OK);
    gens.push_back(g);
  }
  json target = {{"lattice", ctx["lattice"]}, {"terms", json::array({{{"elem", {0}}, {"exp", "-1"}, {"val", "1"}}})}};
  char* s = nullptr;
  std::vector<const tp_form*> cg(gens.begin(), gens.end());
  REQUIRE(tp_solve(c, target.dump().c_str(), cg.data(), cg.size(), &s) == TP_OK);
  json r = json::parse(take(s));
  CHECK(r["poly"].size() == 2);
  CHECK(r["poly"][1][0] == "1");
  for (auto* g : gens) tp_form_free(g);
  tp_context_free(c);
}

TEST_CASE("suites are reachable") {
  char* s = nullptr;
  REQUIRE(tp_suite_names(&s) == TP_OK);
  json names = json::parse(take(s));
  CHECK(names.size() >= 10);
  int passed = 0;
  REQUIRE(tp_check_suite("milgram", &passed, &s) == TP_OK);
  json rep = json::parse(take(s));
  CHECK(passed == 1);
  CHECK(rep["cases"].get<long>() > 8);
  CHECK(tp_check_suite("nope", &passed, &s) == TP_ERR_NOT_FOUND);
}
