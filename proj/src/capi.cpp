#include "thetaprod/thetaprod.h"

#include <cstdlib>
#include <cstring>
#include <optional>

#include "thetaprod/forms.hpp"
#include "thetaprod/functorial.hpp"
#include "thetaprod/io.hpp"
#include "thetaprod/suites.hpp"
#include "thetaprod/theta.hpp"
#include "thetaprod/theta_algebra.hpp"

struct tp_lattice {
  thp::EvenLattice lattice;
};

struct tp_context {
  thp::ContextSpec spec;
  thp::AlgebraContext ctx;
};

struct tp_form {
  thp::LabeledForm lf;
};

namespace {

thread_local std::string last_error;

tp_status from_errc(thp::Errc c) {
  switch (c) {
    case thp::Errc::precondition: return TP_ERR_PRECONDITION;
    case thp::Errc::truncation: return TP_ERR_TRUNCATION;
    case thp::Errc::mismatch: return TP_ERR_MISMATCH;
    case thp::Errc::not_found: return TP_ERR_NOT_FOUND;
    case thp::Errc::internal: return TP_ERR_INTERNAL;
  }
  return TP_ERR_INTERNAL;
}

template <class F>
tp_status guard(F&& body) {
  try {
    body();
    last_error.clear();
    return TP_OK;
  } catch (const thp::Error& e) {
    last_error = e.what();
    if (last_error.rfind("schema:", 0) == 0) return TP_ERR_SCHEMA;
    return from_errc(e.code());
  } catch (const nlohmann::json::exception& e) {
    last_error = std::string("schema: ") + e.what();
    return TP_ERR_SCHEMA;
  } catch (const std::exception& e) {
    last_error = e.what();
    return TP_ERR_INTERNAL;
  }
}

char* dup(const std::string& s) {
  char* p = static_cast<char*>(std::malloc(s.size() + 1));
  if (!p) throw std::bad_alloc();
  std::memcpy(p, s.c_str(), s.size() + 1);
  return p;
}

void need(const void* p, const char* what) {
  if (!p) thp::fail(thp::Errc::precondition, std::string("null argument: ") + what);
}

void same_lattice(const tp_context* c, const tp_form* f) {
  if (!(c->spec.lattice == f->lf.lattice)) thp::fail(thp::Errc::mismatch, "form and context live on different lattices");
}

tp_form* wrap(const thp::EvenLattice& l, thp::QSeries q) { return new tp_form{thp::LabeledForm{l, std::move(q)}}; }

thp::Json fqm_json_with_sig(const thp::Fqm& a) {
  thp::Json j = thp::fqm_to_json(a);
  j["milgram_signature"] = thp::milgram_signature(a);
  return j;
}

}  // namespace

extern "C" {

const char* tp_last_error(void) { return last_error.c_str(); }

const char* tp_status_name(tp_status s) {
  switch (s) {
    case TP_OK: return "ok";
    case TP_ERR_PRECONDITION: return "precondition";
    case TP_ERR_TRUNCATION: return "truncation";
    case TP_ERR_MISMATCH: return "mismatch";
    case TP_ERR_NOT_FOUND: return "not_found";
    case TP_ERR_INTERNAL: return "internal";
    case TP_ERR_SCHEMA: return "schema";
    case TP_ERR_ARGUMENT: return "argument";
  }
  return "unknown";
}

void tp_string_free(char* s) { std::free(s); }

tp_status tp_lattice_parse(const char* json, tp_lattice** out) {
  return guard([&] {
    need(json, "json");
    need(out, "out");
    *out = new tp_lattice{thp::lattice_from_json(thp::parse_json(json))};
  });
}

void tp_lattice_free(tp_lattice* l) { delete l; }

tp_status tp_lattice_disc(const tp_lattice* l, char** json_out) {
  return guard([&] {
    need(l, "lattice");
    need(json_out, "json_out");
    thp::DiscriminantForm d(l->lattice);
    auto [p, q] = thp::signature(l->lattice);
    thp::Json j{{"lattice", thp::lattice_to_json(l->lattice)},
                {"fqm", fqm_json_with_sig(d.fqm())},
                {"signature", {p, q}}};
    *json_out = dup(thp::dump(j));
  });
}

tp_status tp_lattice_theta(const tp_lattice* l, const char* trunc, char** json_out) {
  return guard([&] {
    need(l, "lattice");
    need(trunc, "trunc");
    need(json_out, "json_out");
    thp::QSeries th = thp::theta_series(l->lattice, thp::parse_rat(trunc));
    *json_out = dup(thp::dump(thp::form_to_json(l->lattice, th)));
  });
}

tp_status tp_context_parse(const char* json, tp_context** out) {
  return guard([&] {
    need(json, "json");
    need(out, "out");
    thp::ContextSpec spec = thp::context_spec_from_json(thp::parse_json(json));
    thp::AlgebraContext ctx = thp::AlgebraContext::build(spec.lattice, spec.isotropic);
    *out = new tp_context{spec, ctx};
  });
}

void tp_context_free(tp_context* c) { delete c; }

tp_status tp_context_describe(const tp_context* c, char** json_out) {
  return guard([&] {
    need(c, "context");
    need(json_out, "json_out");
    const thp::AlgebraContext& x = c->ctx;
    const thp::FqmLinMap& down = x.down_lk();
    thp::Json dj = thp::Json::array();
    for (long i = 0; i < down.source().size(); ++i)
      for (const auto& [t, v] : down.column(i))
        dj.push_back({{"from", down.source().elem(i)}, {"to", down.target().elem(t)}, {"val", thp::rat_to_json(v)}});
    thp::Json j{{"context", thp::context_spec_to_json(c->spec)},
                {"K", thp::lattice_to_json(x.k())},
                {"Kplus", thp::lattice_to_json(x.kplus())},
                {"J_size", x.j().size()},
                {"index_Istar_I", x.index_istar_i()},
                {"weight", thp::rat_to_json(x.weight())},
                {"A_L", fqm_json_with_sig(x.disc_l().fqm())},
                {"A_K", fqm_json_with_sig(x.disc_k().fqm())},
                {"down", dj}};
    *json_out = dup(thp::dump(j));
  });
}

tp_status tp_form_parse(const char* json, tp_form** out) {
  return guard([&] {
    need(json, "json");
    need(out, "out");
    *out = new tp_form{thp::form_from_json(thp::parse_json(json))};
  });
}

void tp_form_free(tp_form* f) { delete f; }

tp_status tp_form_serialize(const tp_form* f, char** json_out) {
  return guard([&] {
    need(f, "form");
    need(json_out, "json_out");
    *json_out = dup(thp::dump(thp::form_to_json(f->lf.lattice, f->lf.form)));
  });
}

tp_status tp_form_coeff(const tp_form* f, const long* elem, size_t n, const char* exp, char** val_out) {
  return guard([&] {
    need(f, "form");
    need(exp, "exp");
    need(val_out, "val_out");
    const thp::Fqm& a = f->lf.form.fqm();
    if (n != a.ngens()) thp::fail(thp::Errc::precondition, "element has the wrong length");
    std::vector<long> raw(elem, elem + n);
    *val_out = dup(thp::to_string(f->lf.form.coeff(a.reduce(raw), thp::parse_rat(exp))));
  });
}

tp_status tp_xi(const tp_context* c, const tp_form* f, tp_form** out) {
  return guard([&] {
    need(c, "context");
    need(f, "form");
    need(out, "out");
    same_lattice(c, f);
    *out = wrap(thp::EvenLattice(), thp::xi(c->ctx, f->lf.form));
  });
}

tp_status tp_star(const tp_context* c, const tp_form* f, const tp_form* g, tp_form** out) {
  return guard([&] {
    need(c, "context");
    need(f, "f");
    need(g, "g");
    need(out, "out");
    same_lattice(c, f);
    same_lattice(c, g);
    *out = wrap(c->spec.lattice, thp::star(c->ctx, f->lf.form, g->lf.form));
  });
}

tp_status tp_bracket(const tp_context* c, const tp_form* f, const tp_form* g, tp_form** out) {
  return guard([&] {
    need(c, "context");
    need(f, "f");
    need(g, "g");
    need(out, "out");
    same_lattice(c, f);
    same_lattice(c, g);
    *out = wrap(c->spec.lattice, thp::bracket(c->ctx, f->lf.form, g->lf.form));
  });
}

tp_status tp_quasi_pullback(const tp_context* c, const char* sub_json, const tp_form* f, tp_form** out) {
  return guard([&] {
    need(c, "context");
    need(sub_json, "sub_json");
    need(f, "form");
    need(out, "out");
    same_lattice(c, f);
    thp::Json j = thp::parse_json(sub_json);
    if (!j.is_object() || !j.contains("basis")) thp::fail(thp::Errc::precondition, "schema: missing field 'basis'");
    thp::IntMatrix b = thp::int_matrix_from_json(j.at("basis"), c->spec.lattice.rank());
    thp::EvenLattice lp = thp::sublattice_lattice(c->spec.lattice, b);
    *out = wrap(lp, thp::quasi_pullback(f->lf.form, c->ctx.disc_l(), b));
  });
}

tp_status tp_solve(const tp_context* c, const char* target_json, const tp_form* const* gens, size_t n, char** json_out) {
  return guard([&] {
    need(c, "context");
    need(target_json, "target_json");
    need(json_out, "json_out");
    if (n > 0) need(gens, "gens");
    thp::LabeledPrincipalPart t = thp::principal_part_from_json(thp::parse_json(target_json));
    if (!(t.lattice == c->spec.lattice)) thp::fail(thp::Errc::mismatch, "target and context live on different lattices");
    std::vector<thp::QSeries> gs;
    for (size_t i = 0; i < n; ++i) {
      need(gens[i], "generator");
      same_lattice(c, gens[i]);
      gs.push_back(gens[i]->lf.form);
    }
    thp::SolveResult r = thp::solve_principal_part(gs, t.pp);
    thp::Json poly = thp::Json::array();
    for (const auto& p : r.poly) {
      thp::Json row = thp::Json::array();
      for (const auto& x : p) row.push_back(thp::rat_to_json(x));
      poly.push_back(row);
    }
    *json_out = dup(thp::dump(thp::Json{{"form", thp::form_to_json(c->spec.lattice, r.form)}, {"poly", poly}}));
  });
}

tp_status tp_is_left_unit(const tp_context* c, const tp_form* f, int* result) {
  return guard([&] {
    need(c, "context");
    need(f, "form");
    need(result, "result");
    same_lattice(c, f);
    *result = thp::is_left_unit(c->ctx, f->lf.form) ? 1 : 0;
  });
}

tp_status tp_in_theta_perp(const tp_context* c, const tp_form* f, int* result) {
  return guard([&] {
    need(c, "context");
    need(f, "form");
    need(result, "result");
    same_lattice(c, f);
    *result = thp::in_theta_perp(c->ctx, f->lf.form) ? 1 : 0;
  });
}

tp_status tp_catalog_names(char** json_out) {
  return guard([&] {
    need(json_out, "json_out");
    *json_out = dup(thp::dump(thp::Json(thp::catalog_names())));
  });
}

tp_status tp_catalog(const char* name, const char* trunc, char** json_out) {
  return guard([&] {
    need(name, "name");
    need(trunc, "trunc");
    need(json_out, "json_out");
    *json_out = dup(thp::dump(thp::catalog_entry(name, thp::parse_rat(trunc))));
  });
}

tp_status tp_suite_names(char** json_out) {
  return guard([&] {
    need(json_out, "json_out");
    *json_out = dup(thp::dump(thp::Json(thp::suite_names())));
  });
}

tp_status tp_check_suite(const char* name, int* passed, char** report_json) {
  return guard([&] {
    need(name, "name");
    need(passed, "passed");
    need(report_json, "report_json");
    thp::SuiteResult r = thp::run_suite(name);
    *passed = r.ok ? 1 : 0;
    *report_json = dup(thp::dump(thp::Json{{"name", r.name}, {"ok", r.ok}, {"cases", r.cases}, {"failures", r.failures}}));
  });
}

}  // extern "C"
