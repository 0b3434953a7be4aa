#ifndef THETAPROD_H
#define THETAPROD_H

/* C interface. All objects cross the boundary as JSON text (rationals as "p/q" strings)
   or as opaque handles. Strings returned through char** are owned by the caller and
   released with tp_string_free. On failure the out parameters are left untouched and
   tp_last_error() describes the problem for the calling thread. */

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(THP_BUILDING_CAPI)
#define TP_API __attribute__((visibility("default")))
#else
#define TP_API
#endif

typedef enum tp_status {
  TP_OK = 0,
  TP_ERR_PRECONDITION = 1,
  TP_ERR_TRUNCATION = 2,
  TP_ERR_MISMATCH = 3,
  TP_ERR_NOT_FOUND = 4,
  TP_ERR_INTERNAL = 5,
  TP_ERR_SCHEMA = 6,
  TP_ERR_ARGUMENT = 7
} tp_status;

typedef struct tp_lattice tp_lattice;
typedef struct tp_context tp_context;
typedef struct tp_form tp_form;

TP_API const char* tp_last_error(void);
TP_API const char* tp_status_name(tp_status s);
TP_API void tp_string_free(char* s);

/* {"gram": [[int]]} */
TP_API tp_status tp_lattice_parse(const char* json, tp_lattice** out);
TP_API void tp_lattice_free(tp_lattice* l);
/* discriminant form and Milgram signature */
TP_API tp_status tp_lattice_disc(const tp_lattice* l, char** json_out);
/* theta series of a positive-definite lattice, complete below trunc */
TP_API tp_status tp_lattice_theta(const tp_lattice* l, const char* trunc, char** json_out);

/* {"lattice": ..., "isotropic": {"basis": [[int]]}} */
TP_API tp_status tp_context_parse(const char* json, tp_context** out);
TP_API void tp_context_free(tp_context* c);
/* K, K+, J, the index of I in I*, the down map and the weight */
TP_API tp_status tp_context_describe(const tp_context* c, char** json_out);

/* {"lattice": ..., "weight": "p/q", "trunc": "p/q", "coeffs": [{"elem", "exp", "val"}]} */
TP_API tp_status tp_form_parse(const char* json, tp_form** out);
TP_API void tp_form_free(tp_form* f);
TP_API tp_status tp_form_serialize(const tp_form* f, char** json_out);
TP_API tp_status tp_form_coeff(const tp_form* f, const long* elem, size_t n, const char* exp, char** val_out);

TP_API tp_status tp_xi(const tp_context* c, const tp_form* f, tp_form** out);
TP_API tp_status tp_star(const tp_context* c, const tp_form* f, const tp_form* g, tp_form** out);
TP_API tp_status tp_bracket(const tp_context* c, const tp_form* f, const tp_form* g, tp_form** out);
/* sub_json: {"basis": [[int]]}, rows in the coordinates of the context lattice */
TP_API tp_status tp_quasi_pullback(const tp_context* c, const char* sub_json, const tp_form* f, tp_form** out);
/* target_json: principal part {"lattice", "terms": [{"elem", "exp", "val"}], "constant"?};
   result {"form": ..., "poly": [["p/q"]]} */
TP_API tp_status tp_solve(const tp_context* c, const char* target_json, const tp_form* const* gens, size_t n,
                          char** json_out);
/* 1 when xi(f) is a constant 1 (left unit), 0 otherwise */
TP_API tp_status tp_is_left_unit(const tp_context* c, const tp_form* f, int* result);
TP_API tp_status tp_in_theta_perp(const tp_context* c, const tp_form* f, int* result);

TP_API tp_status tp_catalog_names(char** json_out);
TP_API tp_status tp_catalog(const char* name, const char* trunc, char** json_out);

TP_API tp_status tp_suite_names(char** json_out);
/* passed is set to 1 or 0; report {"name", "ok", "cases", "failures": [string]} */
TP_API tp_status tp_check_suite(const char* name, int* passed, char** report_json);

#ifdef __cplusplus
}
#endif

#endif
