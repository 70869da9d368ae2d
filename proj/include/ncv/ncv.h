/*
 * ncv.h — C interface to the non-collapsing verification toolkit.
 *
 * The library is consumed through opaque handles and status codes; every
 * structured payload crosses the boundary as a JSON document. Strings
 * returned through `char**` out-parameters are heap-allocated and must be
 * released with ncv_string_free. On any failure the out-parameters are left
 * untouched and ncv_last_error() describes the problem for the calling
 * thread.
 */
#ifndef NCV_H
#define NCV_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ncv_status {
  NCV_OK = 0,
  NCV_ERROR = 1,          /* any failure without a more specific code */
  NCV_ERR_PARSE = 2,      /* malformed input document or unknown enum name */
  NCV_ERR_IO = 3,         /* reserved for callers; the library itself does no file I/O */
  NCV_ERR_INFEASIBLE = 4, /* constant selection found no feasible triple */
  NCV_ERR_TOO_LARGE = 5,  /* a desk-scale enumeration or dimension cap was exceeded */
  NCV_ERR_DIM_MISMATCH = 6,
  NCV_ERR_BAD_ARGUMENT = 7
} ncv_status;

typedef struct ncv_state ncv_state;       /* unit-norm complex amplitude vector */
typedef struct ncv_instance ncv_instance; /* constraint system with a promise label */
typedef struct ncv_params ncv_params;     /* resolved protocol constants and mixture */

/* message for the most recent failure on this thread; empty string if none */
const char* ncv_last_error(void);

void ncv_string_free(char* s);

/* ---- states: {"dim": d, "amps": [[re, im], ...]} ------------------------ */
ncv_status ncv_state_parse(const char* json, ncv_state** out);
ncv_status ncv_state_dump(const ncv_state* s, char** json_out);
ncv_status ncv_state_uniform(size_t dim, ncv_state** out);
ncv_status ncv_state_dim(const ncv_state* s, size_t* out);
void ncv_state_free(ncv_state* s);

/* ---- constraint-system instances ---------------------------------------- */
ncv_status ncv_instance_parse(const char* json, ncv_instance** out);
ncv_status ncv_instance_dump(const ncv_instance* inst, char** json_out);
/* label is "yes" or "no"; delta is ignored for yes instances */
ncv_status ncv_instance_generate(const char* label, uint32_t n_vars, uint32_t r, uint32_t q, double delta,
                                 uint64_t seed, ncv_instance** out);
ncv_status ncv_instance_csp_value(const ncv_instance* inst, double* out);
ncv_status ncv_instance_local_value(const ncv_instance* inst, double* out);
void ncv_instance_free(ncv_instance* inst);

/* ---- protocol parameters ------------------------------------------------ */
/* preset: "diagnostic" | "proof"; detector: "noncollapsing" | "nonneg" | "analytic" */
ncv_status ncv_params_preset(const char* preset, const char* detector, ncv_params** out);
ncv_status ncv_params_choose(uint32_t kappa, double xi, double c_yes, const char* detector, ncv_params** out);
ncv_status ncv_params_dump(const ncv_params* p, char** json_out);
void ncv_params_free(ncv_params* p);

/* ---- command-level experiment runners ----------------------------------- */
/*
 * verify config: {"instance": {...} | "generate": {"label","N","R","q","delta","seed"},
 *                 "witness": {...state...} (optional), "preset", "detector",
 *                 "samples", "seed"}
 * cases_csv receives the per-witness case-classification table
 * ("case,w_d,w_q,w_c,p_no,bound,holds"); pass NULL to skip it.
 */
ncv_status ncv_run_verify(const char* config_json, char** report_json, char** cases_csv);

/* region config: {"kappa","epsilon","delta","grid","scatter","scatter_r","seed"} */
ncv_status ncv_run_region(const char* config_json, char** csv_out, char** svg_out, char** report_json);

/* distinguish config: {"k","n","seed"} */
ncv_status ncv_run_distinguish(const char* config_json, char** report_json);

/* constants config: {"preset","kappa","xi","c_yes","detector"} */
ncv_status ncv_run_constants(const char* config_json, char** report_json);

/* optimize config: {"instance"|"generate", "preset","detector","restarts","seed"};
 * witness_json receives the best witness as a state document for replay */
ncv_status ncv_run_optimize(const char* config_json, char** report_json, char** witness_json);

#ifdef __cplusplus
}
#endif

#endif /* NCV_H */
