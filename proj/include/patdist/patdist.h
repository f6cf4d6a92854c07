/* Copyright 2026 The patdist Authors
 * SPDX-License-Identifier: Apache-2.0
 *
 * C interface to libpatdist: exact distributions of text-character accesses
 * of window-based pattern matchers (Horspool, B(N)DM, BOM) on random texts.
 *
 * Every fallible function returns a pd_status. On failure, pd_last_error()
 * returns a message for the calling thread. Objects are opaque handles that
 * must be released with their pd_*_free function. Strings returned through
 * char** out-parameters are released with pd_string_free.
 */

#ifndef PATDIST_PATDIST_H
#define PATDIST_PATDIST_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(PATDIST_BUILDING_LIBRARY)
#    define PD_API __declspec(dllexport)
#  else
#    define PD_API __declspec(dllimport)
#  endif
#else
#  define PD_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum pd_status {
  PD_OK = 0,
  PD_ERR_INVALID_ARGUMENT = 1,
  PD_ERR_SUM_NOT_ONE = 2,
  PD_ERR_ALPHABET_MISMATCH = 3,
  PD_ERR_STATE_CAP = 4,
  PD_ERR_IO = 5,
  PD_ERR_PARSE = 6,
  PD_ERR_INTERNAL = 7
} pd_status;

typedef enum pd_algorithm {
  PD_ALGO_HORSPOOL = 0,
  PD_ALGO_BDM = 1, /* B(N)DM */
  PD_ALGO_BOM = 2,
  PD_ALGO_KMP = 3  /* only meaningful for pd_dist_kmp */
} pd_algorithm;

typedef struct pd_model pd_model;
typedef struct pd_analysis pd_analysis;
typedef struct pd_daa pd_daa;
typedef struct pd_dist pd_dist;

PD_API const char* pd_last_error(void);
PD_API const char* pd_status_name(pd_status status);
PD_API void pd_string_free(char* s);
/* Cap used wherever a state_cap argument is 0: 5,000,000 unless the
 * PATDIST_STATE_CAP environment variable is set. */
PD_API uint64_t pd_default_state_cap(void);

/* "horspool", "bdm", "bndm", "b(n)dm", "bom", "kmp" (case-insensitive). */
PD_API pd_status pd_algorithm_parse(const char* name, pd_algorithm* out);
PD_API const char* pd_algorithm_name(pd_algorithm algorithm);

/* ---- text models ------------------------------------------------------ */

/* spec: "uniform" or "A=0.3,C=0.2,G=0.2,T=0.3". */
PD_API pd_status pd_model_iid(const char* alphabet, const char* spec, pd_model** out);
PD_API pd_status pd_model_from_json(const char* json_text, pd_model** out);
PD_API pd_status pd_model_load(const char* path, pd_model** out);
PD_API pd_status pd_markov_from_json(const char* json_text, pd_model** out);
PD_API pd_status pd_markov_load(const char* path, pd_model** out);
PD_API void pd_model_free(pd_model* model);
PD_API const char* pd_model_alphabet(const pd_model* model);
PD_API const char* pd_model_label(const pd_model* model);
PD_API size_t pd_model_context_count(const pd_model* model);
PD_API int pd_model_is_deterministic_context(const pd_model* model);
/* Newline-separated warnings produced while loading (may be empty). */
PD_API pd_status pd_model_warnings(const pd_model* model, char** out);
PD_API pd_status pd_model_string_probability(const pd_model* model, const char* text,
                                             double* out);
/* Diagnostics for a JSON model file without constructing it. *ok is 1 when
 * the model is usable. */
PD_API pd_status pd_model_validate_json(const char* json_text, int* ok, char** report);

/* ---- window analyses and matchers ------------------------------------ */

PD_API pd_status pd_analysis_new(pd_algorithm algorithm, const char* pattern,
                                 const char* alphabet, pd_analysis** out);
PD_API void pd_analysis_free(pd_analysis* analysis);
PD_API pd_status pd_analysis_window(const pd_analysis* analysis, const char* window,
                                    int* cost, int* shift);
PD_API pd_status pd_analysis_run(const pd_analysis* analysis, const char* text,
                                 uint64_t* occurrences, uint64_t* cost);

/* ---- deterministic arithmetic automata ------------------------------- */

PD_API pd_status pd_daa_build(const pd_analysis* analysis, uint64_t state_cap,
                              pd_daa** out);
PD_API pd_status pd_daa_minimize(const pd_daa* daa, pd_daa** out);
PD_API pd_status pd_daa_difference(const pd_daa* a, const pd_daa* b, uint64_t state_cap,
                                   pd_daa** out);
PD_API void pd_daa_free(pd_daa* daa);
PD_API size_t pd_daa_state_count(const pd_daa* daa);
PD_API pd_status pd_daa_value(const pd_daa* daa, const char* text, int64_t* out);
PD_API pd_status pd_daa_dump(const pd_daa* daa, char** out);

/* ---- distributions ---------------------------------------------------- */

typedef struct pd_build_info {
  uint64_t raw_states;        /* reachable states before minimization */
  uint64_t minimized_states;
  uint64_t full_space;        /* |alphabet|^m (m+1) */
  uint64_t paa_states;
} pd_build_info;

typedef struct pd_difference_info {
  double p_less;
  double p_equal;
  double p_greater;
  uint64_t minimized_a;
  uint64_t minimized_b;
  uint64_t product_states;
  uint64_t minimized_product;
  uint64_t paa_states;
} pd_difference_info;

typedef struct pd_stats {
  double mean;
  double variance;
  int64_t min;
  int64_t max;
  int64_t q05, q25, median, q75, q95;
} pd_stats;

/* Law of the DAA value on random texts of length n. */
PD_API pd_status pd_dist_from_daa(const pd_daa* daa, const pd_model* model, int64_t n,
                                  pd_dist** out);
/* Full cost pipeline for one algorithm; info may be NULL. */
PD_API pd_status pd_dist_cost(pd_algorithm algorithm, const char* pattern,
                              const pd_model* model, int64_t n, uint64_t state_cap,
                              pd_dist** out, pd_build_info* info);
/* Law of cost_a - cost_b; info may be NULL. */
PD_API pd_status pd_dist_difference(pd_algorithm a, pd_algorithm b, const char* pattern,
                                    const pd_model* model, int64_t n, uint64_t state_cap,
                                    pd_dist** out, pd_difference_info* info);
PD_API pd_status pd_dist_kmp(int64_t n, pd_dist** out);
/* Empirical law from Monte-Carlo sampling; mean/stderr may be NULL. */
PD_API pd_status pd_dist_simulate(const pd_analysis* analysis, const pd_model* model,
                                  int64_t n, uint64_t samples, uint64_t seed,
                                  pd_dist** out, double* mean, double* standard_error);
PD_API pd_status pd_dist_from_csv(const char* csv_text, pd_dist** out);
PD_API void pd_dist_free(pd_dist* dist);

PD_API size_t pd_dist_size(const pd_dist* dist);
PD_API pd_status pd_dist_entry(const pd_dist* dist, size_t index, int64_t* value,
                               double* probability);
PD_API double pd_dist_probability(const pd_dist* dist, int64_t value);
PD_API double pd_dist_total_mass(const pd_dist* dist);
PD_API pd_status pd_dist_stats(const pd_dist* dist, pd_stats* out);
PD_API pd_status pd_dist_quantile(const pd_dist* dist, double q, int64_t* out);
PD_API pd_status pd_dist_to_csv(const pd_dist* dist, char** out);
PD_API pd_status pd_dist_to_json(const pd_dist* dist, char** out);

/* Exact-rational recomputation (n <= 20, <= 200 product states). */
PD_API pd_status pd_certify(const pd_daa* daa, const pd_model* model, int64_t n,
                            double* max_abs_deviation);

/* ---- experiments ------------------------------------------------------ */

typedef struct pd_sweep_row {
  pd_algorithm algorithm;
  uint64_t patterns;
  uint64_t min_states;
  uint64_t max_states;
  double average_states;
  uint64_t full_space;
  int complete; /* 0 if some pattern breached the state cap */
} pd_sweep_row;

/* Minimized cost-DAA sizes over all |alphabet|^m patterns. */
PD_API pd_status pd_sweep(const char* alphabet, int m, pd_algorithm algorithm,
                          uint64_t state_cap, unsigned threads, pd_sweep_row* out);

typedef struct pd_verify_report {
  int passed;
  double max_deviation;
  uint64_t distribution_checks;
  uint64_t value_checks;
  char counterexample[512];
} pd_verify_report;

PD_API pd_status pd_verify(const char* alphabet, int max_m, int max_n,
                           int difference_mode, unsigned threads,
                           pd_verify_report* out);

#ifdef __cplusplus
}
#endif

#endif /* PATDIST_PATDIST_H */
