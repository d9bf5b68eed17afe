/*
 * Copyright 2026 The nestrec Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/*
 * C interface to libnestrec.
 *
 * Every fallible call returns an nr_status. On failure the out-parameters are
 * left untouched and nr_last_error() describes the problem; the message is
 * thread-local and valid until the next failing call on the same thread.
 * Objects are opaque handles released with their matching *_free function.
 * Strings handed out through char** parameters are owned by the caller and
 * released with nr_string_free.
 */

#ifndef NESTREC_NESTREC_H_
#define NESTREC_NESTREC_H_

#include <stddef.h>
#include <stdint.h>

#if defined(NESTREC_BUILDING_LIBRARY)
#define NR_API __attribute__((visibility("default")))
#else
#define NR_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum nr_status {
  NR_OK = 0,
  NR_ERR_ARGUMENT = 1,
  NR_ERR_OVERFLOW = 2,
  NR_ERR_VALIDATION = 3,
  NR_ERR_NO_TREE = 4,
  NR_ERR_PRECONDITION = 5,
  NR_ERR_PARSE = 6,
  NR_ERR_IO = 7,
  NR_ERR_INTERNAL = 8
} nr_status;

typedef enum nr_verdict {
  NR_VERDICT_OK = 0,
  NR_VERDICT_EXPLORATORY = 1,
  NR_VERDICT_VIOLATION = 2
} nr_verdict;

typedef enum nr_death_reason {
  NR_ALIVE = 0,
  NR_DEATH_INNER_NONPOSITIVE = 1,
  NR_DEATH_OUTER_NONPOSITIVE = 2,
  NR_DEATH_OUTER_NOT_YET_DEFINED = 3
} nr_death_reason;

typedef struct nr_family nr_family;
typedef struct nr_recursion nr_recursion;
typedef struct nr_tree nr_tree;
typedef struct nr_sequence nr_sequence;

NR_API const char* nr_version(void);
NR_API const char* nr_last_error(void);
NR_API const char* nr_status_name(nr_status status);
NR_API const char* nr_death_reason_name(nr_death_reason reason);
NR_API void nr_string_free(char* s);

/* ---- sequences -------------------------------------------------------- */

NR_API nr_status nr_sequence_create(const int64_t* values, size_t length,
                                    nr_sequence** out);
NR_API void nr_sequence_free(nr_sequence* seq);
NR_API size_t nr_sequence_length(const nr_sequence* seq);
/* Borrowed pointer to the terms; valid while seq lives. */
NR_API const int64_t* nr_sequence_data(const nr_sequence* seq);
/* *first_violation is the 1-based offending index, 0 when slow. */
NR_API nr_status nr_sequence_is_slow(const nr_sequence* seq, int* slow,
                                     int64_t* first_violation);
/* format: "table", "csv", "json" or "bfile". */
NR_API nr_status nr_sequence_format(const nr_sequence* seq,
                                    const char* format, char** out);
/* "v,phi" rows of the empirical frequency; the last value is left out. */
NR_API nr_status nr_sequence_frequency_csv(const nr_sequence* seq, char** out);

/* ---- families --------------------------------------------------------- */

/* {"family":"order_one","s":1,"j":3,"m":1} */
NR_API nr_status nr_family_parse(const char* json, nr_family** out);
NR_API void nr_family_free(nr_family* family);
/* Canonical JSON of the family. */
NR_API nr_status nr_family_to_json(const nr_family* family, char** out);
/* *detail may be NULL; otherwise it receives the violated bound or "". */
NR_API nr_status nr_family_validate(const nr_family* family,
                                    nr_verdict* verdict, char** detail);
NR_API nr_status nr_family_recursion(const nr_family* family,
                                     int allow_out_of_range,
                                     nr_recursion** out);
NR_API nr_status nr_family_tree(const nr_family* family, nr_tree** out);
NR_API nr_status nr_family_ic_length(const nr_family* family, int64_t* out);
/* Tree initial conditions when the family has a tree; otherwise, with
 * allow_probe_seed set, those of the nearest well-defined tree. *probe is set
 * to 1 in the latter case. */
NR_API nr_status nr_family_initial_conditions(const nr_family* family,
                                              int allow_probe_seed,
                                              nr_sequence** out, int* probe);

/* ---- recursions ------------------------------------------------------- */

/* {"arity":k,"order":p,"a":[...],"b":[[...],...],"ic":[...]}; ic may be
 * NULL, and receives NULL when the document has no "ic". */
NR_API nr_status nr_recursion_parse(const char* json, nr_recursion** out,
                                    nr_sequence** ic);
NR_API void nr_recursion_free(nr_recursion* rec);
NR_API nr_status nr_recursion_to_json(const nr_recursion* rec, char** out);
/* Human-readable "R(n) = R(n - R(n - 1)) + ..." form. */
NR_API nr_status nr_recursion_describe(const nr_recursion* rec, char** out);

/* Runs rec forward to n_max. *values gets R(1..N), cut at the death index
 * if the recursion dies; *death_index is 0 while alive. */
NR_API nr_status nr_evaluate(const nr_recursion* rec, const nr_sequence* ic,
                             int64_t n_max, nr_sequence** values,
                             int64_t* death_index,
                             nr_death_reason* death_reason);

/* ---- trees ------------------------------------------------------------ */

NR_API nr_status nr_tree_create(int64_t k, int64_t s, int64_t j,
                                int64_t per_cell, int64_t last_cell,
                                int64_t regular, nr_tree** out);
/* {"k":..,"s":..,"j":..,"per_cell":..,"last_cell":..,"regular":..} */
NR_API nr_status nr_tree_parse(const char* json, nr_tree** out);
NR_API void nr_tree_free(nr_tree* tree);
NR_API nr_status nr_tree_to_json(const nr_tree* tree, char** out);
NR_API nr_status nr_tree_cell_count(const nr_tree* tree, int64_t n,
                                    int64_t* out);
/* C_T(1..t). */
NR_API nr_status nr_tree_initial_conditions(const nr_tree* tree, int64_t t,
                                            nr_sequence** out);
NR_API nr_status nr_tree_closed_form(const nr_tree* tree, int64_t v,
                                     int64_t* out);
/* The materialized prefix T(n) as JSON, one object per node. */
NR_API nr_status nr_tree_prefix_json(const nr_tree* tree, int64_t n,
                                     char** out);
/* Empirical frequency of C_T(1..n) against the closed form on 1..v_max
 * (every completed value when v_max <= 0). */
NR_API nr_status nr_tree_frequency(const nr_tree* tree, int64_t n,
                                   int64_t v_max, int* agree,
                                   char** report_json);

/* ---- tasks ------------------------------------------------------------ */

/* Recursion against cell count up to n_max. NR_ERR_NO_TREE for
 * evaluate-only families. */
NR_API nr_status nr_verify(const nr_family* family, int64_t n_max,
                           int* agree, char** report_json);

/* Prunes T(n) and checks both the rebuilt-prefix identity and the first-child
 * correspondence; *holds is 1 only when both hold and the removal count
 * matches its formula. With enforce_precondition set, n below the family's
 * bound yields NR_ERR_PRECONDITION. */
NR_API nr_status nr_prune(const nr_family* family, int64_t n,
                          int enforce_precondition, int trace, int* holds,
                          char** report_json);
/* Smallest n the family's prune accepts. */
NR_API nr_status nr_prune_threshold(const nr_family* family, int64_t* out);

/* Runs an explore grid (see README) and returns the CSV atlas. threads = 0
 * uses the hardware concurrency. */
NR_API nr_status nr_explore(const char* grid_json, uint64_t seed,
                            unsigned threads, char** csv);

/* JSON array of {"id":..,"offset":..} for catalog entries containing seq. */
NR_API nr_status nr_oeis_match(const nr_sequence* seq,
                               const char* stripped_path, char** json);

#ifdef __cplusplus
}
#endif

#endif /* NESTREC_NESTREC_H_ */
