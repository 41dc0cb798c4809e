/*
 * Copyright 2026 The gapcover Authors
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
#ifndef GAPCOVER_GAPCOVER_H
#define GAPCOVER_GAPCOVER_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define GC_API __declspec(dllexport)
#else
#define GC_API __attribute__((visibility("default")))
#endif

typedef enum gc_status {
  GC_OK = 0,
  GC_INVALID_ARGUMENT = 1,
  GC_PARSE = 2,
  GC_BUDGET_EXCEEDED = 3,
  GC_RETRIES_EXHAUSTED = 4,
  GC_IO = 5,
  GC_SCHEMA = 6,
  GC_INTERNAL = 7
} gc_status;

/* Opaque artifact: a formula, game, set system, projection game, instance
   or report, held in its JSON-lines form. */
typedef struct gc_artifact gc_artifact;

/* Message for the last non-OK status on this thread; never NULL. */
GC_API const char* gc_last_error(void);
GC_API const char* gc_version(void);

/* Strings returned through char** outputs are owned by the caller. */
GC_API void gc_string_free(char* s);
GC_API void gc_artifact_free(gc_artifact* artifact);

GC_API gc_status gc_artifact_load(const char* path, gc_artifact** out);
GC_API gc_status gc_artifact_parse(const char* text, gc_artifact** out);
GC_API gc_status gc_artifact_save(const gc_artifact* artifact, const char* path);
GC_API gc_status gc_artifact_serialize(const gc_artifact* artifact, char** out);
GC_API gc_status gc_artifact_kind(const gc_artifact* artifact, char** out);

/* *ok is 1 when the artifact passes its kind's verifier. */
GC_API gc_status gc_artifact_verify(const gc_artifact* artifact, int* ok, char** message);

GC_API gc_status gc_gen_formula(uint32_t num_vars, uint64_t seed, gc_artifact** out);
GC_API gc_status gc_formula_from_dimacs(const char* text, gc_artifact** out);
GC_API gc_status gc_formula_to_dimacs(const gc_artifact* formula, int with_seed, uint64_t seed, char** out);

/* params_json: a JSON object; see the README for the recognised keys.
   formula may be NULL for projection games. */
GC_API gc_status gc_build_game(const gc_artifact* formula, const char* params_json, uint64_t seed,
                               gc_artifact** out);
GC_API gc_status gc_build_gadget(const char* params_json, uint64_t seed, gc_artifact** out);

/* gadget may be NULL for the feige reduction. witness_json receives a cover
   document or NULL when no completeness witness is known. */
GC_API gc_status gc_reduce(const gc_artifact* game, const gc_artifact* gadget, const char* params_json,
                           uint64_t seed, gc_artifact** instance, char** witness_json);

/* method: "greedy" or "exact"; node_budget 0 selects the default. *optimal
   is 0 when the exact search ran out of budget. */
GC_API gc_status gc_solve(const gc_artifact* instance, const char* method, uint64_t node_budget,
                          char** cover_json, int* optimal);

/* *ok is 1 iff the cover covers the universe; *first_uncovered is set
   otherwise. */
GC_API gc_status gc_verify_cover(const gc_artifact* instance, const char* cover_json, int* ok,
                                 uint32_t* first_uncovered);

/* One CSV report row (with header) for the instance. witness_json may be
   NULL. */
GC_API gc_status gc_report(const gc_artifact* instance, const char* witness_json, int satisfiable_side,
                           int greedy_only, uint64_t seed, char** csv);

/* Runs a pipeline config; *completeness_ok is 1 iff every completeness
   assertion held. csv_path receives the written report path. */
GC_API gc_status gc_run_pipeline(const char* config_json, int* completeness_ok, char** csv_path);

#ifdef __cplusplus
}
#endif

#endif
