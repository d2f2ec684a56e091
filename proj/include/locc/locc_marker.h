/*
 * Copyright 2026 The locc-marker Authors
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
 * C interface of libloccmarker.
 *
 * Reports are returned as JSON strings owned by the caller and released with
 * locc_string_free. On a non-OK status the output pointer is left NULL, except
 * for locc_reproduce, which still delivers its report with LOCC_CLAIM_FAILED.
 * locc_last_error returns the message of the most recent failure on the
 * calling thread.
 */

#ifndef LOCC_MARKER_H
#define LOCC_MARKER_H

#include <stddef.h>
#include <stdint.h>

#if defined(LOCC_MARKER_BUILDING)
#define LOCC_API __attribute__((visibility("default")))
#else
#define LOCC_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef struct locc_ensemble locc_ensemble;

/* Values double as exit codes of the command-line tool. */
typedef enum locc_status {
  LOCC_OK = 0,
  LOCC_CLAIM_FAILED = 1,
  LOCC_INPUT_ERROR = 2,
  LOCC_CAP_EXCEEDED = 3,
  LOCC_UNDECIDABLE = 4,
  LOCC_NO_PROTOCOL = 5,
  LOCC_INTERNAL = 6
} locc_status;

typedef struct locc_config {
  double rank_rel_tol;
  double orth_tol;
  double identity_tol;
  uint64_t seed;
  int32_t restarts;
  uint64_t branch_cap;
} locc_config;

LOCC_API void locc_config_default(locc_config* cfg);
LOCC_API const char* locc_version(void);
LOCC_API const char* locc_last_error(void);
LOCC_API void locc_string_free(char* s);

/* param selects d for "yu"; pass 0 for the default. */
LOCC_API locc_status locc_ensemble_named(const char* name, int param, locc_ensemble** out);
LOCC_API locc_status locc_ensemble_parse(const char* json, const locc_config* cfg,
                                         locc_ensemble** out);
LOCC_API void locc_ensemble_free(locc_ensemble* e);
LOCC_API locc_status locc_ensemble_to_json(const locc_ensemble* e, char** out);
LOCC_API size_t locc_ensemble_size(const locc_ensemble* e);

LOCC_API locc_status locc_ensembles_list(char** out);

/* m <= 0 means "no marking analysis". */
LOCC_API locc_status locc_analyze(const locc_ensemble* e, int m, const locc_config* cfg,
                                  char** out);
LOCC_API locc_status locc_classify(const locc_ensemble* e, const locc_config* cfg, char** out);
/* target may be NULL (all members); method is "auto", "exact" or "heuristic" (NULL = auto). */
LOCC_API locc_status locc_detect(const locc_ensemble* e, const char* target, int m,
                                 const char* method, const locc_config* cfg, char** out);
/* mode is "strict01" or "any_anticorrelated" (NULL = any_anticorrelated). */
LOCC_API locc_status locc_mark(const locc_ensemble* e, int m, const char* mode,
                               int include_tree, const locc_config* cfg, char** out);
/* ids may contain "all". */
LOCC_API locc_status locc_reproduce(const char* const* ids, size_t count,
                                    const locc_config* cfg, char** out);

/* Renders a JSON report as indented text. */
LOCC_API locc_status locc_render_text(const char* json, char** out);

#ifdef __cplusplus
}
#endif

#endif /* LOCC_MARKER_H */
