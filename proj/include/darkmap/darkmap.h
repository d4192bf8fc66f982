/* darkmap.h — C API of the dark-state analysis library.
 *
 * All functions return a dm_status; every non-DM_OK return leaves a
 * human-readable message in dm_last_error() (thread local). Handles are
 * opaque and freed with their matching *_free function. Strings returned
 * through char** out-parameters are heap-allocated and released with
 * dm_string_free().
 */

#ifndef DARKMAP_H
#define DARKMAP_H

#include <stddef.h>

#if defined(_WIN32)
#define DM_API
#elif defined(DM_BUILDING_SHARED)
#define DM_API __attribute__((visibility("default")))
#else
#define DM_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum dm_status {
    DM_OK = 0,
    DM_ERR_SCHEMA = 1,     /* malformed document */
    DM_ERR_VALIDATION = 2, /* semantically invalid input */
    DM_ERR_NUMERIC = 3,    /* solver failure */
    DM_ERR_IO = 4,         /* file access */
    DM_ERR_ARGUMENT = 5    /* null handle or bad argument */
} dm_status;

typedef struct dm_system dm_system; /* parsed system description (+ optional partition,
                                       expected results for catalog entries) */
typedef struct dm_report dm_report; /* dark-state analysis, optionally verified */

typedef struct dm_tolerances {
    double degeneracy; /* relative eigenvalue clustering */
    double rank;       /* relative singular-value cutoff */
    double residual;   /* verification threshold */
} dm_tolerances;

DM_API const char* dm_version(void);
DM_API const char* dm_status_name(dm_status status);
DM_API const char* dm_last_error(void);
DM_API void dm_string_free(char* text);
DM_API void dm_tolerances_init(dm_tolerances* tol);

/* --- systems --- */

DM_API dm_status dm_system_parse(const char* json_utf8, dm_system** out);
DM_API dm_status dm_system_load(const char* path, dm_system** out);
DM_API void dm_system_free(dm_system* system);
DM_API int dm_system_levels(const dm_system* system);

/* Partition carried by the document or catalog entry; returns the count
 * written (0 when none). */
DM_API dm_status dm_system_upper_hint(const dm_system* system, int* ids, size_t capacity,
                                      size_t* out_count);

/* --- catalog --- */

/* params_json: JSON object of string values, e.g. {"N":"7","delta":"0.3"}.
 * NULL or "" means defaults. seed (when has_seed) drives randomized
 * couplings for entries that accept them. */
DM_API dm_status dm_catalog_build(const char* name, const char* params_json, int large_n,
                                  unsigned long long seed, int has_seed, dm_system** out);
DM_API dm_status dm_catalog_list(char** out_text);

/* --- analysis --- */

/* upper/n_upper override the document partition; pass NULL/0 to use it. */
DM_API dm_status dm_analyze(const dm_system* system, const int* upper, size_t n_upper,
                            const dm_tolerances* tol, dm_report** out);
DM_API void dm_report_free(dm_report* report);
DM_API int dm_report_total_dark(const dm_report* report);

/* Decoupling residuals, eigenstate residuals and a time-evolution leakage
 * scan. samples = 0 selects the default 64-point grid. */
DM_API dm_status dm_report_verify(dm_report* report, size_t samples);

/* 1 pass, 0 fail, -1 not verified yet. */
DM_API int dm_report_pass(const dm_report* report);

DM_API dm_status dm_report_to_json(const dm_report* report, int pretty, char** out_text);

/* Bipartite dressed-state graph in DOT syntax. */
DM_API dm_status dm_export_dot(const dm_system* system, const int* upper, size_t n_upper,
                               const dm_tolerances* tol, char** out_text);

/* Compare a report against the expected results carried by a catalog entry.
 * out_ok = 1 on match (or when the entry carries no expectation). */
DM_API dm_status dm_check_expected(const dm_system* system, const dm_report* report,
                                   double distance_tol, int* out_ok, char** out_message);

#ifdef __cplusplus
}
#endif

#endif /* DARKMAP_H */
