/* C interface to the avgent library. All strings are UTF-8 and NUL-terminated.
 * Strings returned through handles stay valid until the handle is freed. */
#ifndef AVGENT_H
#define AVGENT_H

#include <stddef.h>
#include <stdint.h>

#if defined(AVGENT_BUILDING)
#define AVGENT_API __attribute__((visibility("default")))
#else
#define AVGENT_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum avgent_status {
    AVGENT_OK = 0,
    AVGENT_ERR_INVALID = 1,   /* malformed input, unknown name, bad selector */
    AVGENT_ERR_DOMAIN = 2,    /* well-formed input outside a formula's domain */
    AVGENT_ERR_CAP = 3,       /* resource cap refused the request */
    AVGENT_ERR_IO = 4,
    AVGENT_ERR_PRECISION = 5, /* a numerical self-check failed */
    AVGENT_ERR_INTERNAL = 6
} avgent_status;

AVGENT_API const char* avgent_version(void);

/* Message for the most recent failing call on this thread; "" if none. */
AVGENT_API const char* avgent_last_error(void);

/* ---- analytic closed forms ---------------------------------------------- */

typedef struct avgent_analytic_request {
    const char* quantity;
    const char* dims; /* "2x3x5"; may be NULL for quantities that take only m */
    const char* keep; /* selector "0,2" or NULL */
    const char* a;
    const char* b;
    uint64_t m;
    int has_m;
    unsigned digits;
} avgent_analytic_request;

typedef struct avgent_rows avgent_rows;

AVGENT_API avgent_status avgent_analytic_eval(const avgent_analytic_request* request, avgent_rows** out);
AVGENT_API size_t avgent_rows_count(const avgent_rows* rows);
AVGENT_API const char* avgent_rows_label(const avgent_rows* rows, size_t i);
/* "p/q" or NULL when the value is not rational. */
AVGENT_API const char* avgent_rows_exact(const avgent_rows* rows, size_t i);
AVGENT_API const char* avgent_rows_decimal(const avgent_rows* rows, size_t i);
AVGENT_API int avgent_rows_approximation(const avgent_rows* rows, size_t i);
/* Stated slack in nats for approximations, else NULL. */
AVGENT_API const char* avgent_rows_slack(const avgent_rows* rows, size_t i);
AVGENT_API void avgent_rows_free(avgent_rows* rows);

/* JSON array of {name, operation, usage}. Static storage. */
AVGENT_API const char* avgent_analytic_quantities_json(void);

/* ---- Monte Carlo ---------------------------------------------------------- */

typedef struct avgent_mc_request {
    const char* dims;
    const char* quantity; /* entropy, purity, tangle, concurrence, negativity, renyi, tsallis, mutual-info */
    const char* keep;     /* single-collection quantities */
    const char* a;        /* mutual-info */
    const char* b;
    double q;             /* renyi / tsallis index */
    uint64_t samples;
    uint64_t seed;
    unsigned workers;     /* 0 = hardware concurrency; never changes the result */
} avgent_mc_request;

typedef struct avgent_mc_result {
    double mean;
    double std_error;
    uint64_t samples;
    uint64_t seed;
    int has_oracle;       /* exact average available */
    double oracle;
    int has_upper_bound;  /* analytic upper bound available (concurrence) */
    double upper_bound;
    char descriptor[256];
} avgent_mc_result;

AVGENT_API avgent_status avgent_mc_estimate(const avgent_mc_request* request, avgent_mc_result* out);

/* ---- verification campaigns ---------------------------------------------- */

typedef struct avgent_verify_config {
    uint64_t m_max;
    uint64_t big_m_max;
    uint64_t n_max;
    uint64_t na_max;
    uint64_t nb_max;
    uint64_t nc_max;
    unsigned k_max;
    uint64_t seed;
    unsigned workers;
} avgent_verify_config;

typedef struct avgent_reports avgent_reports;

AVGENT_API void avgent_verify_default_config(avgent_verify_config* config);
/* JSON array of accepted check names. Static storage. */
AVGENT_API const char* avgent_verify_check_names_json(void);
AVGENT_API avgent_status avgent_verify_run(const char* check, const avgent_verify_config* config, avgent_reports** out);
AVGENT_API size_t avgent_reports_count(const avgent_reports* reports);
AVGENT_API const char* avgent_reports_name(const avgent_reports* reports, size_t i);
AVGENT_API int avgent_reports_passed(const avgent_reports* reports, size_t i);
AVGENT_API const char* avgent_reports_json(const avgent_reports* reports);
AVGENT_API void avgent_reports_free(avgent_reports* reports);

/* ---- convergence sweeps ---------------------------------------------------- */

typedef struct avgent_table avgent_table;

AVGENT_API avgent_status avgent_sweep_entropy(uint64_t m, unsigned k_max, unsigned digits, avgent_table** out);
AVGENT_API avgent_status avgent_sweep_tangle(uint64_t m, unsigned k_max, unsigned digits, avgent_table** out);
AVGENT_API avgent_status avgent_sweep_mutual_info(uint64_t na, uint64_t nb, uint64_t nc_max, unsigned digits,
                                                  avgent_table** out);
/* format: "table", "csv" or "json". Returns NULL for an unknown format. */
AVGENT_API const char* avgent_table_render(avgent_table* table, const char* format);
AVGENT_API void avgent_table_free(avgent_table* table);

/* ---- archive and claims ledger -------------------------------------------- */

/* Appends one record line; the three arguments must be JSON texts (extra must be an object or NULL). */
AVGENT_API avgent_status avgent_archive_append(const char* path, const char* config_json, const char* result_json,
                                               const char* extra_json);

AVGENT_API const char* avgent_claims_markdown(void);
AVGENT_API const char* avgent_claims_json(void);

#ifdef __cplusplus
}
#endif

#endif
