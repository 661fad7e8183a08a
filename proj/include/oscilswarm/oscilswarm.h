/*
 * oscilswarm C API.
 *
 * Every function returns an osw_status; on failure a message describing the
 * last error of the calling thread is available from osw_last_error().
 * Handles are opaque and owned by the caller, who releases them with the
 * matching *_destroy function. Output paths of "-" write to standard output.
 * After a non-OK status, any output file named in the call has undefined
 * contents.
 */
#ifndef OSCILSWARM_H
#define OSCILSWARM_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(OSCILSWARM_BUILDING)
#    define OSW_API __declspec(dllexport)
#  else
#    define OSW_API __declspec(dllimport)
#  endif
#else
#  define OSW_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum osw_status {
    OSW_OK = 0,
    OSW_ERR_INVALID_ARGUMENT = 1,
    OSW_ERR_UNKNOWN_FUNCTION = 2,
    OSW_ERR_UNKNOWN_OPTIMIZER = 3,
    OSW_ERR_UNKNOWN_PARAMETER = 4,
    OSW_ERR_DIMENSION_MISMATCH = 5,
    OSW_ERR_FIXED_DIMENSION = 6,
    OSW_ERR_INVALID_INTERVAL = 7,
    OSW_ERR_BUDGET_EXHAUSTED = 8,
    OSW_ERR_BUDGET_TOO_SMALL = 9,
    OSW_ERR_INVALID_BUDGET = 10,
    OSW_ERR_DEGENERATE_WEIGHTS = 11,
    OSW_ERR_INVALID_PHI = 12,
    OSW_ERR_POPULATION_TOO_SMALL = 13,
    OSW_ERR_EMPTY_INPUT = 14,
    OSW_ERR_PARSE = 15,
    OSW_ERR_SCHEMA_MISMATCH = 16,
    OSW_ERR_IO = 17,
    OSW_ERR_INTERNAL = 100
} osw_status;

typedef enum osw_table_format {
    OSW_TABLE_CSV = 0,
    OSW_TABLE_JSON = 1,
    OSW_TABLE_MARKDOWN = 2
} osw_table_format;

OSW_API const char* osw_version(void);
OSW_API const char* osw_status_name(osw_status status);
/* Message of the last failed call on this thread; "" if none. */
OSW_API const char* osw_last_error(void);

/* ---- benchmark functions ---------------------------------------------- */

typedef struct osw_function_info {
    const char* name; /* static storage */
    size_t dimension;
    int fixed_dimension;
    double lo;
    double hi;
    double f_min;
    uint64_t default_budget;
} osw_function_info;

OSW_API size_t osw_function_count(void);
OSW_API osw_status osw_function_info_at(size_t index, osw_function_info* out);
OSW_API osw_status osw_function_lookup(const char* name, osw_function_info* out);
/* dimension 0 selects the registered dimension. */
OSW_API osw_status osw_function_evaluate(const char* name, size_t dimension, const double* x,
                                         size_t n, double* value);

/* ---- optimizer configuration ------------------------------------------ */

typedef struct osw_optimizer osw_optimizer;

/* kind: "hopso", "pso" or "de". */
OSW_API osw_status osw_optimizer_create(const char* kind, osw_optimizer** out);
OSW_API void osw_optimizer_destroy(osw_optimizer* optimizer);
/*
 * Keys: hopso  c1 c2 omega lambda s m t-ul particles
 *       pso    chi c1 c2 particles
 *       de     pop f f-lo f-hi cr
 */
OSW_API osw_status osw_optimizer_set(osw_optimizer* optimizer, const char* key, double value);
/* Writes the NUL-terminated kind into buf (truncated to cap). */
OSW_API osw_status osw_optimizer_kind(const osw_optimizer* optimizer, char* buf, size_t cap);

typedef struct osw_run_summary {
    double best_value;
    uint64_t evaluations_used;
    size_t trace_length;
} osw_run_summary;

/* One seeded run; dimension 0 / budget 0 select registry defaults. */
OSW_API osw_status osw_run(const osw_optimizer* optimizer, const char* function, size_t dimension,
                           uint64_t budget, uint64_t seed, osw_run_summary* out);

/* ---- experiments --------------------------------------------------------- */

typedef struct osw_experiment osw_experiment;

typedef struct osw_summary {
    double mean;
    double median;
    double q1;
    double q3;
    double whisker_lo;
    double whisker_hi;
    size_t n_outliers;
    size_t n_runs;
} osw_summary;

OSW_API osw_status osw_experiment_create(osw_experiment** out);
OSW_API void osw_experiment_destroy(osw_experiment* experiment);
/* Adds one plan row. dimension 0 / budget 0 select registry defaults; run k
 * uses seed base_seed + k. */
OSW_API osw_status osw_experiment_add_row(osw_experiment* experiment,
                                          const osw_optimizer* optimizer, const char* function,
                                          size_t dimension, uint64_t budget, size_t runs,
                                          uint64_t base_seed);
/* Appends the rows of a plan file; external paths it names are imported
 * after execution. */
OSW_API osw_status osw_experiment_load_plan(osw_experiment* experiment, const char* path);
OSW_API osw_status osw_experiment_set_jobs(osw_experiment* experiment, unsigned jobs);
OSW_API osw_status osw_experiment_execute(osw_experiment* experiment);
OSW_API osw_status osw_experiment_import_external(osw_experiment* experiment, const char* path);

OSW_API size_t osw_experiment_row_count(const osw_experiment* experiment);
/* Returns OSW_OK with *ok = 0 for a failed row; status text via
 * osw_experiment_row_status. */
OSW_API osw_status osw_experiment_row_stats(const osw_experiment* experiment, size_t row,
                                            int* ok, osw_summary* out);
OSW_API osw_status osw_experiment_row_status(const osw_experiment* experiment, size_t row,
                                             char* buf, size_t cap);

OSW_API osw_status osw_experiment_write_results(const osw_experiment* experiment,
                                                const char* path);
/* Comparison table of internal rows followed by imported external rows. */
OSW_API osw_status osw_experiment_write_table(const osw_experiment* experiment, const char* path,
                                              osw_table_format format);
OSW_API osw_status osw_parse_table_format(const char* name, osw_table_format* out);

/* HOPSO scaling-factor study; `hopso` supplies the other tunables. */
OSW_API osw_status osw_scaling_sweep(const osw_optimizer* hopso, const char* function,
                                     size_t dimension, uint64_t budget, const double* s_values,
                                     size_t count, size_t runs, uint64_t base_seed, unsigned jobs,
                                     const char* path);

/* ---- stability analysis ------------------------------------------------ */

OSW_API osw_status osw_constriction_factor(double c1, double c2, double* chi);
OSW_API osw_status osw_eigenvalues(double chi, double phi, double re[2], double im[2]);
OSW_API int osw_converges(double chi, double phi);
OSW_API osw_status osw_singular_values(double chi, double c, double r, double* sigma1,
                                       double* sigma2);
OSW_API osw_status osw_write_singular_value_sweep(double chi, double c, size_t samples,
                                                  const char* path);
OSW_API osw_status osw_write_trajectory(double chi, double c1, double c2, size_t steps,
                                        uint64_t seed, const char* path);

#ifdef __cplusplus
}
#endif

#endif
