/* C interface to the contourmon simulator.
 *
 * Every function returns a cmon_status; on failure, cmon_last_error() gives a
 * thread-local description of the most recent error on the calling thread.
 * Handles are opaque and owned by the caller, who releases them with the
 * matching *_free function. Strings returned through `const char**` stay
 * valid for the lifetime of the handle they came from.
 */
#ifndef CONTOURMON_H
#define CONTOURMON_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(CMON_BUILDING_LIBRARY)
#    define CMON_API __declspec(dllexport)
#  else
#    define CMON_API __declspec(dllimport)
#  endif
#else
#  define CMON_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum cmon_status {
  CMON_OK = 0,
  CMON_ERR_INVALID_ARGUMENT = 1,
  CMON_ERR_CONFIG = 2,
  CMON_ERR_IO = 3,
  CMON_ERR_INSUFFICIENT_DATA = 4,
  CMON_ERR_NUMERICAL = 5,
  CMON_ERR_DEGENERATE_FIELD = 6,
  CMON_ERR_SHAPE = 7,
  CMON_ERR_INTERNAL = 8
} cmon_status;

typedef enum cmon_mode { CMON_MODE_DUAL_SG = 0, CMON_MODE_BASELINE = 1 } cmon_mode;

typedef struct cmon_scenario cmon_scenario;
typedef struct cmon_report cmon_report;
typedef struct cmon_field cmon_field;
typedef struct cmon_records cmon_records;

/* Mirrors one row of the run CSV (without the level list). */
typedef struct cmon_iteration {
  int iteration;
  int m_requested;
  int m_traced;
  double learning_error;
  double mae;
  double mae_db;
  double span_ratio;
  int kappa;
  double delta;
  double cost_increment;
  double cost_cumulative;
} cmon_iteration;

CMON_API const char* cmon_version(void);
CMON_API const char* cmon_last_error(void);
CMON_API const char* cmon_status_string(cmon_status status);

/* ---- scenarios ---------------------------------------------------------- */

CMON_API cmon_status cmon_scenario_load(const char* path, cmon_scenario** out);
CMON_API cmon_status cmon_scenario_parse(const char* text, cmon_scenario** out);
/* Built-in defaults: 100 x 100 area, sigma 10/15, M0 = 3, 101 x 101 grid. */
CMON_API cmon_status cmon_scenario_default(cmon_scenario** out);
CMON_API void cmon_scenario_free(cmon_scenario* scenario);

CMON_API cmon_status cmon_scenario_name(const cmon_scenario* scenario, const char** out);
/* "dual-sg", "baseline" or "both". */
CMON_API cmon_status cmon_scenario_mode(const cmon_scenario* scenario, const char** out);
CMON_API cmon_status cmon_scenario_output_dir(const cmon_scenario* scenario, const char** out);
CMON_API cmon_status cmon_scenario_seed_count(const cmon_scenario* scenario, size_t* out);
CMON_API cmon_status cmon_scenario_seed_at(const cmon_scenario* scenario, size_t index, uint64_t* out);
CMON_API cmon_status cmon_scenario_target_count(const cmon_scenario* scenario, size_t* out);
CMON_API cmon_status cmon_scenario_target_at(const cmon_scenario* scenario, size_t index, double* out);

CMON_API cmon_status cmon_scenario_set_seeds(cmon_scenario* scenario, const uint64_t* seeds, size_t count);
CMON_API cmon_status cmon_scenario_set_max_iterations(cmon_scenario* scenario, int max_iterations);
CMON_API cmon_status cmon_scenario_set_output_dir(cmon_scenario* scenario, const char* dir);

/* ---- runs --------------------------------------------------------------- */

CMON_API cmon_status cmon_run(const cmon_scenario* scenario, cmon_mode mode, uint64_t seed, cmon_report** out);
CMON_API void cmon_report_free(cmon_report* report);

CMON_API cmon_status cmon_report_iteration_count(const cmon_report* report, size_t* out);
CMON_API cmon_status cmon_report_iteration(const cmon_report* report, size_t index, cmon_iteration* out);
/* Levels assigned in iteration `index`; the array lives as long as the report. */
CMON_API cmon_status cmon_report_levels(const cmon_report* report, size_t index, const double** levels, size_t* count);
CMON_API cmon_status cmon_report_converged(const cmon_report* report, int* out);
CMON_API cmon_status cmon_report_termination(const cmon_report* report, const char** out);
CMON_API cmon_status cmon_report_note_count(const cmon_report* report, size_t* out);
CMON_API cmon_status cmon_report_note_at(const cmon_report* report, size_t index, const char** out);
/* Signal range of the ground truth and of the final estimate on the grid. */
CMON_API cmon_status cmon_report_ranges(const cmon_report* report, double* truth_min, double* truth_max,
                                        double* estimate_min, double* estimate_max);

/* Per-iteration table: iteration,M_requested,...,cost_cumulative,levels */
CMON_API cmon_status cmon_report_write_csv(const cmon_report* report, const char* path);
CMON_API cmon_status cmon_report_write_summary(const cmon_report* report, const char* path);
CMON_API cmon_status cmon_report_write_traces(const cmon_report* report, const char* path);
CMON_API cmon_status cmon_report_write_contours(const cmon_report* report, const char* path);
/* Headerless P x Q matrices. */
CMON_API cmon_status cmon_report_write_estimate(const cmon_report* report, const char* path);
CMON_API cmon_status cmon_report_write_truth(const cmon_report* report, const char* path);
CMON_API cmon_status cmon_report_write_error_map(const cmon_report* report, const char* path);
CMON_API cmon_status cmon_report_write_field(const cmon_report* report, const char* path);

/* ---- comparison --------------------------------------------------------- */

/* Iteration tables, either taken from a report or read back from a run CSV. */
CMON_API cmon_status cmon_records_from_report(const cmon_report* report, cmon_records** out);
CMON_API cmon_status cmon_records_read_csv(const char* path, cmon_records** out);
CMON_API void cmon_records_free(cmon_records* records);
CMON_API cmon_status cmon_records_count(const cmon_records* records, size_t* out);
CMON_API cmon_status cmon_records_at(const cmon_records* records, size_t index, cmon_iteration* out);

/* Writes `cost_table_path` (MAE-dB of both runs on a common cost axis) and
 * `target_table_path` (cost to reach each MAE-dB target). `partial` is set to
 * 1 when cost points outside the common range were skipped. */
CMON_API cmon_status cmon_compare(const cmon_records* a, const cmon_records* b, const char* label_a,
                                  const char* label_b, const double* mae_db_targets, size_t target_count,
                                  const char* cost_table_path, const char* target_table_path, int* partial);

/* ---- ground-truth fields ------------------------------------------------ */

CMON_API cmon_status cmon_field_generate(const cmon_scenario* scenario, uint64_t seed, cmon_field** out);
CMON_API void cmon_field_free(cmon_field* field);
CMON_API cmon_status cmon_field_eval(const cmon_field* field, double x, double y, double* out);
CMON_API cmon_status cmon_field_gradient(const cmon_field* field, double x, double y, double* gx, double* gy);
CMON_API cmon_status cmon_field_component_count(const cmon_field* field, size_t* out);
CMON_API cmon_status cmon_field_write_components(const cmon_field* field, const char* path);

#ifdef __cplusplus
}
#endif

#endif /* CONTOURMON_H */
