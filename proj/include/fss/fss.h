/*
 * fss: field-normalized, fractionally counted research productivity scores
 * and publication-window sensitivity analyses.
 *
 * C interface. All functions return an fss_status; on failure a description
 * of the last error on the calling thread is available from
 * fss_last_error() (human readable) and fss_last_error_json() (a JSON
 * array of issue objects with kind/file/row/column/key/message).
 * Strings returned through char** out-parameters are owned by the caller
 * and must be released with fss_string_free().
 */
#ifndef FSS_FSS_H
#define FSS_FSS_H

#include <stddef.h>

#if defined(_WIN32)
#  if defined(FSS_BUILDING_LIBRARY)
#    define FSS_API __declspec(dllexport)
#  else
#    define FSS_API __declspec(dllimport)
#  endif
#else
#  define FSS_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum fss_status {
  FSS_OK = 0,
  FSS_ERR_INVALID_ARGUMENT = 1, /* bad arguments or configuration */
  FSS_ERR_DATA = 2,             /* malformed or inconsistent input data, I/O failure */
  FSS_ERR_UNDEFINED = 3,        /* statistic has no value for this input */
  FSS_ERR_INTERNAL = 4
} fss_status;

typedef enum fss_weight_scheme {
  FSS_WEIGHTS_UNIFORM = 0,
  FSS_WEIGHTS_POSITIONAL = 1
} fss_weight_scheme;

typedef struct fss_corpus fss_corpus;
typedef struct fss_baselines fss_baselines;

FSS_API const char* fss_version(void);
FSS_API const char* fss_last_error(void);
FSS_API const char* fss_last_error_json(void);
FSS_API void fss_string_free(char* s);

/* Corpus ------------------------------------------------------------------ */

/* `paths` name the table files (researchers, publications, authorship,
 * taxonomy; identified by file stem) or directories containing them.
 * `format` is "csv" or "json". */
FSS_API fss_status fss_corpus_load(const char* const* paths, size_t n_paths, const char* format,
                                   const char* observation_date, fss_corpus** out);
FSS_API void fss_corpus_free(fss_corpus* corpus);
FSS_API fss_status fss_corpus_write(const fss_corpus* corpus, const char* dir, const char* format);
FSS_API fss_status fss_corpus_counts(const fss_corpus* corpus, size_t* researchers,
                                     size_t* publications, size_t* authorships, size_t* sds);

/* JSON array of researcher ids in role throughout [start, end]. */
FSS_API fss_status fss_stable_staff(const fss_corpus* corpus, int start, int end, char** json_out);
/* JSON array of SDS ids passing the eligibility filters over [start, end]. */
FSS_API fss_status fss_eligible_sds(const fss_corpus* corpus, int start, int end,
                                    double min_active_share, int min_members, char** json_out);

/* Baselines and scores ------------------------------------------------------ */

FSS_API fss_status fss_baselines_build(const fss_corpus* corpus, fss_baselines** out);
FSS_API fss_status fss_baselines_load(const char* csv_path, fss_baselines** out);
FSS_API fss_status fss_baselines_save(const fss_baselines* baselines, const char* csv_path);
FSS_API void fss_baselines_free(fss_baselines* baselines);
/* FSS_ERR_UNDEFINED when no cell exists. */
FSS_API fss_status fss_baseline_median(const fss_baselines* baselines, const char* category,
                                       int year, double* median);

/* Standardized citation score of one publication (equal category weights).
 * FSS_ERR_UNDEFINED when none of its categories has a baseline. */
FSS_API fss_status fss_standardized_score(const fss_corpus* corpus, const fss_baselines* baselines,
                                          const char* pub_id, double* out);

FSS_API fss_status fss_score(const fss_corpus* corpus, const fss_baselines* baselines,
                             const char* researcher_id, int start, int end, double* out);

/* Credit shares of a byline given its institutions in byline order. */
FSS_API fss_status fss_author_weights(const char* const* institutions, size_t n_authors,
                                      fss_weight_scheme scheme, double* weights_out);

/* Statistics ---------------------------------------------------------------- */

/* Tie-corrected Spearman correlation. FSS_ERR_UNDEFINED for a constant vector. */
FSS_API fss_status fss_spearman(const double* x, const double* y, size_t n, double* rho);
FSS_API fss_status fss_trend_fit(const double* series, size_t n, double* slope,
                                 double* intercept);

/* Runs ------------------------------------------------------------------------
 * `config_json` is a JSON object with the run configuration (inputs, format,
 * anchor_year, max_length, output_dir, ...). The report text is returned
 * through `report_out` when it is non-NULL. */
FSS_API fss_status fss_run_rank(const char* config_json, char** report_out);
FSS_API fss_status fss_run_analyze(const char* config_json, char** report_out);
/* Text tables from an analysis report file. */
FSS_API fss_status fss_render_report(const char* analysis_json_path, char** text_out);

/* Synthetic corpus: writes the four tables plus latent_truth.csv into
 * `out_dir`. `config_json` holds generator parameters (seed, n_sds, ...). */
FSS_API fss_status fss_generate(const char* config_json, const char* out_dir, const char* format);

#ifdef __cplusplus
}
#endif

#endif /* FSS_FSS_H */
