/*
 * C interface to the hoover optimizer library.
 *
 * All functions return a hoover_status; on failure a description is available
 * from hoover_last_error() on the same thread. Handles are opaque and owned by
 * the caller once created; destroy functions accept NULL.
 *
 * Functions that produce text follow one pattern: pass buffer == NULL to get
 * the required size (including the terminating NUL) in *required, then call
 * again with a buffer of at least that size.
 */
#ifndef HOOVER_H
#define HOOVER_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define HOOVER_API __declspec(dllexport)
#else
#define HOOVER_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum hoover_status {
  HOOVER_OK = 0,
  HOOVER_ERROR_CONFIG = 1,
  HOOVER_ERROR_DEGENERATE_REGION = 2,
  HOOVER_ERROR_CONTRACT = 3,
  HOOVER_ERROR_SIMULATION = 4,
  HOOVER_ERROR_UNKNOWN_MODEL = 5,
  HOOVER_ERROR_PARSE = 6,
  HOOVER_ERROR_OUT_OF_DOMAIN = 7,
  HOOVER_ERROR_NUMERICAL = 8,
  HOOVER_ERROR_DIMENSION_GUARD = 9,
  HOOVER_ERROR_IO = 10,
  HOOVER_ERROR_INVALID_ARGUMENT = 20,
  HOOVER_ERROR_BUFFER_TOO_SMALL = 21,
  HOOVER_ERROR_UNKNOWN = 99
} hoover_status;

typedef struct hoover_model hoover_model;
typedef struct hoover_result hoover_result;
typedef struct hoover_sweep hoover_sweep;

typedef struct hoover_estimate {
  double mean;
  double std_error;
  uint64_t samples;
} hoover_estimate;

HOOVER_API const char* hoover_version(void);
HOOVER_API const char* hoover_status_name(hoover_status status);
/* Message of the last failed call on this thread; empty if none. */
HOOVER_API const char* hoover_last_error(void);

/* Models. params_json is a JSON object of numeric parameters or NULL;
 * time_bound <= 0 keeps the model default. */
HOOVER_API hoover_status hoover_model_create(const char* name, const char* params_json,
                                             int time_bound, hoover_model** out);
HOOVER_API void hoover_model_destroy(hoover_model* model);
HOOVER_API hoover_status hoover_model_dimension(const hoover_model* model, size_t* dimension);
HOOVER_API hoover_status hoover_model_bounds(const hoover_model* model, double* lower,
                                             double* upper, size_t capacity);
/* *synthesis is set to 1 for synthesis models, 0 for verification models. */
HOOVER_API hoover_status hoover_model_is_synthesis(const hoover_model* model, int* synthesis);

/* Monte-Carlo estimate of the model's observation mean at a point. */
HOOVER_API hoover_status hoover_estimate_point(const hoover_model* model, const double* point,
                                               size_t dimension, uint64_t samples, uint64_t seed,
                                               hoover_estimate* out);

/* Full pipeline from a run-config JSON document. threads == 0 means one
 * worker per hardware thread. */
HOOVER_API hoover_status hoover_run(const char* config_json, unsigned threads, hoover_result** out);
HOOVER_API void hoover_result_destroy(hoover_result* result);
HOOVER_API hoover_status hoover_result_best(const hoover_result* result, double* point,
                                            size_t capacity, size_t* dimension, double* estimate);
HOOVER_API hoover_status hoover_result_json(const hoover_result* result, char* buffer,
                                            size_t capacity, size_t* required);
HOOVER_API hoover_status hoover_result_trace_jsonl(const hoover_result* result, char* buffer,
                                                   size_t capacity, size_t* required);

/* Budget sweep: one meta-optimizer run per (budget, repeat), seeds
 * config.seed .. config.seed + repeats - 1. The config's budget is ignored. */
HOOVER_API hoover_status hoover_sweep_run(const char* config_json, const uint64_t* budgets,
                                          size_t count, size_t repeats, unsigned threads,
                                          hoover_sweep** out);
HOOVER_API void hoover_sweep_destroy(hoover_sweep* sweep);
HOOVER_API hoover_status hoover_sweep_table(const hoover_sweep* sweep, char* buffer,
                                            size_t capacity, size_t* required);

#ifdef __cplusplus
}
#endif

#endif /* HOOVER_H */
