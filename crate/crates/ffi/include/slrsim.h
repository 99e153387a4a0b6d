#ifndef SLRSIM_H
#define SLRSIM_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

// Result code of every exported function.
typedef enum SlrStatus {
  SLR_STATUS_OK = 0,
  // A required pointer argument was null.
  SLR_STATUS_NULL_POINTER = 1,
  // A string argument was not valid UTF-8.
  SLR_STATUS_INVALID_UTF8 = 2,
  // A file could not be read.
  SLR_STATUS_IO = 3,
  // Input text was not well-formed.
  SLR_STATUS_PARSE = 4,
  // Input was well-formed but rejected by the model or the engine.
  SLR_STATUS_INVALID = 5,
  // Snowballing hit the iteration cap; the partial outcome is returned.
  SLR_STATUS_CAP_EXCEEDED = 6,
  // An internal error was caught at the boundary.
  SLR_STATUS_PANIC = 7,
} SlrStatus;

// Loaded corpus.
typedef struct SlrCorpus SlrCorpus;

// Result of running one strategy.
typedef struct SlrOutcome SlrOutcome;

// Precision, recall and F-measure in percent.
typedef struct SlrMetrics {
  // NaN when nothing was visited.
  double precision;
  bool precision_is_nan;
  double recall;
  double f_measure;
  uintptr_t hits;
  uintptr_t visited;
  uintptr_t oracle_size;
} SlrMetrics;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message of the last failed call on this thread, or null.
//
// The pointer stays valid until the next call into this library on the
// same thread.
const char *slr_last_error(void);

// Loads a corpus from a JSON file.
//
// # Safety
// `path` must be a NUL-terminated string and `out` a writable pointer.
enum SlrStatus slr_corpus_load(const char *path, struct SlrCorpus **out);

// Parses a corpus from JSON text.
//
// # Safety
// `json` must be a NUL-terminated string and `out` a writable pointer.
enum SlrStatus slr_corpus_from_json(const char *json, struct SlrCorpus **out);

// Releases a corpus. Null is ignored.
//
// # Safety
// `corpus` must come from this library and not be used afterwards.
void slr_corpus_free(struct SlrCorpus *corpus);

// Number of papers in a corpus, stubs included.
//
// # Safety
// `corpus` must be a live handle and `out` a writable pointer.
enum SlrStatus slr_corpus_paper_count(const struct SlrCorpus *corpus, uintptr_t *out);

// Validation diagnostics of a corpus as a JSON array.
//
// Returns `SLR_STATUS_INVALID` when any diagnostic is an error; the
// array is written either way.
//
// # Safety
// `corpus` must be a live handle and `out` a writable pointer.
enum SlrStatus slr_corpus_validate_json(const struct SlrCorpus *corpus, char **out);

// Runs a strategy given as JSON.
//
// When the iteration cap is reached the partial outcome is still written
// to `out` and `SLR_STATUS_CAP_EXCEEDED` is returned.
//
// # Safety
// `corpus` must be a live handle, `spec_json` a NUL-terminated string and
// `out` a writable pointer.
enum SlrStatus slr_run_strategy_json(const struct SlrCorpus *corpus,
                                     const char *spec_json,
                                     struct SlrOutcome **out);

// Final metrics of an outcome.
//
// # Safety
// `outcome` must be a live handle and `out` a writable pointer.
enum SlrStatus slr_outcome_metrics(const struct SlrOutcome *outcome, struct SlrMetrics *out);

// Iteration trace of an outcome as a JSON array.
//
// # Safety
// `outcome` must be a live handle and `out` a writable pointer.
enum SlrStatus slr_outcome_trace_json(const struct SlrOutcome *outcome, char **out);

// Releases an outcome. Null is ignored.
//
// # Safety
// `outcome` must come from this library and not be used afterwards.
void slr_outcome_free(struct SlrOutcome *outcome);

// Metrics for `hits` relevant papers out of `visited`, against an oracle
// of `oracle_size` papers.
//
// # Safety
// `out` must be a writable pointer.
enum SlrStatus slr_compute_metrics(uintptr_t hits,
                                   uintptr_t visited,
                                   uintptr_t oracle_size,
                                   struct SlrMetrics *out);

// Graphviz rendering of the citation graph an outcome explored.
//
// # Safety
// `corpus` and `outcome` must be live handles and `out` a writable
// pointer. The outcome must come from a run over the same corpus.
enum SlrStatus slr_render_dot(const struct SlrCorpus *corpus,
                              const struct SlrOutcome *outcome,
                              bool all_edges,
                              char **out);

// Releases a string returned by this library. Null is ignored.
//
// # Safety
// `s` must come from this library and not be used afterwards.
void slr_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SLRSIM_H */
