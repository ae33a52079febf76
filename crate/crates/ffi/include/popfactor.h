#ifndef POPFACTOR_H
#define POPFACTOR_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes. The first four mirror the command-line exit codes.
 */
typedef enum PfStatus {
  PF_STATUS_OK = 0,
  /**
   * Malformed input or unsupported request.
   */
  PF_STATUS_INPUT = 1,
  /**
   * Matching breaks a rule of the instance.
   */
  PF_STATUS_VALIDATION = 2,
  /**
   * An internal cross-check failed.
   */
  PF_STATUS_INTERNAL = 3,
  /**
   * Null pointer, non-UTF-8 text, or a handle pair that does not belong
   * together.
   */
  PF_STATUS_INVALID_ARGUMENT = 4,
  /**
   * The library panicked; no output was written.
   */
  PF_STATUS_PANIC = 5,
} PfStatus;

typedef enum PfFastPath {
  PF_FAST_PATH_AUTO = 0,
  PF_FAST_PATH_ON = 1,
  PF_FAST_PATH_OFF = 2,
  PF_FAST_PATH_VERIFY = 3,
} PfFastPath;

typedef struct PfInstance PfInstance;

typedef struct PfMatching PfMatching;

typedef struct PfReport PfReport;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Parses an instance document into `*out`.
 *
 * # Safety
 * `text` must be a NUL-terminated string; `out` must be writable.
 */
enum PfStatus pf_instance_parse(const char *text, struct PfInstance **out);

/**
 * # Safety
 * `inst` must come from `pf_instance_parse` and not be used afterwards.
 */
void pf_instance_free(struct PfInstance *inst);

/**
 * Number of people, or 0 for a null handle.
 *
 * # Safety
 * `inst` must be null or a live instance handle.
 */
size_t pf_instance_size(const struct PfInstance *inst);

/**
 * Parses a matching of `inst` into `*out`.
 *
 * # Safety
 * `inst` must be a live instance handle, `text` a NUL-terminated string and
 * `out` writable.
 */
enum PfStatus pf_matching_parse(const struct PfInstance *inst,
                                const char *text,
                                struct PfMatching **out);

/**
 * # Safety
 * `m` must come from `pf_matching_parse` and not be used afterwards.
 */
void pf_matching_free(struct PfMatching *m);

/**
 * Computes the unpopularity factor report into `*out`. `mode` is a
 * `PfFastPath` value.
 *
 * # Safety
 * `inst` and `m` must be live handles; `out` must be writable.
 */
enum PfStatus pf_unpopularity_factor(const struct PfInstance *inst,
                                     const struct PfMatching *m,
                                     int32_t mode,
                                     struct PfReport **out);

/**
 * # Safety
 * `r` must come from `pf_unpopularity_factor` and not be used afterwards.
 */
void pf_report_free(struct PfReport *r);

/**
 * Writes the factor: `*infinite` is set, and when it is false the factor
 * is `*num / *den` in lowest terms.
 *
 * # Safety
 * `r` must be a live report; the output pointers must be writable.
 */
enum PfStatus pf_report_factor(const struct PfReport *r,
                               int64_t *num,
                               int64_t *den,
                               bool *infinite);

/**
 * # Safety
 * `r` must be null or a live report.
 */
uint64_t pf_report_margin(const struct PfReport *r);

/**
 * # Safety
 * `r` must be null or a live report.
 */
bool pf_report_popular(const struct PfReport *r);

/**
 * Predicate evaluations used by the factor search.
 *
 * # Safety
 * `r` must be null or a live report.
 */
uint32_t pf_report_queries(const struct PfReport *r);

/**
 * The report as a JSON document; free it with `pf_string_free`. Null for a
 * null handle.
 *
 * # Safety
 * `r` must be null or a live report.
 */
char *pf_report_json(const struct PfReport *r);

/**
 * # Safety
 * `inst` and `m` must be live handles; `out` must be writable.
 */
enum PfStatus pf_unpopularity_margin(const struct PfInstance *inst,
                                     const struct PfMatching *m,
                                     uint64_t *out);

/**
 * # Safety
 * `inst` and `m` must be live handles; `out` must be writable.
 */
enum PfStatus pf_is_popular(const struct PfInstance *inst,
                            const struct PfMatching *m,
                            int32_t mode,
                            bool *out);

/**
 * # Safety
 * `s` must be null or a string returned by this library.
 */
void pf_string_free(char *s);

/**
 * Message for the last failed call on this thread, or an empty string.
 * Valid until the next call into the library on the same thread.
 */
const char *pf_last_error(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* POPFACTOR_H */
