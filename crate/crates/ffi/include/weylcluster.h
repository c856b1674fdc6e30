#ifndef WEYLCLUSTER_H
#define WEYLCLUSTER_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum WcStatus {
  WC_STATUS_OK = 0,
  WC_STATUS_NULL_POINTER = 1,
  WC_STATUS_INVALID_UTF8 = 2,
  WC_STATUS_PARSE = 3,
  WC_STATUS_INDEX_OUT_OF_RANGE = 4,
  WC_STATUS_CHECK_FAILED = 5,
  WC_STATUS_INTERNAL = 6,
} WcStatus;

/**
 * A Weyl preseed.
 */
typedef struct WcPreseed WcPreseed;

/**
 * A zigzag presentation of a single word.
 */
typedef struct WcZigzag WcZigzag;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Parses a TOML preseed spec into a new handle.
 *
 * # Safety
 * `spec` must be a nul-terminated string and `out` writable.
 */
enum WcStatus wc_preseed_from_spec(const char *spec, struct WcPreseed **out);

/**
 * # Safety
 * `p` must be null or a handle not yet freed.
 */
void wc_preseed_free(struct WcPreseed *p);

/**
 * # Safety
 * `p` must be a live handle and `out` writable.
 */
enum WcStatus wc_preseed_rank(const struct WcPreseed *p, uintptr_t *out);

/**
 * Applies a sequence such as `"1R 2L"` and returns a new handle.
 *
 * # Safety
 * `p` must be a live handle, `seq` a nul-terminated string, `out` writable.
 */
enum WcStatus wc_preseed_mutate(const struct WcPreseed *p, const char *seq, struct WcPreseed **out);

/**
 * Writes the cluster as text, e.g. `"xi*x*xi^-1"`.
 *
 * # Safety
 * `p` must be a live handle and `out` writable.
 */
enum WcStatus wc_preseed_cluster(const struct WcPreseed *p, char **out);

/**
 * Writes the skew Laurent value of the cluster variable at `position` along
 * direction `dir`.
 *
 * # Safety
 * `p` must be a live handle and `out` writable.
 */
enum WcStatus wc_eval_position(const struct WcPreseed *p,
                               uintptr_t dir,
                               int64_t position,
                               char **out);

/**
 * Runs a check suite; `passed` receives 1 on pass, 0 otherwise. A
 * discrepancy report counts as not passed.
 *
 * # Safety
 * `p` must be a live handle, `suite` a nul-terminated string, `passed`
 * writable.
 */
enum WcStatus wc_verify(const struct WcPreseed *p,
                        const char *suite,
                        uintptr_t bound,
                        int32_t *passed);

/**
 * Zigzag of `word` (e.g. `"xi^-1 * eta"`) in a rank-1 orbit. `alternation`
 * is 0 for `ε` first on both sides, 1 for `ξ` first on the left.
 *
 * # Safety
 * `word` must be a nul-terminated string and `out` writable.
 */
enum WcStatus wc_zigzag_new(const char *word,
                            int64_t parity,
                            int64_t window,
                            int32_t alternation,
                            struct WcZigzag **out);

/**
 * # Safety
 * `z` must be a live handle; `length` and `height` writable.
 */
enum WcStatus wc_zigzag_shape(const struct WcZigzag *z, uintptr_t *length, uintptr_t *height);

/**
 * # Safety
 * `z` must be null or a handle not yet freed.
 */
void wc_zigzag_free(struct WcZigzag *z);

/**
 * Message of the last failure on this thread, or null. The string stays
 * owned by the library until the next failing call.
 */
const char *wc_last_error(void);

/**
 * # Safety
 * `s` must be null or a string returned by this library, not yet freed.
 */
void wc_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* WEYLCLUSTER_H */
