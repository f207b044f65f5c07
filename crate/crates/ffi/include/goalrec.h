#ifndef GOALREC_H
#define GOALREC_H

/* Generated by cbindgen from goalrec-ffi; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes returned by every fallible call.
 */
typedef enum GrStatus {
  GR_STATUS_OK = 0,
  GR_STATUS_NULL_POINTER = 1,
  GR_STATUS_INVALID_ARGUMENT = 2,
  GR_STATUS_UTF8 = 3,
  GR_STATUS_PARSE = 4,
  GR_STATUS_OUT_OF_ORDER_OBSERVATION = 5,
  GR_STATUS_BUFFER_TOO_SMALL = 6,
} GrStatus;

/**
 * Opaque immutable hypothesis bank.
 */
typedef struct GrBank GrBank;

/**
 * Opaque incremental bank builder.
 */
typedef struct GrBankBuilder GrBankBuilder;

/**
 * Opaque recognition session over one observation stream.
 */
typedef struct GrSession GrSession;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Creates a bank builder. Free with [`gr_bank_builder_free`] or consume
 * with [`gr_bank_builder_finish`].
 */
struct GrBankBuilder *gr_bank_builder_new(double dt);

/**
 * Appends one trajectory (xs/ys sample arrays of length `len`, one sample
 * per `dt`) to `goal_label`, creating the goal on first use.
 *
 * # Safety
 * `builder` must come from [`gr_bank_builder_new`] and not be freed;
 * `goal_label` must be a valid NUL-terminated string; `xs` and `ys` must
 * point to at least `len` readable doubles.
 */
enum GrStatus gr_bank_builder_add_trajectory(struct GrBankBuilder *builder,
                                             const char *goal_label,
                                             const double *xs,
                                             const double *ys,
                                             size_t len);

/**
 * Consumes the builder into an immutable bank with uniform priors.
 *
 * # Safety
 * `builder` must come from [`gr_bank_builder_new`] and must not be used
 * again after this call; `out_bank` must be a valid pointer.
 */
enum GrStatus gr_bank_builder_finish(struct GrBankBuilder *builder, struct GrBank **out_bank);

/**
 * Drops an unfinished builder.
 *
 * # Safety
 * `builder` must come from [`gr_bank_builder_new`] and not be freed twice.
 */
void gr_bank_builder_free(struct GrBankBuilder *builder);

/**
 * Loads a bank from the JSON bank-file format.
 *
 * # Safety
 * `json` must be a valid NUL-terminated string; `out_bank` must be valid.
 */
enum GrStatus gr_bank_from_json(const char *json, struct GrBank **out_bank);

/**
 * Number of goal hypotheses in the bank.
 *
 * # Safety
 * `bank` must come from a bank constructor and not be freed.
 */
size_t gr_bank_goal_count(const struct GrBank *bank);

/**
 * Returns goal label `index` as a fresh string (free with
 * [`gr_string_free`]), or NULL when out of range.
 *
 * # Safety
 * `bank` must come from a bank constructor and not be freed.
 */
char *gr_bank_goal_label(const struct GrBank *bank, size_t index);

/**
 * # Safety
 * `bank` must come from a bank constructor and not be freed twice.
 * Sessions created from it stay valid.
 */
void gr_bank_free(struct GrBank *bank);

/**
 * Opens a recognition session over the bank.
 *
 * # Safety
 * `bank` must come from a bank constructor and not be freed.
 */
struct GrSession *gr_session_new(const struct GrBank *bank);

/**
 * Folds one position observation at discrete timestamp `t` and writes the
 * posterior into `probs_out` (capacity `probs_capacity`, needs one slot
 * per goal). `argmax_out` (optional) receives the winning goal index.
 *
 * # Safety
 * `session` must come from [`gr_session_new`]; `probs_out` must point to
 * at least `probs_capacity` writable doubles; `argmax_out` may be NULL.
 */
enum GrStatus gr_session_update(struct GrSession *session,
                                uint64_t t,
                                double x,
                                double y,
                                double *probs_out,
                                size_t probs_capacity,
                                size_t *argmax_out);

/**
 * Observations folded so far.
 *
 * # Safety
 * `session` must come from [`gr_session_new`] and not be freed.
 */
uint64_t gr_session_observation_count(const struct GrSession *session);

/**
 * # Safety
 * `session` must come from [`gr_session_new`] and not be freed twice.
 */
void gr_session_free(struct GrSession *session);

/**
 * Frees strings returned by this library.
 *
 * # Safety
 * `s` must be a string returned by this library, not yet freed.
 */
void gr_string_free(char *s);

/**
 * Library version as a static string; do not free.
 */
const char *gr_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* GOALREC_H */
