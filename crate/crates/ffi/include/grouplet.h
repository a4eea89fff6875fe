#ifndef GROUPLET_H
#define GROUPLET_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

#define GROUPLET_OK 0

/**
 * A required pointer argument was null.
 */
#define GROUPLET_ERR_NULL 1

/**
 * A string argument was not valid UTF-8.
 */
#define GROUPLET_ERR_UTF8 2

/**
 * A group spec, field spec or element literal did not parse or validate.
 */
#define GROUPLET_ERR_PARSE 3

/**
 * Any other domain error: size limits, mismatched fields, preconditions.
 */
#define GROUPLET_ERR_DOMAIN 4

/**
 * Certificate violation or method disagreement inside the library.
 */
#define GROUPLET_ERR_INTERNAL 5

#define GROUPLET_ERR_PANIC 6

/**
 * A validated finite group.
 */
typedef struct GroupletGroup GroupletGroup;

/**
 * A semisimplicity verdict with its certificate.
 */
typedef struct GroupletVerdict GroupletVerdict;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or null. Valid until the
 * next failing call on the same thread; do not free.
 */
const char *grouplet_last_error(void);

/**
 * Parses a group spec such as `C6`, `D4`, `Q8`, `C2xC4` or `@table.json`.
 *
 * # Safety
 * `spec` must be a nul-terminated string and `out` a valid pointer.
 */
int32_t grouplet_group_parse(const char *spec, struct GroupletGroup **out);

/**
 * # Safety
 * `group` must come from [`grouplet_group_parse`] and not be freed twice.
 */
void grouplet_group_free(struct GroupletGroup *group);

/**
 * Order of the group; 0 for null.
 *
 * # Safety
 * `group` must be null or a live handle.
 */
size_t grouplet_group_order(const struct GroupletGroup *group);

/**
 * Whether the characteristic of `field` (`Q` or `F<p>`) divides the order.
 *
 * # Safety
 * Pointers must be valid; `field` nul-terminated.
 */
int32_t grouplet_char_divides(const char *field, const struct GroupletGroup *group, bool *out);

/**
 * Computes the verdict for `field[group]`.
 *
 * # Safety
 * Pointers must be valid; `field` nul-terminated.
 */
int32_t grouplet_verdict_compute(const struct GroupletGroup *group,
                                 const char *field,
                                 uint64_t seed,
                                 struct GroupletVerdict **out);

/**
 * # Safety
 * `verdict` must come from [`grouplet_verdict_compute`] and not be freed twice.
 */
void grouplet_verdict_free(struct GroupletVerdict *verdict);

/**
 * # Safety
 * `verdict` must be null or a live handle. Null reads as not semisimple.
 */
bool grouplet_verdict_is_semisimple(const struct GroupletVerdict *verdict);

/**
 * Radical dimension; `exact` is false when only a lower bound is known.
 *
 * # Safety
 * All pointers must be valid.
 */
int32_t grouplet_verdict_radical_dimension(const struct GroupletVerdict *verdict,
                                           size_t *dimension,
                                           bool *exact);

/**
 * The verdict report as JSON. Free the string with [`grouplet_string_free`].
 *
 * # Safety
 * All pointers must be valid.
 */
int32_t grouplet_verdict_to_json(const struct GroupletVerdict *verdict, char **out);

/**
 * G-circulant matrix of an element literal (`2,5,7`, `1/2,0,3`) as JSON.
 * Free the string with [`grouplet_string_free`].
 *
 * # Safety
 * All pointers must be valid; strings nul-terminated.
 */
int32_t grouplet_embed_json(const struct GroupletGroup *group,
                            const char *field,
                            const char *element,
                            char **out);

/**
 * # Safety
 * `s` must be null or a string returned by this library, freed once.
 */
void grouplet_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* GROUPLET_H */
