#ifndef TORIC_GTC_H
#define TORIC_GTC_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum TgStatus {
  TG_STATUS_OK = 0,
  TG_STATUS_NULL_POINTER = 1,
  TG_STATUS_INVALID_UTF8 = 2,
  /**
   * Input that does not parse or has the wrong shape.
   */
  TG_STATUS_MALFORMED = 3,
  /**
   * Well-formed input failing a mathematical condition.
   */
  TG_STATUS_VALIDATION = 4,
  TG_STATUS_PANIC = 5,
} TgStatus;

/**
 * A duality datum.
 */
typedef struct TgDatum TgDatum;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread; empty after success.
 * The pointer stays valid until the next call on the same thread.
 */
const char *tg_last_error(void);

/**
 * # Safety
 * `json` must be a nul-terminated string and `out` a valid pointer.
 */
enum TgStatus tg_datum_from_json(const char *json, struct TgDatum **out);

/**
 * The Batyrev datum of a reflexive polytope given as a JSON vertex list.
 *
 * # Safety
 * `vertices_json` must be a nul-terminated string and `out` a valid pointer.
 */
enum TgStatus tg_batyrev(const char *vertices_json, struct TgDatum **out);

/**
 * # Safety
 * `d` must come from this library and `out` must be a valid pointer.
 */
enum TgStatus tg_datum_mirror(const struct TgDatum *d, struct TgDatum **out);

/**
 * Sets `*passed` to 1 if the datum satisfies every duality condition, else
 * to 0 with the failed checks in [`tg_last_error`].
 *
 * # Safety
 * `d` must come from this library and `passed` must be a valid pointer.
 */
enum TgStatus tg_datum_validate(const struct TgDatum *d, int *passed);

/**
 * Canonical JSON for the datum; free with [`tg_string_free`].
 *
 * # Safety
 * `d` must come from this library and `out` must be a valid pointer.
 */
enum TgStatus tg_datum_to_json(const struct TgDatum *d, char **out);

/**
 * # Safety
 * `d` must be null or come from this library, and not be used afterwards.
 */
void tg_datum_free(struct TgDatum *d);

/**
 * # Safety
 * `s` must be null or a string returned by this library.
 */
void tg_string_free(char *s);

/**
 * Number of triangle types `a` for odd `b`.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum TgStatus tg_count_triangle_types(uint64_t b, uint64_t *out);

/**
 * Runs the command line with `argc` arguments (not including the program
 * name). Standard output and standard error go to `*out` and `*err` (free
 * both with [`tg_string_free`]), the command's exit code to `*exit_code`.
 *
 * # Safety
 * `argv` must hold `argc` nul-terminated strings; `out`, `err` and
 * `exit_code` must be valid pointers.
 */
enum TgStatus tg_run(const char *const *argv, size_t argc, char **out, char **err, int *exit_code);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* TORIC_GTC_H */
