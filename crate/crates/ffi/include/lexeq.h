#ifndef LEXEQ_H
#define LEXEQ_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result of a call. `Yes` and `No` are answers; negative values are errors.
 */
typedef enum LexeqStatus {
  LEXEQ_STATUS_YES = 0,
  LEXEQ_STATUS_NO = 1,
  LEXEQ_STATUS_NULL_ARGUMENT = -1,
  LEXEQ_STATUS_INVALID_UTF8 = -2,
  LEXEQ_STATUS_SYNTAX = -3,
  LEXEQ_STATUS_INVALID_GAME = -4,
  LEXEQ_STATUS_BUDGET = -5,
  LEXEQ_STATUS_BAD_INPUT = -6,
  LEXEQ_STATUS_IO = -7,
  LEXEQ_STATUS_PANIC = -8,
} LexeqStatus;

/**
 * Loaded game.
 */
typedef struct LexeqGame LexeqGame;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or null. Valid until the
 * next call on the same thread; do not free.
 */
const char *lexeq_last_error(void);

/**
 * Parses a game document. On success `*out` owns a handle for
 * `lexeq_game_free`.
 *
 * # Safety
 * `json` is a NUL-terminated string; `out` is a valid pointer.
 */
enum LexeqStatus lexeq_game_from_json(const char *json, struct LexeqGame **out);

/**
 * Releases a game handle. Null is ignored.
 *
 * # Safety
 * `game` is null or a handle from `lexeq_game_from_json` not yet freed.
 */
void lexeq_game_free(struct LexeqGame *game);

/**
 * Number of agents of the game.
 *
 * # Safety
 * `game` is a live handle; `out` is a valid pointer.
 */
enum LexeqStatus lexeq_game_num_agents(const struct LexeqGame *game, uintptr_t *out);

/**
 * Decides whether a strict epsilon equilibrium exists (`formula` null) or
 * one whose play satisfies the LTL `formula`. `epsilon` is `p/q`. On `Yes`
 * and non-null `witness_json`, the witness document is stored there.
 *
 * # Safety
 * `game` is a live handle; strings are NUL-terminated or, for `formula`,
 * null; `witness_json` is null or a valid pointer.
 */
enum LexeqStatus lexeq_check(const struct LexeqGame *game,
                             const char *epsilon,
                             const char *formula,
                             char **witness_json);

/**
 * Payoffs on a lasso document, one `agent: sat=T mp=p/q` line per agent.
 *
 * # Safety
 * `game` is a live handle; `lasso_json` is NUL-terminated; `out` is valid.
 */
enum LexeqStatus lexeq_eval(const struct LexeqGame *game, const char *lasso_json, char **out);

/**
 * Frees a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` is null or a string from this library not yet freed.
 */
void lexeq_string_free(char *s);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* LEXEQ_H */
