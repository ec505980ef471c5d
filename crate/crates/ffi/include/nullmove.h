#ifndef NULLMOVE_H
#define NULLMOVE_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result code of every fallible call.
 */
typedef enum NmStatus {
  NM_STATUS_OK = 0,
  NM_STATUS_NULL_POINTER = 1,
  NM_STATUS_INVALID_UTF8 = 2,
  NM_STATUS_INVALID_FEN = 3,
  NM_STATUS_INVALID_POLICY = 4,
  NM_STATUS_INVALID_ARGUMENT = 5,
  NM_STATUS_ILLEGAL_MOVE = 6,
  NM_STATUS_NO_LEGAL_MOVES = 7,
  NM_STATUS_BUFFER_TOO_SMALL = 8,
  NM_STATUS_INTERNAL = 9,
} NmStatus;

/**
 * Opaque chess position.
 */
typedef struct NmPosition NmPosition;

/**
 * Opaque search outcome.
 */
typedef struct NmSearchResult NmSearchResult;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Static description of a status code.
 */
const char *nm_status_message(enum NmStatus status);

/**
 * Parses a 4- to 6-field FEN into a new position handle.
 *
 * # Safety
 * `fen` must be a NUL-terminated string; `out` must be writable.
 */
enum NmStatus nm_position_from_fen(const char *fen, struct NmPosition **out);

/**
 * Releases a position; null is ignored.
 *
 * # Safety
 * `pos` must come from `nm_position_from_fen` and not be used afterwards.
 */
void nm_position_free(struct NmPosition *pos);

/**
 * Writes the position's FEN into `buf`.
 *
 * # Safety
 * `pos` must be a live handle; `buf` must hold `len` bytes; `needed` may be null.
 */
enum NmStatus nm_position_to_fen(const struct NmPosition *pos,
                                 char *buf,
                                 size_t len,
                                 size_t *needed);

/**
 * Plays a move given in UCI (`e2e4`, `e7e8q`) or SAN (`Nf3`).
 *
 * # Safety
 * `pos` must be a live handle; `mv` a NUL-terminated string.
 */
enum NmStatus nm_position_play(struct NmPosition *pos, const char *mv);

/**
 * Number of legal moves, or -1 for a null handle.
 *
 * # Safety
 * `pos` must be a live handle or null.
 */
int32_t nm_position_legal_move_count(const struct NmPosition *pos);

/**
 * Leaf count of the legal move tree to `depth` plies.
 *
 * # Safety
 * `pos` must be a live handle; `out` writable.
 */
enum NmStatus nm_perft(const struct NmPosition *pos, uint32_t depth, uint64_t *out);

/**
 * Searches to `depth` plies under `policy` (`nonull`, `std:2`,
 * `verified:3`, ...). `tt_bytes` of 0 disables the transposition table.
 *
 * # Safety
 * `pos` must be a live handle, `policy` a NUL-terminated string and `out` writable.
 */
enum NmStatus nm_search(const struct NmPosition *pos,
                        const char *policy,
                        uint32_t depth,
                        size_t tt_bytes,
                        struct NmSearchResult **out);

/**
 * Releases a search result; null is ignored.
 *
 * # Safety
 * `result` must come from `nm_search` and not be used afterwards.
 */
void nm_search_result_free(struct NmSearchResult *result);

/**
 * Score in centipawns from the side to move's view; mate scores are
 * `±(32000 - plies)`. Returns 0 for a null handle.
 *
 * # Safety
 * `result` must be a live handle or null.
 */
int32_t nm_search_result_value(const struct NmSearchResult *result);

/**
 * Total nodes (full-width plus quiescence).
 *
 * # Safety
 * `result` must be a live handle or null.
 */
uint64_t nm_search_result_nodes(const struct NmSearchResult *result);

/**
 * Quiescence nodes only.
 *
 * # Safety
 * `result` must be a live handle or null.
 */
uint64_t nm_search_result_qnodes(const struct NmSearchResult *result);

/**
 * Number of zugzwang re-searches performed by verification.
 *
 * # Safety
 * `result` must be a live handle or null.
 */
uint64_t nm_search_result_zugzwang_researches(const struct NmSearchResult *result);

/**
 * Writes the best move in UCI notation.
 *
 * # Safety
 * `result` must be a live handle; `buf` must hold `len` bytes; `needed` may be null.
 */
enum NmStatus nm_search_result_best_move(const struct NmSearchResult *result,
                                         char *buf,
                                         size_t len,
                                         size_t *needed);

/**
 * Writes the principal variation as space-separated UCI moves.
 *
 * # Safety
 * As for `nm_search_result_best_move`.
 */
enum NmStatus nm_search_result_pv(const struct NmSearchResult *result,
                                  char *buf,
                                  size_t len,
                                  size_t *needed);

/**
 * Formats `100 * (other - baseline) / baseline` as e.g. `+267.46%`.
 *
 * # Safety
 * `buf` must hold `len` bytes; `needed` may be null.
 */
enum NmStatus nm_percent_delta(uint64_t other,
                               uint64_t baseline,
                               char *buf,
                               size_t len,
                               size_t *needed);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* NULLMOVE_H */
