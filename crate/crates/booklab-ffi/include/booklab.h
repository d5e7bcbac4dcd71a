#ifndef BOOKLAB_H
#define BOOKLAB_H

/* Generated by cbindgen from the booklab-ffi crate; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Edge color.
 */
typedef enum {
  BLK_COLOR_RED = 0,
  BLK_COLOR_BLUE = 1,
} BlkColor;

/**
 * Result of a booklab call.
 */
typedef enum {
  BLK_STATUS_OK = 0,
  /**
   * A numeric argument was outside its domain.
   */
  BLK_STATUS_DOMAIN = 1,
  /**
   * An operation precondition was violated.
   */
  BLK_STATUS_PRECONDITION = 2,
  /**
   * Persistence format violation.
   */
  BLK_STATUS_FORMAT = 3,
  /**
   * Underlying I/O failure.
   */
  BLK_STATUS_IO = 4,
  /**
   * The instance exceeds an exhaustive-processing cap.
   */
  BLK_STATUS_TOO_LARGE = 5,
  /**
   * A search hit its budget without a definitive answer.
   */
  BLK_STATUS_INCONCLUSIVE = 6,
  /**
   * No monochromatic clique of the requested size exists.
   */
  BLK_STATUS_NO_SPINE = 7,
  /**
   * A supplied spine is not monochromatic.
   */
  BLK_STATUS_NOT_MONOCHROMATIC = 8,
  /**
   * A required pointer argument was null.
   */
  BLK_STATUS_NULL_ARGUMENT = 9,
  /**
   * A string argument was not valid UTF-8.
   */
  BLK_STATUS_INVALID_UTF8 = 10,
  /**
   * A supplied buffer was too small.
   */
  BLK_STATUS_BUFFER_TOO_SMALL = 11,
  /**
   * The callee panicked; state may be stale but memory is intact.
   */
  BLK_STATUS_PANIC = 12,
} BlkStatus;

/**
 * Opaque two-coloring of a complete graph.
 */
typedef struct BlkColoring BlkColoring;

/**
 * Opaque extension-count spectrum.
 */
typedef struct BlkSpectrum BlkSpectrum;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Copies the calling thread's last error message (NUL-terminated) into
 * `buf`. Returns the full message length in bytes, excluding the NUL; a
 * return value of `cap` or more means the message was truncated. Passing
 * a null `buf` just queries the length.
 */
uintptr_t blk_last_error_message(char *buf, uintptr_t cap);

/**
 * Builds a coloring of `K_n` whose blue edges are the `pair_count`
 * unordered pairs in `edges` (flattened as u, v, u, v, ...); all other
 * distinct pairs are red.
 *
 * # Safety
 * `edges` must point to `2 * pair_count` readable `uint32_t`s (or be null
 * with `pair_count == 0`), and `out` must be a valid pointer.
 */
BlkStatus blk_coloring_build(uintptr_t n,
                             const uint32_t *edges,
                             uintptr_t pair_count,
                             BlkColoring **out);

/**
 * Balanced k-partite coloring on `k * part_size` vertices: blue inside
 * contiguous blocks, red across.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
BlkStatus blk_coloring_kpartite(uintptr_t k, uintptr_t part_size, BlkColoring **out);

/**
 * Seeded p-random coloring with blue probability `p_num / p_den`
 * (reproducible across platforms).
 *
 * # Safety
 * `out` must be a valid pointer.
 */
BlkStatus blk_coloring_random(uintptr_t n,
                              int64_t p_num,
                              int64_t p_den,
                              uint64_t seed,
                              BlkColoring **out);

/**
 * Loads a coloring from a kcg v1 file.
 *
 * # Safety
 * `path` must be a NUL-terminated string and `out` a valid pointer.
 */
BlkStatus blk_coloring_load(const char *path, BlkColoring **out);

/**
 * Writes the coloring in the canonical kcg v1 format.
 *
 * # Safety
 * `h` must be a live handle from this library; `path` a NUL-terminated
 * string.
 */
BlkStatus blk_coloring_save(const BlkColoring *h, const char *path);

/**
 * Releases a coloring handle. Null is a no-op.
 *
 * # Safety
 * `h` must be a handle previously returned by this library and not yet
 * freed.
 */
void blk_coloring_free(BlkColoring *h);

/**
 * Number of vertices; 0 for a null handle.
 *
 * # Safety
 * `h` must be a live handle or null.
 */
uintptr_t blk_coloring_vertex_count(const BlkColoring *h);

/**
 * Whether edge (u, v) is blue.
 *
 * # Safety
 * `h` must be a live handle; `out` a valid pointer.
 */
BlkStatus blk_coloring_is_blue(const BlkColoring *h, uintptr_t u, uintptr_t v, bool *out);

/**
 * Total number of unordered edges of `color`.
 *
 * # Safety
 * `h` must be a live handle; `out` a valid pointer.
 */
BlkStatus blk_coloring_edge_count(const BlkColoring *h, BlkColor color, uint64_t *out);

/**
 * Exact number of monochromatic k-cliques of `color`.
 *
 * # Safety
 * `h` must be a live handle; `out` a valid pointer.
 */
BlkStatus blk_count_cliques(const BlkColoring *h, BlkColor color, uintptr_t k, uint64_t *out);

/**
 * The spine with the most pages. `spine_out` receives the k spine
 * vertices and must have capacity for `k` entries; `pages_out` receives
 * the page count.
 *
 * # Safety
 * `h` must be a live handle; `spine_out` must point to `k` writable
 * u64 slots; `pages_out` must be valid.
 */
BlkStatus blk_max_book(const BlkColoring *h,
                       BlkColor color,
                       uintptr_t k,
                       uint64_t *spine_out,
                       uint64_t *pages_out);

/**
 * Computes the extension-count spectrum of `color` at spine size `k`.
 *
 * # Safety
 * `h` must be a live handle; `out` a valid pointer.
 */
BlkStatus blk_spectrum_new(const BlkColoring *h, BlkColor color, uintptr_t k, BlkSpectrum **out);

/**
 * Number of distinct page counts in the histogram.
 *
 * # Safety
 * `s` must be a live spectrum handle or null.
 */
uintptr_t blk_spectrum_entry_count(const BlkSpectrum *s);

/**
 * Reads histogram entry `idx` (ascending page order).
 *
 * # Safety
 * `s` must be a live spectrum handle; out-pointers must be valid.
 */
BlkStatus blk_spectrum_entry(const BlkSpectrum *s,
                             uintptr_t idx,
                             uint64_t *pages_out,
                             uint64_t *spines_out);

/**
 * Total number of spines in the spectrum.
 *
 * # Safety
 * `s` must be a live spectrum handle or null.
 */
uint64_t blk_spectrum_total_spines(const BlkSpectrum *s);

/**
 * Releases a spectrum handle. Null is a no-op.
 *
 * # Safety
 * `s` must be a handle previously returned by this library and not yet
 * freed.
 */
void blk_spectrum_free(BlkSpectrum *s);

/**
 * The k-partite lower bound `k (n + k - 1) + 1`.
 */
uint64_t blk_goodness_bound(uint64_t k, uint64_t n);

/**
 * The random lower bound `(c^{1/k} + 1)^k n` for `c = c_num / c_den`.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
BlkStatus blk_random_bound(int64_t c_num, int64_t c_den, uintptr_t k, uintptr_t n, double *out);

/**
 * The threshold `k1(p)`.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
BlkStatus blk_k1(double p, double *out);

/**
 * `k2(p) = k1(1 - p)`.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
BlkStatus blk_k2(double p, double *out);

/**
 * The infimum `c1(k)` of the random-regime range (1 when empty).
 *
 * # Safety
 * `out` must be a valid pointer.
 */
BlkStatus blk_c1(uint32_t k, double *out);

/**
 * The exact rational `rho = 1/(3k^2 - k)` as numerator/denominator.
 *
 * # Safety
 * Out-pointers must be valid.
 */
BlkStatus blk_aes_rho(uint32_t k, int64_t *num_out, int64_t *den_out);

/**
 * Exhaustive arrowing decision: does every coloring of `K_vertices`
 * contain a red k-book with `red_pages` pages or a blue one with
 * `blue_pages`?
 *
 * # Safety
 * `out` must be a valid pointer.
 */
BlkStatus blk_arrow(uintptr_t vertices,
                    uintptr_t k,
                    uintptr_t red_pages,
                    uintptr_t blue_pages,
                    uint64_t node_budget,
                    bool *out);

/**
 * Smallest N at which the arrowing holds, up to `cap`. On `BLK_STATUS_OK`
 * writes the exact value and sets `*exact_out = true`, or the proven
 * lower bound with `*exact_out = false` when the cap was reached.
 *
 * # Safety
 * Out-pointers must be valid.
 */
BlkStatus blk_ramsey_number(uintptr_t k,
                            uintptr_t red_pages,
                            uintptr_t blue_pages,
                            uintptr_t cap,
                            uint64_t *value_out,
                            bool *exact_out);

/**
 * Exhaustive (p, theta)-quasirandomness scan (n <= 18). Writes whether a
 * violating pair exists and the worst deviation as an exact rational.
 *
 * # Safety
 * `h` must be a live handle; out-pointers must be valid.
 */
BlkStatus blk_quasi_exhaustive(const BlkColoring *h,
                               int64_t p_num,
                               int64_t p_den,
                               int64_t theta_num,
                               int64_t theta_den,
                               bool *violated_out,
                               int64_t *dev_num_out,
                               int64_t *dev_den_out);

/**
 * Exact extension-variance identity check at rational p.
 *
 * # Safety
 * `h` must be a live handle; `equal_out` must be valid.
 */
BlkStatus blk_identity_check(const BlkColoring *h,
                             uintptr_t k,
                             int64_t p_num,
                             int64_t p_den,
                             bool *equal_out);

/**
 * Upper bound on the recoloring distance to a balanced complete
 * k-partite red graph.
 *
 * # Safety
 * `h` must be a live handle; `out` must be valid.
 */
BlkStatus blk_kpartite_distance(const BlkColoring *h,
                                uintptr_t k,
                                uint64_t restarts,
                                uint64_t seed,
                                uint64_t *out);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* BOOKLAB_H */
