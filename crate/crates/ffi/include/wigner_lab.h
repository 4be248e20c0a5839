#ifndef WIGNER_LAB_H
#define WIGNER_LAB_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum WlStatus {
  WL_STATUS_OK = 0,
  WL_STATUS_NULL_POINTER = 1,
  /**
   * Input outside the physical domain (|v| ≥ 1, ξ ≤ 0, off-shell momentum).
   */
  WL_STATUS_DOMAIN = 2,
  /**
   * A precondition such as unit norm or basis orthonormality failed.
   */
  WL_STATUS_PRECONDITION = 3,
  /**
   * Mismatched grids or a packet without an analytic profile.
   */
  WL_STATUS_STRUCTURAL = 4,
  /**
   * Quadrature order outside 1..=256.
   */
  WL_STATUS_INVALID_ARGUMENT = 5,
  WL_STATUS_PANIC = 6,
} WlStatus;

/**
 * A Lorentz boost along x for a particle of fixed mass.
 */
typedef struct WlBoost WlBoost;

/**
 * A two-component momentum-space wave packet on a quadrature grid.
 */
typedef struct WlPacket WlPacket;

/**
 * Reduced spin state `½[[1+γ, δ], [δ*, 1−γ]]` and its entropy in nats.
 */
typedef struct WlSpinState {
  double gamma;
  double delta_re;
  double delta_im;
  double entropy;
} WlSpinState;

/**
 * Click counts for the static and the moving observer.
 */
typedef struct WlClickCounts {
  uint64_t static_up;
  uint64_t static_diag;
  uint64_t moving_up;
  uint64_t moving_diag;
} WlClickCounts;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version as a static NUL-terminated string.
 */
const char *wl_version(void);

/**
 * Copies the calling thread's last error message into `buf` (NUL-terminated,
 * truncated to `len`) and returns the full message length without the NUL.
 * Returns 0 when no error has been recorded.
 *
 * # Safety
 * `buf` must be null or valid for `len` bytes of writes.
 */
size_t wl_last_error_message(char *buf, size_t len);

/**
 * # Safety
 * `out` must be valid for a pointer write.
 */
enum WlStatus wl_boost_new(double v, double m, struct WlBoost **out);

/**
 * # Safety
 * `boost` must be null or a handle from `wl_boost_new` not yet freed.
 */
void wl_boost_free(struct WlBoost *boost);

/**
 * Rapidity θ and whether |v| was clamped below 1.
 *
 * # Safety
 * `boost` must be a live handle; `theta` and `clamped` valid for writes.
 */
enum WlStatus wl_boost_rapidity(const struct WlBoost *boost, double *theta, bool *clamped);

/**
 * Gaussian packet of width `xi` in the +x spin eigenstate on a
 * Gauss–Hermite grid of `order` nodes per axis.
 *
 * # Safety
 * `out` must be valid for a pointer write.
 */
enum WlStatus wl_packet_sigma_x(double xi, size_t order, struct WlPacket **out);

/**
 * # Safety
 * `packet` must be null or a handle from this library not yet freed.
 */
void wl_packet_free(struct WlPacket *packet);

/**
 * The packet seen by the moving observer, as a new handle.
 *
 * # Safety
 * `packet` and `boost` must be live handles; `out` valid for a pointer write.
 */
enum WlStatus wl_packet_boost(const struct WlPacket *packet,
                              const struct WlBoost *boost,
                              struct WlPacket **out);

/**
 * Number of grid nodes.
 *
 * # Safety
 * `packet` must be a live handle; `out` valid for a write.
 */
enum WlStatus wl_packet_len(const struct WlPacket *packet, size_t *out);

/**
 * `∫ |a₁|² + |a₂|² d³p`.
 *
 * # Safety
 * `packet` must be a live handle; `out` valid for a write.
 */
enum WlStatus wl_packet_norm(const struct WlPacket *packet, double *out);

/**
 * Traces out momentum.
 *
 * # Safety
 * `packet` must be a live handle; `out` valid for a write.
 */
enum WlStatus wl_packet_reduce(const struct WlPacket *packet, struct WlSpinState *out);

/**
 * Narrow-packet coherence `δ(ξ, m, v)`.
 *
 * # Safety
 * `out` must be valid for a write.
 */
enum WlStatus wl_analytic_delta(double xi, double m, double v, double *out);

/**
 * Entropy of `½[[1, δ], [δ, 1]]` in nats.
 *
 * # Safety
 * `out` must be valid for a write.
 */
enum WlStatus wl_analytic_entropy(double delta, double *out);

/**
 * Pointwise efficiency of the moving detector at the on-shell momentum `p`.
 *
 * # Safety
 * `boost` must be a live handle; `out` valid for a write.
 */
enum WlStatus wl_detector_efficiency(double px,
                                     double py,
                                     double pz,
                                     const struct WlBoost *boost,
                                     double *out);

/**
 * Efficiency averaged over the boosted packet of width `xi`.
 *
 * # Safety
 * `boost` must be a live handle; `out` valid for a write.
 */
enum WlStatus wl_mean_efficiency(double xi, const struct WlBoost *boost, size_t order, double *out);

/**
 * Boosted orthogonality residual for σˣ records with real ket overlap
 * `overlap_c`, apparatus packets of width `xi`.
 *
 * # Safety
 * `boost` must be a live handle; `out` valid for a write.
 */
enum WlStatus wl_collapse_residual(double xi,
                                   double overlap_c,
                                   const struct WlBoost *boost,
                                   size_t order,
                                   double *out);

/**
 * Monte Carlo σˣ clicks for both observers. Deterministic in `seed`.
 *
 * # Safety
 * `boost` must be a live handle; `out` valid for a write.
 */
enum WlStatus wl_clicks_run(double xi,
                            const struct WlBoost *boost,
                            uint64_t samples,
                            uint64_t seed,
                            struct WlClickCounts *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* WIGNER_LAB_H */
