#ifndef QDENOISE_H
#define QDENOISE_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

#define QDN_METHOD_PROPOSED 0

#define QDN_METHOD_QFT 1

#define QDN_METHOD_QWT 2

#define QDN_METHOD_NONE 3

/**
 * Status codes returned by every fallible function.
 */
typedef enum QdnStatus {
  QDN_STATUS_OK = 0,
  QDN_STATUS_NULL_POINTER = 1,
  QDN_STATUS_INVALID_ARGUMENT = 2,
  QDN_STATUS_CAPACITY = 3,
  QDN_STATUS_INDEX = 4,
  QDN_STATUS_DIMENSION = 5,
  QDN_STATUS_MEASUREMENT = 6,
  QDN_STATUS_DOMAIN = 7,
  QDN_STATUS_SAMPLING = 8,
  QDN_STATUS_CONFIG = 9,
  QDN_STATUS_IO = 10,
  QDN_STATUS_PANIC = 11,
} QdnStatus;

/**
 * Denoiser settings.
 */
typedef struct QdnConfig QdnConfig;

/**
 * Output of one denoising run.
 */
typedef struct QdnResult QdnResult;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failure on this thread, or NULL. Valid until the next
 * failing call on the same thread.
 */
const char *qdn_last_error_message(void);

/**
 * Library version as a static NUL-terminated string.
 */
const char *qdn_version(void);

/**
 * Creates a configuration for windows of `2^m` samples, `2^p` windows,
 * `a` amplitude bits and `b` mean bits.
 *
 * # Safety
 * `out` must be a valid pointer to writable storage for one handle.
 */
enum QdnStatus qdn_config_new(uint32_t m,
                              uint32_t p,
                              uint32_t a,
                              uint32_t b,
                              struct QdnConfig **out);

/**
 * Creates a configuration from a named profile: "smoke", "desk" or "full".
 *
 * # Safety
 * `name` must be a NUL-terminated string; `out` must be writable.
 */
enum QdnStatus qdn_config_new_profile(const char *name, struct QdnConfig **out);

/**
 * # Safety
 * `cfg` must come from a `qdn_config_new*` call and not be used afterwards. NULL is ignored.
 */
void qdn_config_free(struct QdnConfig *cfg);

/**
 * Uses the same threshold `tau` in every window.
 *
 * # Safety
 * `cfg` must be a live handle.
 */
enum QdnStatus qdn_config_set_threshold_constant(struct QdnConfig *cfg, uint64_t tau);

/**
 * Interpolates the threshold linearly from `tau_min` to `tau_max` over the window mean.
 *
 * # Safety
 * `cfg` must be a live handle.
 */
enum QdnStatus qdn_config_set_threshold_linear(struct QdnConfig *cfg,
                                               int64_t tau_min,
                                               int64_t tau_max);

/**
 * Marks `|k| <= tau` when `symmetric` is nonzero, `k <= tau` otherwise.
 *
 * # Safety
 * `cfg` must be a live handle.
 */
enum QdnStatus qdn_config_set_symmetric_oracle(struct QdnConfig *cfg, bool symmetric);

/**
 * Fraction of coefficients the baselines keep, in (0, 1].
 *
 * # Safety
 * `cfg` must be a live handle.
 */
enum QdnStatus qdn_config_set_keep_fraction(struct QdnConfig *cfg, double fraction);

/**
 * Gate phase noise of strength `epsilon`; a negative value disables it.
 *
 * # Safety
 * `cfg` must be a live handle.
 */
enum QdnStatus qdn_config_set_phase_noise(struct QdnConfig *cfg, double epsilon);

/**
 * Bit-flip probability per transform gate; a negative value disables it.
 *
 * # Safety
 * `cfg` must be a live handle.
 */
enum QdnStatus qdn_config_set_bit_flip(struct QdnConfig *cfg, double p_flip);

/**
 * Seed of the gate-noise generator.
 *
 * # Safety
 * `cfg` must be a live handle.
 */
enum QdnStatus qdn_config_set_noise_seed(struct QdnConfig *cfg, uint64_t seed);

/**
 * Number of samples a signal must have for this configuration.
 *
 * # Safety
 * `cfg` must be a live handle and `out` writable.
 */
enum QdnStatus qdn_config_signal_len(const struct QdnConfig *cfg, size_t *out);

/**
 * Denoises `len` samples with one of the `QDN_METHOD_*` methods.
 *
 * # Safety
 * `cfg` must be a live handle, `signal` must point to `len` doubles and
 * `out` must be writable. On success `*out` owns a result handle.
 */
enum QdnStatus qdn_denoise(const struct QdnConfig *cfg,
                           uint32_t method,
                           const double *signal,
                           size_t len,
                           struct QdnResult **out);

/**
 * # Safety
 * `res` must come from `qdn_denoise` and not be used afterwards. NULL is ignored.
 */
void qdn_result_free(struct QdnResult *res);

/**
 * Number of denoised samples, 0 for NULL.
 *
 * # Safety
 * `res` must be a live handle or NULL.
 */
size_t qdn_result_len(const struct QdnResult *res);

/**
 * Copies the denoised samples into `dst`, which holds `capacity` doubles.
 *
 * # Safety
 * `res` must be a live handle and `dst` must point to `capacity` writable doubles.
 */
enum QdnStatus qdn_result_copy_denoised(const struct QdnResult *res, double *dst, size_t capacity);

/**
 * Amplification rounds used, 0 for NULL.
 *
 * # Safety
 * `res` must be a live handle or NULL.
 */
size_t qdn_result_iterations(const struct QdnResult *res);

/**
 * Marked-subspace probability before amplification, NaN for NULL.
 *
 * # Safety
 * `res` must be a live handle or NULL.
 */
double qdn_result_marked_probability_before(const struct QdnResult *res);

/**
 * Marked-subspace probability after amplification, NaN for NULL.
 *
 * # Safety
 * `res` must be a live handle or NULL.
 */
double qdn_result_marked_probability_after(const struct QdnResult *res);

/**
 * Decoded samples clamped to the encoding range, 0 for NULL.
 *
 * # Safety
 * `res` must be a live handle or NULL.
 */
size_t qdn_result_clamped_samples(const struct QdnResult *res);

/**
 * SNR of `estimate` against `reference` in dB; +inf for an exact match.
 *
 * # Safety
 * Both arrays must hold `len` doubles and `out` must be writable.
 */
enum QdnStatus qdn_snr_db(const double *reference, const double *estimate, size_t len, double *out);

/**
 * PSNR of `estimate` against `reference` in dB; +inf for an exact match.
 *
 * # Safety
 * Both arrays must hold `len` doubles and `out` must be writable.
 */
enum QdnStatus qdn_psnr_db(const double *reference,
                           const double *estimate,
                           size_t len,
                           double *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* QDENOISE_H */
