#ifndef STRIPFOL_H
#define STRIPFOL_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result of a call.
 */
typedef enum {
  SF_STATUS_OK = 0,
  /**
   * The answer to a yes/no question is no.
   */
  SF_STATUS_FALSE = 1,
  SF_STATUS_NULL_POINTER = 2,
  SF_STATUS_INVALID_UTF8 = 3,
  SF_STATUS_PARSE_ERROR = 4,
  SF_STATUS_INVALID_SURFACE = 5,
  SF_STATUS_NOT_CONNECTED = 6,
  SF_STATUS_NOT_REDUCED = 7,
  SF_STATUS_INVALID_SHADOW = 8,
  SF_STATUS_OUT_OF_DOMAIN = 9,
  SF_STATUS_INTERNAL = 10,
  SF_STATUS_PANIC = 11,
} sf_status;

/**
 * Opaque handle to a validated surface.
 */
typedef struct sf_surface sf_surface;

/**
 * Static name of a status, e.g. `"NOT_REDUCED"`.
 */
const char *sf_status_name(sf_status status);

/**
 * Copy of the last error message on this thread, or null if the last call
 * succeeded. Free with [`sf_string_free`].
 */
char *sf_last_error(void);

/**
 * # Safety
 * `s` must be null or a string returned by this library, not yet freed.
 */
void sf_string_free(char *s);

/**
 * Parses and validates a surface document.
 *
 * # Safety
 * `text` must be a NUL-terminated string and `out` a writable pointer.
 */
sf_status sf_surface_parse(const char *text, sf_surface **out);

/**
 * # Safety
 * `surface` must be null or a handle from [`sf_surface_parse`], not yet freed.
 */
void sf_surface_free(sf_surface *surface);

/**
 * Diagnostics JSON for a document that parses but may not validate.
 * Returns `SF_STATUS_FALSE` when there are issues.
 *
 * # Safety
 * `text` must be a NUL-terminated string and `out_json` a writable pointer.
 */
sf_status sf_validate(const char *text, char **out_json);

/**
 * Canonical text form.
 *
 * # Safety
 * `surface` must be a live handle and `out` a writable pointer.
 */
sf_status sf_surface_serialize(const sf_surface *surface, char **out);

/**
 * Leaf records as a JSON array.
 *
 * # Safety
 * `surface` must be a live handle and `out_json` a writable pointer.
 */
sf_status sf_surface_leaves_json(const sf_surface *surface, char **out_json);

/**
 * Reduction outcome as JSON.
 *
 * # Safety
 * `surface` must be a live handle and `out_json` a writable pointer.
 */
sf_status sf_surface_reduce_json(const sf_surface *surface, char **out_json);

/**
 * # Safety
 * `surface` must be a live handle and `out` a writable pointer.
 */
sf_status sf_surface_is_reduced(const sf_surface *surface, bool *out);

/**
 * Orientability of a connected surface.
 *
 * # Safety
 * `surface` must be a live handle and `out` a writable pointer.
 */
sf_status sf_surface_orientable(const sf_surface *surface, bool *out);

/**
 * Identity-component verdict for a shadow given as JSON. Returns
 * `SF_STATUS_OK` when the shadow is in the identity component and
 * `SF_STATUS_FALSE` otherwise; the verdict JSON is written in both cases.
 *
 * # Safety
 * `surface` must be a live handle, `shadow_json` a NUL-terminated string
 * and `out_json` a writable pointer.
 */
sf_status sf_check_h0(const sf_surface *surface, const char *shadow_json, char **out_json);

/**
 * # Safety
 * `ox` and `oy` must be writable pointers.
 */
sf_status sf_merge_homeo_raw(double x, double y, double *ox, double *oy);

/**
 * # Safety
 * `ox` and `oy` must be writable pointers.
 */
sf_status sf_merge_homeo_banded(double x, double y, double *ox, double *oy);

/**
 * # Safety
 * `ox` and `oy` must be writable pointers.
 */
sf_status sf_chain_homeo(double x, double y, double *ox, double *oy);

/**
 * `t / sqrt(1 + t^2)`.
 */
double sf_sigma(double t);

#endif  /* STRIPFOL_H */
