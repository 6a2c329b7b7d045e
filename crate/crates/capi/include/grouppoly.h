#ifndef GROUPPOLY_H
#define GROUPPOLY_H

/* Generated by cbindgen; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes; `Ok` is zero, everything else names the failure class.
 */
typedef enum GpStatus {
  GpStatus_Ok = 0,
  GpStatus_VerificationFailed = 1,
  GpStatus_InvalidInput = 2,
  GpStatus_NullPointer = 3,
} GpStatus;

/**
 * Opaque handle to a loaded finite group.
 */
typedef struct GpGroup GpGroup;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Last error message on this thread, or null when the previous call
 * succeeded. The pointer stays valid until the next failing call on the
 * same thread; do not free it.
 */
const char *gp_last_error_message(void);

/**
 * Load a builtin group: `Zn:<k>`, `Sn:<k>`, `An:<k>`, `D:<2k>`, `Q8`,
 * `SL23`, or products joined by `x`. Returns null on failure.
 *
 * # Safety
 * `spec` must be a valid NUL-terminated string or null.
 */
struct GpGroup *gp_group_builtin(const char *spec);

/**
 * Load a group from a Cayley-table file (line 1 = order, then 1-based
 * rows). Returns null on failure.
 *
 * # Safety
 * `path` must be a valid NUL-terminated string or null.
 */
struct GpGroup *gp_group_from_cayley_file(const char *path);

/**
 * Load a group from a permutation-generator file, one cycle-notation
 * generator per line. Returns null on failure.
 *
 * # Safety
 * `path` must be a valid NUL-terminated string or null.
 */
struct GpGroup *gp_group_from_perm_file(const char *path);

/**
 * The normalizer of a Sylow p-subgroup of `group`, induced as a group in
 * its own right. Returns null on failure; `group` stays valid.
 *
 * # Safety
 * `group` must be a handle from one of the constructors, not yet freed.
 */
struct GpGroup *gp_group_sylow_normalizer(const struct GpGroup *group, uint64_t p);

/**
 * # Safety
 * `group` must be a handle from one of the constructors or null; it must
 * not be used after this call.
 */
void gp_group_free(struct GpGroup *group);

/**
 * Group order; 0 for a null handle.
 *
 * # Safety
 * `group` must be a live handle or null.
 */
uint64_t gp_group_order(const struct GpGroup *group);

/**
 * Number of conjugacy classes; 0 for a null handle.
 *
 * # Safety
 * `group` must be a live handle or null.
 */
uint64_t gp_group_class_count(const struct GpGroup *group);

/**
 * Group exponent; 0 for a null handle.
 *
 * # Safety
 * `group` must be a live handle or null.
 */
uint64_t gp_group_exponent(const struct GpGroup *group);

/**
 * Free a string returned by any of the `_json` functions.
 *
 * # Safety
 * `s` must be a pointer previously returned by this library, or null.
 */
void gp_string_free(char *s);

/**
 * Conjugacy class data as JSON.
 *
 * # Safety
 * `group` must be a live handle.
 */
char *gp_classes_json(const struct GpGroup *group);

/**
 * Exact ordinary character table as JSON.
 *
 * # Safety
 * `group` must be a live handle.
 */
char *gp_chartable_json(const struct GpGroup *group);

/**
 * Degree polynomial of the given partition (both routes asserted equal),
 * as JSON.
 *
 * # Safety
 * `group` must be a live handle; `partition_spec` a valid string.
 */
char *gp_degree_polynomial_json(const struct GpGroup *group, const char *partition_spec);

/**
 * Factored Frobenius polynomial of the given partition as JSON.
 *
 * # Safety
 * `group` must be a live handle; `partition_spec` a valid string.
 */
char *gp_frobenius_json(const struct GpGroup *group, const char *partition_spec);

/**
 * McKay comparison verdict as JSON. `subfield_csv` lists Galois residues
 * separated by commas; pass "1" (or an empty string) for the splitting
 * field.
 *
 * # Safety
 * `group` must be a live handle; `subfield_csv` a valid string or null.
 */
char *gp_mckay_json(const struct GpGroup *group,
                    uint64_t p,
                    const char *subfield_csv,
                    uint64_t seed);

/**
 * Normal-subgroup lattice as JSON.
 *
 * # Safety
 * `group` must be a live handle.
 */
char *gp_lattice_json(const struct GpGroup *group);

/**
 * Run the full invariant suite; the JSON lists each check with its
 * verdict.
 *
 * # Safety
 * `group` must be a live handle.
 */
char *gp_verify_all_json(const struct GpGroup *group, uint64_t seed);

/**
 * Decide whether the two groups' Frobenius polynomials are equal up to a
 * variable permutation; writes the verdict through `out_equal`.
 *
 * # Safety
 * `a` and `b` must be live handles; `out_equal` a valid pointer.
 */
enum GpStatus gp_compare(const struct GpGroup *a, const struct GpGroup *b, bool *out_equal);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* GROUPPOLY_H */
