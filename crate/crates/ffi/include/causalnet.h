/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#ifndef CAUSALNET_H
#define CAUSALNET_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum CnStatus {
  CN_STATUS_OK = 0,
  CN_STATUS_NULL_POINTER = 1,
  CN_STATUS_INVALID_ARGUMENT = 2,
  CN_STATUS_COMPUTATION_FAILED = 3,
  CN_STATUS_PANIC = 4,
} CnStatus;

typedef struct CnAlgebra CnAlgebra;

typedef struct CnNet CnNet;

typedef struct CnRegion CnRegion;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or NULL. Free with
 * `cn_string_free`.
 */
char *cn_last_error(void);

void cn_string_free(char *s);

/**
 * Static version string; do not free.
 */
const char *cn_version(void);

/**
 * Cylinder `{|x| < a, |t| < tau}` on the window `[-t_max, t_max] × [-x_max, x_max]`
 * with cell size `h`.
 */
enum CnStatus cn_region_cylinder(double t_max,
                                 double x_max,
                                 double h,
                                 double a,
                                 double tau,
                                 struct CnRegion **out);

/**
 * Diamond `|t - t0| + |x - x0| < radius` on the window.
 */
enum CnStatus cn_region_diamond(double t_max,
                                double x_max,
                                double h,
                                double t0,
                                double x0,
                                double radius,
                                struct CnRegion **out);

enum CnStatus cn_region_complement(const struct CnRegion *r, struct CnRegion **out);

enum CnStatus cn_region_double_complement(const struct CnRegion *r, struct CnRegion **out);

enum CnStatus cn_region_domain_of_dependence(const struct CnRegion *r, struct CnRegion **out);

/**
 * Number of cells.
 */
enum CnStatus cn_region_len(const struct CnRegion *r, size_t *out);

/**
 * Whether the cell containing `(t, x)` belongs to the region. Points outside
 * the window are an invalid argument.
 */
enum CnStatus cn_region_contains_point(const struct CnRegion *r, double t, double x, bool *out);

enum CnStatus cn_region_is_subset(const struct CnRegion *a, const struct CnRegion *b, bool *out);

void cn_region_free(struct CnRegion *r);

/**
 * Smallest unital *-algebra containing `count` matrices of size `d × d`,
 * `d` at most 64.
 */
enum CnStatus cn_algebra_from_generators(size_t d,
                                         const double *data,
                                         size_t count,
                                         struct CnAlgebra **out);

/**
 * Full matrix algebra `M_d`.
 */
enum CnStatus cn_algebra_full(size_t d, struct CnAlgebra **out);

/**
 * `M_m ⊗ I_n` when `left`, else `I_m ⊗ M_n`.
 */
enum CnStatus cn_algebra_tensor_factor(size_t m, size_t n, bool left, struct CnAlgebra **out);

/**
 * Dimension as a vector space.
 */
enum CnStatus cn_algebra_dimension(const struct CnAlgebra *a, size_t *out);

enum CnStatus cn_algebra_is_factor(const struct CnAlgebra *a, bool *out);

enum CnStatus cn_algebra_commutant(const struct CnAlgebra *a, struct CnAlgebra **out);

enum CnStatus cn_algebra_center(const struct CnAlgebra *a, struct CnAlgebra **out);

/**
 * Equality as subspaces of `M_d`.
 */
enum CnStatus cn_algebra_same_as(const struct CnAlgebra *a, const struct CnAlgebra *b, bool *out);

void cn_algebra_free(struct CnAlgebra *a);

/**
 * Net over a Haar-random brick-wall circuit.
 */
enum CnStatus cn_net_new(size_t n_qubits, size_t depth, uint64_t seed, struct CnNet **out);

/**
 * Algebra of the region given as `count` pairs `(layer, site)` laid out flat.
 */
enum CnStatus cn_net_region_algebra(const struct CnNet *net,
                                    const size_t *cells,
                                    size_t count,
                                    struct CnAlgebra **out);

/**
 * Replays the cylinder-to-diamond argument on the given block and writes the
 * JSON report to `json_out` (free with `cn_string_free`). `lpc_out`, if not
 * NULL, receives whether `A(C) = A(C'')`.
 */
enum CnStatus cn_net_replay_proof(const struct CnNet *net,
                                  size_t first_layer,
                                  size_t layers,
                                  size_t first_site,
                                  size_t sites,
                                  char **json_out,
                                  bool *lpc_out);

void cn_net_free(struct CnNet *n);

/**
 * Runs the verification suites configured by `config` (the `key=value`
 * format of the `verify --config` file; may be empty or NULL for defaults)
 * without writing files. The report JSON goes to `json_out` (free with
 * `cn_string_free`) and the exit code the CLI would return to `exit_code`.
 */
enum CnStatus cn_run_checks(const char *config, char **json_out, int32_t *exit_code);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* CAUSALNET_H */
