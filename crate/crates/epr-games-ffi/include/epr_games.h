#ifndef EPR_GAMES_H
#define EPR_GAMES_H

/* Generated by cbindgen from epr-games-ffi; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status code returned by every fallible call.
 */
typedef enum EprStatus {
  EPR_STATUS_OK = 0,
  /**
   * A required pointer argument was null.
   */
  EPR_STATUS_NULL_POINTER = 1,
  /**
   * An argument was out of range, non-finite, or otherwise malformed.
   */
  EPR_STATUS_INVALID_ARGUMENT = 2,
  /**
   * A probability parameter or table entry left `[0, 1]`.
   */
  EPR_STATUS_INVALID_PROBABILITY = 3,
  /**
   * The table failed a structural constraint required by the operation.
   */
  EPR_STATUS_CONSTRAINT_VIOLATION = 4,
  /**
   * The computation is undefined for these inputs.
   */
  EPR_STATUS_DEGENERATE = 5,
  /**
   * The payoff matrix is not in the game class the operation expects.
   */
  EPR_STATUS_WRONG_GAME_CLASS = 6,
} EprStatus;

/**
 * Correlation-domain classes, mirroring the library enum.
 */
typedef enum EprDomain {
  EPR_DOMAIN_FACTORIZABLE = 0,
  EPR_DOMAIN_LOCAL_NON_FACTORIZABLE = 1,
  EPR_DOMAIN_QUANTUM = 2,
  EPR_DOMAIN_SUPER_QUANTUM = 3,
} EprDomain;

/**
 * Opaque equilibrium set.
 */
typedef struct EprEquilibria EprEquilibria;

/**
 * Opaque joint-probability table.
 */
typedef struct EprTable EprTable;

/**
 * Constraint residuals plus the factorization, if one exists. When
 * `factorizable` is false the four marginals are zero.
 */
typedef struct EprValidation {
  bool ok;
  double normalization_residual;
  double symmetry_residual;
  double causality_residual;
  bool factorizable;
  double r;
  double s;
  double r_prime;
  double s_prime;
} EprValidation;

/**
 * Domain classification of a structurally valid table.
 */
typedef struct EprClassification {
  enum EprDomain domain;
  /**
   * Whether `|delta|` sits on the bound separating `domain` from the
   * next class, within the tolerance passed to the call.
   */
  bool boundary;
  double delta;
} EprClassification;

/**
 * One Nash equilibrium.
 */
typedef struct EprNash {
  double x;
  double y;
  double payoff_a;
  double payoff_b;
  bool strict;
} EprNash;

/**
 * Simulation tallies and derived statistics. `counts` is indexed
 * `4*pair + outcome` with pairs and outcomes in table order.
 */
typedef struct EprSimSummary {
  uint64_t runs;
  double mean_a;
  double mean_b;
  double stderr_a;
  double stderr_b;
  uint64_t counts[16];
} EprSimSummary;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version as a static NUL-terminated string; do not free.
 */
const char *epr_version(void);

/**
 * Static name for a status code; do not free.
 */
const char *epr_status_name(enum EprStatus status);

/**
 * Builds a table from 16 entries in `p1..p16` order.
 *
 * # Safety
 * `entries` must point to at least 16 readable `double`s; `out` must be
 * valid for writing one `*mut EprTable`.
 */
enum EprStatus epr_table_from_entries(const double *entries, struct EprTable **out);

/**
 * Builds the product table with marginals `r` and `s`.
 *
 * # Safety
 * `out` must be valid for writing one `*mut EprTable`.
 */
enum EprStatus epr_table_factorizable(double r, double s, struct EprTable **out);

/**
 * Builds a table from a factorizable baseline `(r, s)` plus offsets.
 *
 * # Safety
 * `out` must be valid for writing one `*mut EprTable`.
 */
enum EprStatus epr_table_general(double r,
                                 double s,
                                 double a,
                                 double b,
                                 double c,
                                 double d,
                                 double e,
                                 struct EprTable **out);

/**
 * Builds a table from the classical embedding with nonnegative offsets.
 *
 * # Safety
 * `out` must be valid for writing one `*mut EprTable`.
 */
enum EprStatus epr_table_embedding(double a,
                                   double b,
                                   double c,
                                   double d,
                                   double e,
                                   struct EprTable **out);

/**
 * Copies the 16 entries of `table` into `out` in `p1..p16` order.
 *
 * # Safety
 * `table` must be a live handle from this library; `out` must point to
 * writable storage for 16 `double`s.
 */
enum EprStatus epr_table_entries(const struct EprTable *table, double *out);

/**
 * Releases a table handle. Null is a no-op.
 *
 * # Safety
 * `table` must be null or a handle produced by this library that has not
 * been freed already.
 */
void epr_table_free(struct EprTable *table);

/**
 * Runs all structural validators at `tol` and reports residuals.
 *
 * # Safety
 * `table` must be a live handle; `out` must be valid for writing one
 * `EprValidation`.
 */
enum EprStatus epr_table_validate(const struct EprTable *table,
                                  double tol,
                                  struct EprValidation *out);

/**
 * Classifies a structurally valid table against the correlation bounds.
 *
 * # Safety
 * `table` must be a live handle; `out` must be valid for writing one
 * `EprClassification`.
 */
enum EprStatus epr_table_classify(const struct EprTable *table,
                                  double tol,
                                  struct EprClassification *out);

/**
 * Writes the correlation sum of `table` to `out`.
 *
 * # Safety
 * `table` must be a live handle; `out` must be valid for one `double`.
 */
enum EprStatus epr_chsh_delta(const struct EprTable *table, double *out);

/**
 * Closed-form correlation sum of the classical embedding,
 * `4*(a - c + 2e - 1/2)`. Pure; no validity check.
 */
double epr_chsh_delta_embedding(double a, double b, double c, double d, double e);

/**
 * Whether embedding offsets respect the quantum correlation bound.
 */
bool epr_cirelson_ok(double a, double b, double c, double d, double e, double tol);

/**
 * Writes the three offset summaries `eps1, eps2, eps3` to `out`.
 *
 * # Safety
 * `out` must point to writable storage for 3 `double`s.
 */
enum EprStatus epr_epsilons(double a, double b, double c, double d, double e, double *out);

/**
 * Expected payoffs of both players at the mixed profile `(x, y)`.
 *
 * # Safety
 * `table` must be a live handle; `out_a` and `out_b` must each be valid
 * for one `double`.
 */
enum EprStatus epr_payoff_direct(const struct EprTable *table,
                                 double a1,
                                 double a2,
                                 double a3,
                                 double a4,
                                 double x,
                                 double y,
                                 double *out_a,
                                 double *out_b);

/**
 * Computes the equilibrium set of the symmetric game over `table` and
 * writes an owned handle through `out`.
 *
 * # Safety
 * `table` must be a live handle; `out` must be valid for writing one
 * `*mut EprEquilibria`.
 */
enum EprStatus epr_equilibria(const struct EprTable *table,
                              double a1,
                              double a2,
                              double a3,
                              double a4,
                              double tol,
                              struct EprEquilibria **out);

/**
 * Number of discrete equilibrium points in `set`; 0 for null.
 *
 * # Safety
 * `set` must be null or a live handle from `epr_equilibria`.
 */
size_t epr_equilibria_count(const struct EprEquilibria *set);

/**
 * Whether every profile is an equilibrium (the listed points are then
 * corner representatives). False for null.
 *
 * # Safety
 * `set` must be null or a live handle from `epr_equilibria`.
 */
bool epr_equilibria_is_continuum(const struct EprEquilibria *set);

/**
 * Copies equilibrium `index` into `out`.
 *
 * # Safety
 * `set` must be a live handle; `out` must be valid for one `EprNash`.
 */
enum EprStatus epr_equilibria_get(const struct EprEquilibria *set,
                                  size_t index,
                                  struct EprNash *out);

/**
 * Releases an equilibrium-set handle. Null is a no-op.
 *
 * # Safety
 * `set` must be null or a handle produced by `epr_equilibria` that has
 * not been freed already.
 */
void epr_equilibria_free(struct EprEquilibria *set);

/**
 * Runs the referee protocol for `runs` rounds at profile `(x, y)` and
 * writes the tallies and payoff statistics. Identical inputs produce
 * identical summaries regardless of worker count.
 *
 * # Safety
 * `table` must be a live handle; `out` must be valid for writing one
 * `EprSimSummary`.
 */
enum EprStatus epr_simulate(const struct EprTable *table,
                            double a1,
                            double a2,
                            double a3,
                            double a4,
                            double x,
                            double y,
                            uint64_t runs,
                            uint64_t seed,
                            struct EprSimSummary *out);

/**
 * Whether `table` factorizes at `tol`; marginals are written to `out4`
 * as `r, s, r', s'` when it does.
 *
 * # Safety
 * `table` must be a live handle; `out4` must be null or valid for 4
 * `double`s.
 */
bool epr_table_factorize(const struct EprTable *table, double tol, double *out4);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* EPR_GAMES_H */
