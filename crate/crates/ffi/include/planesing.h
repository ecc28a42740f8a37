#ifndef PLANESING_H
#define PLANESING_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result code of every fallible call.
 */
typedef enum PsStatus {
  PS_STATUS_OK = 0,
  PS_STATUS_NULL_POINTER = 1,
  PS_STATUS_INVALID_UTF8 = 2,
  PS_STATUS_INVALID_INPUT = 3,
  PS_STATUS_NOT_FOUND = 4,
  PS_STATUS_PANIC = 5,
} PsStatus;

typedef enum PsClass {
  PS_CLASS_IMMERSION = 0,
  PS_CLASS_FOLD = 1,
  PS_CLASS_CUSP = 2,
  PS_CLASS_LIPS = 3,
  PS_CLASS_BEAKS = 4,
  PS_CLASS_SWALLOWTAIL = 5,
  PS_CLASS_CORANK_TWO = 6,
  PS_CLASS_DEGENERATE = 7,
  PS_CLASS_UNRECOGNIZED = 8,
} PsClass;

typedef enum PsSearchStatus {
  PS_SEARCH_STATUS_FOUND = 0,
  PS_SEARCH_STATUS_NO_SINGULARITY = 1,
  PS_SEARCH_STATUS_BOUNDARY_MINIMUM = 2,
  PS_SEARCH_STATUS_SOLVER_FAILED = 3,
} PsSearchStatus;

/**
 * Outcome of a first-singularity search.
 */
typedef struct PsFirstSingularity PsFirstSingularity;

/**
 * A map germ at a base point.
 */
typedef struct PsGerm PsGerm;

/**
 * A scalar conservation law with initial data.
 */
typedef struct PsProblem PsProblem;

/**
 * A classification report.
 */
typedef struct PsReport PsReport;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or NULL. The pointer is
 * valid until the next `ps_*` call on the same thread.
 */
const char *ps_last_error_message(void);

void ps_string_free(char *s);

/**
 * Germ at `(u1, u2)` of a map given as a JSON pair of polynomial specs.
 */
enum PsStatus ps_germ_from_json(const char *json, double u1, double u2, struct PsGerm **out);

/**
 * Germ at `(u1, u2)` of a built-in normal form such as `"lips"`.
 */
enum PsStatus ps_germ_from_builtin(const char *name, double u1, double u2, struct PsGerm **out);

void ps_germ_free(struct PsGerm *germ);

/**
 * Classifies `germ`. A non-positive `zero_rel` selects the default.
 */
enum PsStatus ps_classify(const struct PsGerm *germ, double zero_rel, struct PsReport **out);

enum PsStatus ps_report_class(const struct PsReport *report, enum PsClass *out);

enum PsStatus ps_report_json(const struct PsReport *report, char **out);

void ps_report_free(struct PsReport *report);

/**
 * Problem from JSON `{"f1": .., "f2": .., "phi": ..}`.
 */
enum PsStatus ps_problem_from_json(const char *json, struct PsProblem **out);

enum PsStatus ps_problem_from_builtin(const char *name, struct PsProblem **out);

void ps_problem_free(struct PsProblem *problem);

/**
 * Searches the box `[lo1, hi1] × [lo2, hi2]` sampled on `n1 × n2` nodes.
 */
enum PsStatus ps_first_singularity(const struct PsProblem *problem,
                                   double lo1,
                                   double lo2,
                                   double hi1,
                                   double hi2,
                                   uintptr_t n1,
                                   uintptr_t n2,
                                   double zero_rel,
                                   struct PsFirstSingularity **out);

enum PsStatus ps_first_singularity_status(const struct PsFirstSingularity *search,
                                          enum PsSearchStatus *out);

/**
 * Location `u_star[2]`, time and class of a found singularity; `NotFound`
 * for other outcomes. Any output pointer may be NULL.
 */
enum PsStatus ps_first_singularity_point(const struct PsFirstSingularity *search,
                                         double *u_star,
                                         double *t_star,
                                         enum PsClass *class_);

enum PsStatus ps_first_singularity_json(const struct PsFirstSingularity *search, char **out);

void ps_first_singularity_free(struct PsFirstSingularity *search);

/**
 * Writes `(Ξ₁, Ξ₂, Ξ₃)` at `(u1, u2)` from the closed-form expressions.
 */
enum PsStatus ps_xi_closed_form(const struct PsProblem *problem, double u1, double u2, double *out);

/**
 * Writes `(Ξ₁, Ξ₂, Ξ₃)` at `(u1, u2)` by differentiating `trace C` with jets.
 */
enum PsStatus ps_xi_autodiff(const struct PsProblem *problem, double u1, double u2, double *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* PLANESING_H */
