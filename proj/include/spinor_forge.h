#ifndef SPINOR_FORGE_H
#define SPINOR_FORGE_H

/* C interface to spinor_forge.
 *
 * Every fallible call returns an sf_status; on failure sf_last_error()
 * describes it (thread-local, valid until the next call on that thread).
 * Strings returned through char** are owned by the caller and released with
 * sf_string_free. Handles are released with their *_free function; passing
 * NULL to a free function is allowed. */

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define SF_API __declspec(dllexport)
#else
#define SF_API __attribute__((visibility("default")))
#endif

typedef enum sf_status {
  SF_OK = 0,
  SF_ERR_INVALID_ARGUMENT = 1,
  SF_ERR_PARSE = 2,
  SF_ERR_ZERO_CURRENT = 3,
  SF_ERR_UNKNOWN_PATTERN = 4,
  SF_ERR_SAMPLER_EXHAUSTED = 5,
  SF_ERR_NOT_A_SYMMETRY = 6,
  SF_ERR_SINGULAR_MATRIX = 7,
  SF_ERR_PRECONDITION = 8,
  SF_ERR_BOTH_BLOCKS_ZERO = 9,
  SF_ERR_ZERO_SPINOR = 10,
  SF_ERR_LINEARLY_DEPENDENT = 11,
  SF_ERR_OFF_SHELL = 12,
  SF_ERR_MASSIVE_INPUT = 13,
  SF_ERR_STEP_TOO_LARGE = 14,
  SF_ERR_CONSISTENCY = 15,
  SF_ERR_INTERNAL = 99
} sf_status;

typedef enum sf_mode { SF_MODE_EXACT = 0, SF_MODE_FLOAT = 1 } sf_mode;

typedef struct sf_spinor sf_spinor;
/* A symmetry candidate: 4x4 matrix plus the antilinear flag. */
typedef struct sf_matrix sf_matrix;

SF_API const char* sf_version(void);
SF_API const char* sf_last_error(void);
SF_API const char* sf_status_name(sf_status status);
SF_API void sf_string_free(char* s);

/* Spinors. JSON is {"spinor": [[re,im] x4]} or the bare array. */
SF_API sf_status sf_spinor_from_json(const char* json, sf_mode mode, sf_spinor** out);
SF_API sf_status sf_spinor_to_json(const sf_spinor* psi, char** out);
SF_API sf_mode sf_spinor_mode(const sf_spinor* psi);
SF_API void sf_spinor_free(sf_spinor* psi);
/* Uniform random Gaussian-rational spinor (exact mode). */
SF_API sf_status sf_spinor_random(uint64_t seed, sf_spinor** out);
/* Exact spinor of Lounesto class cls (1..6), deterministic in seed. */
SF_API sf_status sf_sample(int cls, uint64_t seed, sf_spinor** out);

SF_API sf_status sf_classify(const sf_spinor* psi, double null_tol, int* cls);
SF_API sf_status sf_classify_json(const sf_spinor* psi, double null_tol, char** out);
SF_API sf_status sf_bilinears_json(const sf_spinor* psi, char** out);
/* pass = 1 when every residual vanishes (float: <= tol * J0). */
SF_API sf_status sf_fpk_json(const sf_spinor* psi, double tol, char** out, int* pass);
/* JSON for spinors seed..seed+n-1; csv != 0 selects CSV. */
SF_API sf_status sf_sample_report(int cls, uint64_t seed, int n, int csv, char** out);

/* Candidates. JSON is {"matrix": [...], "antilinear": bool}, a bare matrix
 * (flat 16 or nested 4x4) or a name: identity, gamma0..gamma3, gamma5 with
 * an optional leading '-'. */
SF_API sf_status sf_matrix_from_json(const char* json, sf_mode mode, sf_matrix** out);
SF_API sf_status sf_matrix_named(const char* name, sf_mode mode, sf_matrix** out);
SF_API sf_status sf_matrix_to_json(const sf_matrix* m, char** out);
SF_API sf_status sf_matrix_set_antilinear(sf_matrix* m, int antilinear);
SF_API sf_mode sf_matrix_mode(const sf_matrix* m);
SF_API void sf_matrix_free(sf_matrix* m);

SF_API sf_status sf_beta_extract_json(const sf_matrix* m, double tol, char** out);
/* classes: array of class numbers, or NULL/0 for all six. */
SF_API sf_status sf_symmetry_check_json(const sf_matrix* m, const int* classes, size_t n_classes, int n,
                                        uint64_t seed, double tol, double null_tol, char** out, int* pass);
/* Apply y first, then x. */
SF_API sf_status sf_compose(const sf_matrix* x, const sf_matrix* y, sf_matrix** out);
SF_API sf_status sf_compose_json(const sf_matrix* x, const sf_matrix* y, double tol, char** out, int* pass);
SF_API sf_status sf_inverse(const sf_matrix* m, sf_matrix** out);
SF_API sf_status sf_inverse_json(const sf_matrix* m, double tol, char** out, int* pass);
SF_API sf_status sf_group_check_json(const sf_matrix* const* generators, size_t n, int max_word, double tol,
                                     char** out, int* pass);

/* Dynamics. request is a JSON object (see README); svg is produced only when
 * the request has "plot": true and svg is non-NULL. */
SF_API sf_status sf_evolve(const char* request, char** summary, char** csv, char** svg, int* pass);
SF_API sf_status sf_exotic_evolve(const char* request, char** summary, char** csv, char** svg, int* pass);
/* Massless divergence check; m != 0 gives SF_ERR_MASSIVE_INPUT. */
SF_API sf_status sf_liouville_check(const double momentum[4], double mass, uint64_t phi_seed, int n_points,
                                    double tol, double* max_divergence, int* pass);

#ifdef __cplusplus
}
#endif

#endif
