#ifndef EXTREMAL_HARNACK_H
#define EXTREMAL_HARNACK_H

/*
 * C API of the extremal-harnack shared library.
 *
 * All functions return eh_status; output values go through out-parameters.
 * Strings returned through char** are heap-allocated and must be released
 * with eh_string_free. On any non-EH_OK status, eh_last_error_message()
 * returns a thread-local description of the failure.
 */

#include <stddef.h>

#if defined(_WIN32)
#define EH_API __declspec(dllexport)
#else
#define EH_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum eh_status {
    EH_OK = 0,
    EH_ERR_CONFIG = 1,   /* bad arguments, config, or JSON */
    EH_ERR_MATH = 2,     /* a mathematical check or precondition failed */
    EH_ERR_INTERNAL = 3  /* unexpected failure */
} eh_status;

EH_API const char* eh_version(void);

/* Thread-local message for the most recent failure in this thread. */
EH_API const char* eh_last_error_message(void);

EH_API void eh_string_free(char* s);

/*
 * Runs a named experiment command with a JSON config and returns the JSON
 * report. Commands: validate-phi, check-counterexample, solve,
 * probe-harnack, estimate-holder, global-harnack, min-principle, all.
 * The report is produced for every status; EH_ERR_MATH means the command
 * ran but a mathematical check failed.
 */
EH_API eh_status eh_run_command(const char* name, const char* config_json,
                                char** report_json_out);

/* ---- direct numeric entry points ------------------------------------- */

typedef struct eh_nonlinearity eh_nonlinearity;

/* Catalog ids: "identity", "logpow:beta=<f>", "pow:eps=<f>", "root". */
EH_API eh_status eh_nonlinearity_create(const char* id, eh_nonlinearity** out);
EH_API void eh_nonlinearity_destroy(eh_nonlinearity* nl);

EH_API eh_status eh_nonlinearity_phi(const eh_nonlinearity* nl, double t,
                                     double* out);
EH_API eh_status eh_nonlinearity_eta(const eh_nonlinearity* nl, double t,
                                     double* out);
EH_API eh_status eh_harnack_integral(const eh_nonlinearity* nl, double m,
                                     double M, double* out);
EH_API eh_status eh_scaling_radius(const eh_nonlinearity* nl, double A,
                                   double L2, double* out);

/*
 * Pucci extremal operators on a symmetric matrix given as the upper
 * triangle in row-major order (dim 2: a00,a01,a11; dim 3:
 * a00,a01,a02,a11,a12,a22).
 */
EH_API eh_status eh_pucci_minus(int dim, const double* upper, double lambda,
                                double Lambda, double* out);
EH_API eh_status eh_pucci_plus(int dim, const double* upper, double lambda,
                               double Lambda, double* out);

#ifdef __cplusplus
}
#endif

#endif /* EXTREMAL_HARNACK_H */
