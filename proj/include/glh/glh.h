#ifndef GLH_GLH_H
#define GLH_GLH_H

/* C interface to the glh library. Every entry point returns a glh_status;
   on failure glh_last_error() describes the problem for the calling thread.
   Objects handed out through pointer arguments are owned by the caller and
   released with the matching *_free function. */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#if defined(GLH_BUILDING_LIBRARY)
#define GLH_API __declspec(dllexport)
#else
#define GLH_API __declspec(dllimport)
#endif
#else
#define GLH_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum glh_status {
  GLH_OK = 0,
  GLH_ERR_DOMAIN = 1,
  GLH_ERR_PARITY = 2,
  GLH_ERR_NOT_INVERTIBLE = 3,
  GLH_ERR_DEGREE_OVERFLOW = 4,
  GLH_ERR_PARSE = 5,
  GLH_ERR_ARGUMENT = 6,
  GLH_ERR_INTERNAL = 7
} glh_status;

typedef struct glh_report glh_report;
typedef struct glh_element glh_element;

typedef struct glh_options {
  double tol;
  uint64_t seed;
} glh_options;

GLH_API const char* glh_version(void);
GLH_API const char* glh_status_string(glh_status status);
/* Message of the most recent failure on this thread; empty after success. */
GLH_API const char* glh_last_error(void);
GLH_API glh_options glh_default_options(void);

/* Grassmann elements, exchanged as JSON text. */
GLH_API glh_status glh_element_parse(const char* json, int n, glh_element** out);
GLH_API glh_status glh_element_add(const glh_element* x, const glh_element* y, glh_element** out);
GLH_API glh_status glh_element_mul(const glh_element* x, const glh_element* y, glh_element** out);
GLH_API glh_status glh_element_inv(const glh_element* x, glh_element** out);
GLH_API glh_status glh_element_exp(const glh_element* x, glh_element** out);
GLH_API int glh_element_generators(const glh_element* x);
/* Returned string is owned by the element and valid until the next call on it. */
GLH_API const char* glh_element_to_json(glh_element* x);
GLH_API void glh_element_free(glh_element* x);

/* Commands. Path arguments that are optional accept NULL or "". */
GLH_API glh_status glh_group_selftest(const glh_options* opt, int count, int generators, int corrupt,
                                      glh_report** out);
GLH_API glh_status glh_cech_verify(const glh_options* opt, const char* nerve_path, const char* data_path,
                                   const char* higgs_path, glh_report** out);
GLH_API glh_status glh_hitchin_residual(const glh_options* opt, const char* metric_path,
                                        const char* higgs_path, int perturb, glh_report** out);
GLH_API glh_status glh_fatgraph_normalize(const glh_options* opt, const char* graph_path,
                                          const char* connection_path, glh_report** out);
GLH_API glh_status glh_fatgraph_holonomy(const glh_options* opt, const char* graph_path,
                                         const char* connection_path, const char* cycle, glh_report** out);
GLH_API glh_status glh_fatgraph_check_punctures(const glh_options* opt, const char* graph_path,
                                                const char* connection_path, glh_report** out);
GLH_API glh_status glh_fatgraph_dims(const glh_options* opt, int genus, int punctures, int constrained, int su,
                                     const char* graph_path, glh_report** out);
GLH_API glh_status glh_garnier_check(const glh_options* opt, const char* system_path, int m, glh_report** out);
GLH_API glh_status glh_gaudin_commute(const glh_options* opt, const char* system_path, int m, glh_report** out);
GLH_API glh_status glh_quantize_compare(const glh_options* opt, const char* system_path, int m,
                                        glh_report** out);

/* Reports. Strings are owned by the report. */
GLH_API int glh_report_passed(const glh_report* r);
GLH_API size_t glh_report_check_count(const glh_report* r);
GLH_API const char* glh_report_check_name(const glh_report* r, size_t i);
GLH_API int glh_report_check_passed(const glh_report* r, size_t i);
GLH_API double glh_report_check_residual(const glh_report* r, size_t i);
GLH_API const char* glh_report_text(glh_report* r);
GLH_API const char* glh_report_json(glh_report* r);
GLH_API void glh_report_free(glh_report* r);

#ifdef __cplusplus
}
#endif

#endif
