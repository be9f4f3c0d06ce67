#ifndef RIEMANN_RIEMANN_H
#define RIEMANN_RIEMANN_H

/* C interface to the Riemann minimal example library. */

#include <stddef.h>

#if defined(RMX_BUILDING_LIBRARY)
#define RMX_API __attribute__((visibility("default")))
#else
#define RMX_API
#endif

#define RMX_VERSION_MAJOR 1
#define RMX_VERSION_MINOR 0
#define RMX_VERSION_PATCH 0
#define RMX_VERSION_STRING "1.0.0"

#ifdef __cplusplus
extern "C" {
#endif

typedef enum rmx_status {
  RMX_OK = 0,
  RMX_E_INVALID_ARGUMENT = 1, /* bad parameter or configuration */
  RMX_E_NUMERICAL = 2,        /* continuation, quadrature or fitting failed */
  RMX_E_IO = 3,               /* file could not be read or written */
  RMX_E_NULL_POINTER = 4,
  RMX_E_INTERNAL = 5
} rmx_status;

typedef enum rmx_normalization {
  RMX_NORM_RAW = 0,     /* unnormalized data */
  RMX_NORM_PAPER = 1,   /* sqrt(lambda) or 1/sqrt(lambda) rescaling */
  RMX_NORM_SPACING = 2  /* end spacing fixed to 2 pi */
} rmx_normalization;

typedef enum rmx_mesh_format { RMX_FORMAT_OBJ = 0, RMX_FORMAT_PLY = 1 } rmx_mesh_format;

typedef struct rmx_mesh rmx_mesh;
typedef struct rmx_report rmx_report;

RMX_API const char* rmx_version(void);

/* Message of the last failure on the calling thread; empty if none. */
RMX_API const char* rmx_last_error(void);

RMX_API const char* rmx_status_string(rmx_status status);

/* |K| at z = re + i im. */
RMX_API rmx_status rmx_abs_gauss_curvature(double lambda, rmx_normalization norm, double re,
                                           double im, double* out);

/* Translation T and companion period, each a 3-vector. */
RMX_API rmx_status rmx_period_vectors(double lambda, rmx_normalization norm,
                                      double translation[3], double companion[3]);

RMX_API rmx_status rmx_end_spacing(double lambda, rmx_normalization norm, double* out);

/* Positions of n targets (re[k] + i im[k]) on the principal sheet; xyz has 3n entries. */
RMX_API rmx_status rmx_immerse(double lambda, rmx_normalization norm, size_t n, const double* re,
                               const double* im, double* xyz);

/* Meshes. */
RMX_API rmx_status rmx_mesh_build(double lambda, rmx_normalization norm, int radial, int angular,
                                  double cutoff, int copies, rmx_mesh** out);
RMX_API void rmx_mesh_free(rmx_mesh* mesh);
RMX_API size_t rmx_mesh_vertex_count(const rmx_mesh* mesh);
RMX_API size_t rmx_mesh_triangle_count(const rmx_mesh* mesh);
/* Copies 3 * vertex_count doubles. */
RMX_API rmx_status rmx_mesh_vertices(const rmx_mesh* mesh, double* xyz);
/* Copies 3 * triangle_count indices (0-based). */
RMX_API rmx_status rmx_mesh_triangles(const rmx_mesh* mesh, int* indices);
RMX_API rmx_status rmx_mesh_max_abs_k(const rmx_mesh* mesh, double* out);
RMX_API rmx_status rmx_mesh_export(const rmx_mesh* mesh, rmx_mesh_format format, const char* path);

/* Commands driven by a JSON configuration; the report holds JSON (and CSV
   for limits). Invalid configurations return RMX_E_INVALID_ARGUMENT. */
RMX_API rmx_status rmx_run_mesh(const char* config_json, rmx_report** out);
RMX_API rmx_status rmx_run_verify(const char* config_json, rmx_report** out);
RMX_API rmx_status rmx_run_limits(const char* config_json, rmx_report** out);
RMX_API void rmx_report_free(rmx_report* report);
/* Report accessors return "" (or 0) for a null report. */
RMX_API const char* rmx_report_json(const rmx_report* report);
/* Empty string when the command produces no CSV. */
RMX_API const char* rmx_report_csv(const rmx_report* report);
/* 1 if every check passed (verify) or deviations are monotone (limits). */
RMX_API int rmx_report_passed(const rmx_report* report);

#ifdef __cplusplus
}
#endif

#endif
