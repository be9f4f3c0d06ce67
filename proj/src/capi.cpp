#include "riemann/riemann.h"

#include <algorithm>
#include <exception>
#include <memory>
#include <new>
#include <string>

#include "riemann/analysis.hpp"
#include "riemann/limits.hpp"
#include "riemann/mesh.hpp"
#include "riemann/suites.hpp"

struct rmx_mesh {
  riemann::SurfaceMesh mesh;
};

struct rmx_report {
  std::string json;
  std::string csv;
  bool passed = false;
};

namespace {

thread_local std::string last_error;

rmx_status fail(rmx_status status, const std::string& message) {
  last_error = message;
  return status;
}

// Runs f, translating exceptions into status codes.
template <typename F>
rmx_status guarded(F&& f) {
  try {
    last_error.clear();
    f();
    return RMX_OK;
  } catch (const riemann::Error& e) {
    if (e.code() == riemann::ErrorCode::IoFailure) return fail(RMX_E_IO, e.what());
    return fail(e.numerical() ? RMX_E_NUMERICAL : RMX_E_INVALID_ARGUMENT, e.what());
  } catch (const riemann::json::exception& e) {
    return fail(RMX_E_INVALID_ARGUMENT, std::string("bad configuration: ") + e.what());
  } catch (const std::bad_alloc&) {
    return fail(RMX_E_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(RMX_E_INTERNAL, e.what());
  } catch (...) {
    return fail(RMX_E_INTERNAL, "unknown failure");
  }
}

riemann::Normalization normalization(rmx_normalization norm, double lambda) {
  riemann::NormKind kind;
  switch (norm) {
    case RMX_NORM_RAW: kind = riemann::NormKind::Unnormalized; break;
    case RMX_NORM_PAPER: kind = riemann::NormKind::PaperNormalized; break;
    case RMX_NORM_SPACING: kind = riemann::NormKind::FixedVerticalSpacing; break;
    default: throw riemann::Error(riemann::ErrorCode::InvalidArgument, "unknown normalization");
  }
  return riemann::Normalization(kind, riemann::Lambda(lambda));
}

template <typename Config, typename Parse, typename Run>
rmx_status run_command(const char* config_json, rmx_report** out, Parse&& parse, Run&& run) {
  if (!config_json || !out) return fail(RMX_E_NULL_POINTER, "null argument");
  *out = nullptr;
  return guarded([&] {
    const Config config = parse(riemann::json::parse(config_json));
    auto report = std::make_unique<rmx_report>();
    run(config, *report);
    *out = report.release();
  });
}

}  // namespace

extern "C" {

RMX_API const char* rmx_version(void) { return RMX_VERSION_STRING; }

RMX_API const char* rmx_last_error(void) { return last_error.c_str(); }

RMX_API const char* rmx_status_string(rmx_status status) {
  switch (status) {
    case RMX_OK: return "ok";
    case RMX_E_INVALID_ARGUMENT: return "invalid argument";
    case RMX_E_NUMERICAL: return "numerical failure";
    case RMX_E_IO: return "i/o failure";
    case RMX_E_NULL_POINTER: return "null pointer";
    case RMX_E_INTERNAL: return "internal error";
  }
  return "unknown status";
}

RMX_API rmx_status rmx_abs_gauss_curvature(double lambda, rmx_normalization norm, double re,
                                           double im, double* out) {
  if (!out) return fail(RMX_E_NULL_POINTER, "null output");
  return guarded([&] { *out = riemann::abs_gauss_curvature({re, im}, normalization(norm, lambda)); });
}

RMX_API rmx_status rmx_period_vectors(double lambda, rmx_normalization norm,
                                      double translation[3], double companion[3]) {
  if (!translation || !companion) return fail(RMX_E_NULL_POINTER, "null output");
  return guarded([&] {
    const auto n = normalization(norm, lambda);
    const auto pv = riemann::period_vectors(n.lambda(), n);
    for (int k = 0; k < 3; ++k) {
      translation[k] = pv.translation[k];
      companion[k] = pv.companion[k];
    }
  });
}

RMX_API rmx_status rmx_end_spacing(double lambda, rmx_normalization norm, double* out) {
  if (!out) return fail(RMX_E_NULL_POINTER, "null output");
  return guarded([&] { *out = riemann::end_spacing(normalization(norm, lambda)); });
}

RMX_API rmx_status rmx_immerse(double lambda, rmx_normalization norm, size_t n, const double* re,
                               const double* im, double* xyz) {
  if (n > 0 && (!re || !im || !xyz)) return fail(RMX_E_NULL_POINTER, "null array");
  return guarded([&] {
    std::vector<riemann::cplx> targets(n);
    for (size_t k = 0; k < n; ++k) targets[k] = {re[k], im[k]};
    const auto pts = riemann::immerse(normalization(norm, lambda), targets);
    for (size_t k = 0; k < n; ++k) {
      for (int c = 0; c < 3; ++c) xyz[3 * k + c] = pts[k].position[c];
    }
  });
}

RMX_API rmx_status rmx_mesh_build(double lambda, rmx_normalization norm, int radial, int angular,
                                  double cutoff, int copies, rmx_mesh** out) {
  if (!out) return fail(RMX_E_NULL_POINTER, "null output");
  *out = nullptr;
  return guarded([&] {
    if (copies < 1) throw riemann::Error(riemann::ErrorCode::InvalidArgument, "copies must be at least 1");
    const riemann::MeshGrid grid{radial, angular, cutoff};
    auto handle = std::make_unique<rmx_mesh>();
    handle->mesh = riemann::build_mesh(normalization(norm, lambda), grid, copies);
    *out = handle.release();
  });
}

RMX_API void rmx_mesh_free(rmx_mesh* mesh) { delete mesh; }

RMX_API size_t rmx_mesh_vertex_count(const rmx_mesh* mesh) {
  return mesh ? mesh->mesh.vertices.size() : 0;
}

RMX_API size_t rmx_mesh_triangle_count(const rmx_mesh* mesh) {
  return mesh ? mesh->mesh.triangles.size() : 0;
}

RMX_API rmx_status rmx_mesh_vertices(const rmx_mesh* mesh, double* xyz) {
  if (!mesh || !xyz) return fail(RMX_E_NULL_POINTER, "null argument");
  const auto& v = mesh->mesh.vertices;
  for (size_t k = 0; k < v.size(); ++k) {
    for (int c = 0; c < 3; ++c) xyz[3 * k + c] = v[k][c];
  }
  return RMX_OK;
}

RMX_API rmx_status rmx_mesh_triangles(const rmx_mesh* mesh, int* indices) {
  if (!mesh || !indices) return fail(RMX_E_NULL_POINTER, "null argument");
  const auto& t = mesh->mesh.triangles;
  for (size_t k = 0; k < t.size(); ++k) {
    for (int c = 0; c < 3; ++c) indices[3 * k + c] = t[k][c];
  }
  return RMX_OK;
}

RMX_API rmx_status rmx_mesh_max_abs_k(const rmx_mesh* mesh, double* out) {
  if (!mesh || !out) return fail(RMX_E_NULL_POINTER, "null argument");
  const auto& k = mesh->mesh.abs_k;
  *out = k.empty() ? 0.0 : *std::max_element(k.begin(), k.end());
  return RMX_OK;
}

RMX_API rmx_status rmx_mesh_export(const rmx_mesh* mesh, rmx_mesh_format format, const char* path) {
  if (!mesh || !path) return fail(RMX_E_NULL_POINTER, "null argument");
  return guarded([&] {
    if (format != RMX_FORMAT_OBJ && format != RMX_FORMAT_PLY) {
      throw riemann::Error(riemann::ErrorCode::InvalidArgument, "unknown mesh format");
    }
    riemann::export_mesh(mesh->mesh,
                         format == RMX_FORMAT_OBJ ? riemann::MeshFormat::Obj : riemann::MeshFormat::Ply,
                         path);
  });
}

RMX_API rmx_status rmx_run_mesh(const char* config_json, rmx_report** out) {
  return run_command<riemann::MeshConfig>(
      config_json, out, riemann::mesh_config_from_json,
      [](const riemann::MeshConfig& c, rmx_report& r) {
        r.json = riemann::run_mesh(c).report.dump(2);
        r.passed = true;
      });
}

RMX_API rmx_status rmx_run_verify(const char* config_json, rmx_report** out) {
  return run_command<riemann::VerifyConfig>(
      config_json, out, riemann::verify_config_from_json,
      [](const riemann::VerifyConfig& c, rmx_report& r) {
        const auto res = riemann::run_verify(c);
        r.json = res.report.dump(2);
        r.passed = res.passed;
      });
}

RMX_API rmx_status rmx_run_limits(const char* config_json, rmx_report** out) {
  return run_command<riemann::LimitsConfig>(
      config_json, out, riemann::limits_config_from_json,
      [](const riemann::LimitsConfig& c, rmx_report& r) {
        const auto res = riemann::run_limits(c);
        r.json = res.report.dump(2);
        r.csv = res.csv;
        r.passed = res.monotone;
      });
}

RMX_API void rmx_report_free(rmx_report* report) { delete report; }

RMX_API const char* rmx_report_json(const rmx_report* report) {
  return report ? report->json.c_str() : "";
}

RMX_API const char* rmx_report_csv(const rmx_report* report) {
  return report ? report->csv.c_str() : "";
}

RMX_API int rmx_report_passed(const rmx_report* report) { return report && report->passed ? 1 : 0; }

}  // extern "C"
