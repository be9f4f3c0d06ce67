#include <gtest/gtest.h>

#include <cmath>
#include <cstring>
#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"
#include "riemann/riemann.h"

using nlohmann::json;

TEST(CApi, VersionAndStatusStrings) {
  EXPECT_STREQ(rmx_version(), RMX_VERSION_STRING);
  EXPECT_STREQ(rmx_status_string(RMX_OK), "ok");
  EXPECT_NE(std::strlen(rmx_status_string(RMX_E_NUMERICAL)), 0u);
  EXPECT_NE(std::strlen(rmx_status_string(static_cast<rmx_status>(99))), 0u);
}

TEST(CApi, CurvatureAndPeriods) {
  double k = 0.0;
  ASSERT_EQ(rmx_abs_gauss_curvature(1.0, RMX_NORM_PAPER, 0.0, 1.0, &k), RMX_OK);
  EXPECT_NEAR(k, 2.0, 1e-10);
  ASSERT_EQ(rmx_abs_gauss_curvature(4.0, RMX_NORM_RAW, 0.0, -1.0, &k), RMX_OK);
  EXPECT_NEAR(k, 4.25, 1e-9);
  double t[3], c[3], spacing = 0.0;
  ASSERT_EQ(rmx_period_vectors(2.0, RMX_NORM_SPACING, t, c), RMX_OK);
  ASSERT_EQ(rmx_end_spacing(2.0, RMX_NORM_SPACING, &spacing), RMX_OK);
  EXPECT_NEAR(spacing, 2.0 * M_PI, 1e-10);
  EXPECT_NEAR(std::abs(t[2]), 4.0 * M_PI, 1e-9);
  EXPECT_LT(std::hypot(c[0], c[1], c[2]), 1e-6 * std::abs(t[2]));
}

TEST(CApi, ImmerseAndErrors) {
  const double re[2] = {1.0, 0.3}, im[2] = {0.0, 0.8};
  double xyz[6];
  ASSERT_EQ(rmx_immerse(2.0, RMX_NORM_PAPER, 2, re, im, xyz), RMX_OK);
  EXPECT_NEAR(std::hypot(xyz[0], xyz[1], xyz[2]), 0.0, 1e-12);
  EXPECT_GT(std::hypot(xyz[3], xyz[4], xyz[5]), 0.0);

  double k = 0.0;
  EXPECT_EQ(rmx_abs_gauss_curvature(-1.0, RMX_NORM_PAPER, 0.0, 1.0, &k), RMX_E_INVALID_ARGUMENT);
  EXPECT_NE(std::string(rmx_last_error()).find("lambda"), std::string::npos);
  EXPECT_EQ(rmx_abs_gauss_curvature(1.0, RMX_NORM_PAPER, 0.0, 1.0, nullptr), RMX_E_NULL_POINTER);
  EXPECT_EQ(rmx_abs_gauss_curvature(1.0, static_cast<rmx_normalization>(7), 0.0, 1.0, &k),
            RMX_E_INVALID_ARGUMENT);
  const double bad_re[1] = {2.0}, bad_im[1] = {0.0};
  EXPECT_EQ(rmx_immerse(2.0, RMX_NORM_PAPER, 1, bad_re, bad_im, xyz), RMX_E_NUMERICAL);
  EXPECT_EQ(rmx_immerse(2.0, RMX_NORM_PAPER, 1, nullptr, bad_im, xyz), RMX_E_NULL_POINTER);
}

TEST(CApi, MeshLifecycle) {
  rmx_mesh* mesh = nullptr;
  ASSERT_EQ(rmx_mesh_build(1.0, RMX_NORM_PAPER, 16, 16, 10.0, 2, &mesh), RMX_OK);
  ASSERT_NE(mesh, nullptr);
  const size_t nv = rmx_mesh_vertex_count(mesh), nt = rmx_mesh_triangle_count(mesh);
  EXPECT_EQ(nt, size_t(2 * 2 * 15 * 16 * 2));
  std::vector<double> xyz(3 * nv);
  std::vector<int> idx(3 * nt);
  ASSERT_EQ(rmx_mesh_vertices(mesh, xyz.data()), RMX_OK);
  ASSERT_EQ(rmx_mesh_triangles(mesh, idx.data()), RMX_OK);
  for (int i : idx) {
    EXPECT_GE(i, 0);
    EXPECT_LT(size_t(i), nv);
  }
  double k = 0.0;
  ASSERT_EQ(rmx_mesh_max_abs_k(mesh, &k), RMX_OK);
  EXPECT_LE(k, 2.0 + 1e-12);
  const std::string path = (std::filesystem::temp_directory_path() / "riemann_capi.obj").string();
  EXPECT_EQ(rmx_mesh_export(mesh, RMX_FORMAT_OBJ, path.c_str()), RMX_OK);
  EXPECT_TRUE(std::filesystem::exists(path));
  std::filesystem::remove(path);
  EXPECT_EQ(rmx_mesh_export(mesh, RMX_FORMAT_PLY, "/nonexistent-dir/m.ply"), RMX_E_IO);
  rmx_mesh_free(mesh);
  rmx_mesh_free(nullptr);
  EXPECT_EQ(rmx_mesh_vertex_count(nullptr), 0u);
  EXPECT_EQ(rmx_mesh_build(1.0, RMX_NORM_PAPER, 16, 15, 10.0, 1, &mesh), RMX_E_INVALID_ARGUMENT);
}

TEST(CApi, Commands) {
  rmx_report* rep = nullptr;
  ASSERT_EQ(rmx_run_verify(R"({"suite":"curvature","lambdas":[0.5,2]})", &rep), RMX_OK);
  const json j = json::parse(rmx_report_json(rep));
  EXPECT_EQ(j["command"], "verify");
  EXPECT_EQ(rmx_report_passed(rep), 1);
  EXPECT_STREQ(rmx_report_csv(rep), "");
  rmx_report_free(rep);

  ASSERT_EQ(rmx_run_limits(R"({"target":"catenoid","schedule":[0.1,0.01]})", &rep), RMX_OK);
  EXPECT_EQ(std::string(rmx_report_csv(rep)).rfind("lambda,deviation", 0), 0u);
  EXPECT_EQ(rmx_report_passed(rep), 1);
  rmx_report_free(rep);

  ASSERT_EQ(rmx_run_mesh(R"({"lambda":3,"grid":{"radial":8,"angular":8,"L":5}})", &rep), RMX_OK);
  EXPECT_EQ(json::parse(rmx_report_json(rep))["euler_characteristic"], -1);
  rmx_report_free(rep);

  EXPECT_EQ(rmx_run_verify("{not json", &rep), RMX_E_INVALID_ARGUMENT);
  EXPECT_EQ(rmx_run_verify(R"({"suites":"all"})", &rep), RMX_E_INVALID_ARGUMENT);
  EXPECT_EQ(rmx_run_limits(R"({"target":"catenoid","schedule":[3]})", &rep), RMX_E_INVALID_ARGUMENT);
  EXPECT_EQ(rmx_run_mesh(nullptr, &rep), RMX_E_NULL_POINTER);
  EXPECT_STREQ(rmx_report_json(nullptr), "");
  EXPECT_EQ(rmx_report_passed(nullptr), 0);
}
