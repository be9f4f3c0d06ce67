#include <gtest/gtest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "riemann/mesh.hpp"

using namespace riemann;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("riemann_test_" + name)).string();
}

SurfaceMesh small_mesh(double lambda, int copies = 1, NormKind kind = NormKind::PaperNormalized) {
  return build_mesh(Normalization(kind, Lambda(lambda)), MeshGrid{24, 24, 20.0}, copies);
}

}  // namespace

TEST(MeshGrid, RadiiSnapToBranchPoints) {
  const MeshGrid grid{32, 16, 40.0};
  const auto r = mesh_radii(grid, Lambda(3.0));
  EXPECT_NE(std::find(r.begin(), r.end(), 3.0), r.end());
  EXPECT_NE(std::find(r.begin(), r.end(), 1.0 / 3.0), r.end());
  EXPECT_NEAR(r.front(), 1.0 / 40.0, 1e-15);
  EXPECT_NEAR(r.back(), 40.0, 1e-12);
  EXPECT_TRUE(std::is_sorted(r.begin(), r.end()));
  const auto a = mesh_angles(grid);
  EXPECT_EQ(a[0], -kPi);
  EXPECT_EQ(a[8], 0.0);
  EXPECT_THROW((MeshGrid{32, 15, 40.0}.validate()), Error);
  EXPECT_THROW((MeshGrid{32, 16, 0.5}.validate()), Error);
}

TEST(Mesh, TriangleCountPerSheetPerCopy) {
  for (double l : {0.1, 1.0, 5.0}) {
    const MeshGrid grid{64, 64, 40.0};
    const SurfaceMesh m = build_mesh(Normalization(NormKind::PaperNormalized, Lambda(l)), grid, 2);
    EXPECT_EQ(m.triangles.size(), std::size_t(2 * 2 * (64 - 1) * 64 * 2));
    EXPECT_EQ(m.copy_triangle_count(), std::size_t(2 * (64 - 1) * 64 * 2));
    EXPECT_EQ(m.vertices.size(), 2 * m.copy_vertex_count());
  }
}

TEST(Mesh, Invariants) {
  for (double l : {0.1, 0.5, 1.0, 3.0, 10.0}) {
    const SurfaceMesh m = small_mesh(l);
    const int n = static_cast<int>(m.vertices.size());
    for (const auto& t : m.triangles) {
      for (int v : t) {
        EXPECT_GE(v, 0);
        EXPECT_LT(v, n);
      }
    }
    for (const auto& nv : m.normals) EXPECT_NEAR(nv.norm(), 1.0, 1e-9);
    for (double k : m.abs_k) EXPECT_GE(k, 0.0);
    EXPECT_GT(min_triangle_area(m), 1e-12);
    for (const auto& v : m.vertices) EXPECT_TRUE(v.allFinite());
  }
}

TEST(Mesh, CopiesAreExactTranslates) {
  const SurfaceMesh m = small_mesh(0.5, 3);
  const std::size_t n = m.copy_vertex_count();
  const Vec3 T = m.provenance.translation;
  for (std::size_t v = 0; v < n; ++v) {
    EXPECT_EQ(m.vertices[n + v], Vec3(m.vertices[v] + T));
    EXPECT_EQ(m.vertices[2 * n + v], Vec3(m.vertices[v] + 2.0 * T));
  }
  const SurfaceMesh one = small_mesh(0.5, 1);
  for (std::size_t v = 0; v < n; ++v) EXPECT_EQ(one.vertices[v], m.vertices[v]);
}

TEST(Mesh, AdjacentCopiesShareTheirBoundary) {
  for (double l : {0.2, 1.0, 4.0}) {
    const SurfaceMesh m = small_mesh(l);
    const Vec3 T = m.provenance.translation;
    int pairs = 0;
    for (std::size_t a = 0; a < m.copy_vertex_count(); ++a) {
      if (m.roles[a] != VertexRole::Cut) continue;
      for (std::size_t b = 0; b < m.copy_vertex_count(); ++b) {
        if (m.roles[b] != VertexRole::CutCopy || m.sources[b].z != m.sources[a].z ||
            m.sources[b].w != m.sources[a].w) {
          continue;
        }
        const double d = std::min((m.vertices[b] - m.vertices[a] - T).norm(),
                                  (m.vertices[b] - m.vertices[a] + T).norm());
        EXPECT_LT(d, 1e-9);
        ++pairs;
      }
    }
    EXPECT_GT(pairs, 0);
  }
}

TEST(Mesh, EulerCharacteristicIndependentOfResolution) {
  for (double l : {0.5, 1.0, 3.0}) {
    std::vector<long> chi;
    for (int n : {16, 24, 40}) {
      const MeshGrid grid{n, n, 40.0};
      chi.push_back(euler_characteristic(build_mesh(Normalization(NormKind::PaperNormalized, Lambda(l)), grid)));
    }
    EXPECT_EQ(chi[0], chi[1]);
    EXPECT_EQ(chi[1], chi[2]);
    EXPECT_EQ(chi[0], -1) << "lambda " << l;
  }
}

TEST(Mesh, TriangleNormalsFollowTheGaussMap) {
  const SurfaceMesh m = build_mesh(Normalization(NormKind::PaperNormalized, Lambda(2.0)), MeshGrid{48, 48, 20.0});
  for (std::size_t t = 0; t < m.copy_triangle_count(); ++t) {
    const auto& tri = m.triangles[t];
    const Vec3 avg = (m.normals[tri[0]] + m.normals[tri[1]] + m.normals[tri[2]]).normalized();
    EXPECT_GT(triangle_normal(m, t).dot(avg), 0.9);
  }
}

TEST(Mesh, DiscreteNormalsConvergeUnderRefinement) {
  double prev = INFINITY;
  for (int n : {16, 32, 64}) {
    const SurfaceMesh m =
        build_mesh(Normalization(NormKind::PaperNormalized, Lambda(0.5)), MeshGrid{n, n, 10.0});
    double worst = 0.0;
    for (std::size_t t = 0; t < m.copy_triangle_count(); ++t) {
      const auto& tri = m.triangles[t];
      const Vec3 avg = (m.normals[tri[0]] + m.normals[tri[1]] + m.normals[tri[2]]).normalized();
      worst = std::max(worst, (triangle_normal(m, t) - avg).norm());
    }
    EXPECT_LT(worst, 0.75 * prev);
    prev = worst;
  }
}

TEST(Mesh, ReflectionSymmetryAtLambdaOne) {
  const SurfaceMesh m = small_mesh(1.0);
  const std::size_t n = m.copy_vertex_count();
  double hausdorff = 0.0;
  for (std::size_t a = 0; a < n; ++a) {
    const Vec3 r(m.vertices[a].x(), -m.vertices[a].y(), m.vertices[a].z());
    double best = INFINITY;
    for (std::size_t b = 0; b < n; ++b) best = std::min(best, (m.vertices[b] - r).norm());
    hausdorff = std::max(hausdorff, best);
  }
  EXPECT_LT(hausdorff, 1e-6);
}

TEST(Mesh, MaxCurvatureAtLambdaOneIsTwo) {
  const SurfaceMesh m = build_mesh(Normalization(NormKind::PaperNormalized, Lambda(1.0)));
  EXPECT_NEAR(*std::max_element(m.abs_k.begin(), m.abs_k.end()), 2.0, 1e-12);
}

TEST(Mesh, ProvenanceRecorded) {
  const SurfaceMesh m = small_mesh(3.0, 2, NormKind::Unnormalized);
  EXPECT_EQ(m.provenance.lambda, 3.0);
  EXPECT_EQ(m.provenance.normalization, NormKind::Unnormalized);
  EXPECT_EQ(m.provenance.copies, 2);
  EXPECT_EQ(m.provenance.grid.radial, 24);
  EXPECT_THROW(small_mesh(3.0, 0), Error);
}

TEST(Export, ObjRecords) {
  const SurfaceMesh m = small_mesh(2.0);
  const std::string obj = to_obj(m);
  std::istringstream in(obj);
  std::string line;
  std::size_t v = 0, vn = 0, f = 0;
  while (std::getline(in, line)) {
    if (line.rfind("v ", 0) == 0) ++v;
    if (line.rfind("vn ", 0) == 0) ++vn;
    if (line.rfind("f ", 0) == 0) {
      ++f;
      int a, b, c, d, e, g;
      ASSERT_EQ(std::sscanf(line.c_str(), "f %d//%d %d//%d %d//%d", &a, &b, &c, &d, &e, &g), 6);
      EXPECT_EQ(a, b);
      EXPECT_GE(a, 1);
    }
  }
  EXPECT_EQ(v, m.vertices.size());
  EXPECT_EQ(vn, m.normals.size());
  EXPECT_EQ(f, m.triangles.size());
}

TEST(Export, PlyHeaderAndQualityChannel) {
  const SurfaceMesh m = small_mesh(5.0);
  const std::string ply = to_ply(m);
  EXPECT_EQ(ply.rfind("ply\nformat ascii 1.0\n", 0), 0u);
  EXPECT_NE(ply.find("element vertex " + std::to_string(m.vertices.size())), std::string::npos);
  EXPECT_NE(ply.find("property double quality"), std::string::npos);
  EXPECT_NE(ply.find("element face " + std::to_string(m.triangles.size())), std::string::npos);
  const SurfaceMesh back = from_ply(ply);
  ASSERT_EQ(back.abs_k.size(), m.abs_k.size());
  for (std::size_t k = 0; k < m.abs_k.size(); ++k) EXPECT_EQ(back.abs_k[k], m.abs_k[k]);
}

TEST(Export, RoundTripIsBitExactAndByteIdentical) {
  const SurfaceMesh m = small_mesh(0.5, 2);
  for (MeshFormat fmt : {MeshFormat::Obj, MeshFormat::Ply}) {
    const std::string a = temp_path(std::string("rt1.") + to_string(fmt));
    const std::string b = temp_path(std::string("rt2.") + to_string(fmt));
    export_mesh(m, fmt, a);
    const SurfaceMesh back = import_mesh(fmt, a);
    ASSERT_EQ(back.vertices.size(), m.vertices.size());
    for (std::size_t k = 0; k < m.vertices.size(); ++k) EXPECT_EQ(back.vertices[k], m.vertices[k]);
    EXPECT_EQ(back.triangles, m.triangles);
    export_mesh(back, fmt, b);
    EXPECT_EQ(read_file(a), read_file(b));
    std::filesystem::remove(a);
    std::filesystem::remove(b);
  }
}

TEST(Export, RepeatedBuildsAreByteIdentical) {
  const auto build = [] { return to_ply(small_mesh(3.0, 2)); };
  EXPECT_EQ(build(), build());
}

TEST(Export, EmptyMesh) {
  const SurfaceMesh empty;
  EXPECT_EQ(to_obj(empty), "");
  const std::string ply = to_ply(empty);
  EXPECT_NE(ply.find("element vertex 0"), std::string::npos);
  EXPECT_NE(ply.find("element face 0"), std::string::npos);
  EXPECT_TRUE(from_ply(ply).vertices.empty());
}

TEST(Export, IoFailures) {
  const SurfaceMesh m;
  try {
    export_mesh(m, MeshFormat::Obj, "/nonexistent-dir/x.obj");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::IoFailure);
  }
  EXPECT_THROW(import_mesh(MeshFormat::Ply, "/nonexistent-dir/x.ply"), Error);
  EXPECT_THROW(from_obj("v 1 2\n"), Error);
  EXPECT_THROW(from_obj("v 1 2 3\nf 1//1 2//2 3//3\n"), Error);
  EXPECT_THROW(from_obj("q 1 2 3\n"), Error);
  EXPECT_THROW(from_ply("ply\nformat binary_little_endian 1.0\nend_header\n"), Error);
  EXPECT_THROW(from_ply("ply\nformat ascii 1.0\nelement vertex 2\nend_header\n1 2 3 0 0 1 0\n"), Error);
  EXPECT_EQ(parse_mesh_format("ply"), MeshFormat::Ply);
  EXPECT_FALSE(parse_mesh_format("stl").has_value());
}
