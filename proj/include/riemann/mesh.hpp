#pragma once

// Triangle meshes of a fundamental domain of the surface and their export.

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "riemann/weierstrass.hpp"

namespace riemann {

struct MeshGrid {
  int radial = 64;    // radial nodes, log-spaced in [1/L, L]
  int angular = 64;   // angular nodes, even, with nodes at 0 and pi
  double L = 40.0;    // end trimming: 1/L <= |z| <= L

  void validate() const;
};

/// Radial nodes: log-uniform in [1/L, L] with the nearest interior nodes moved
/// onto lambda and 1/lambda when they lie inside.
std::vector<double> mesh_radii(const MeshGrid& grid, Lambda lambda);

/// Angular nodes -pi + 2 pi j / angular, j = 0 .. angular - 1.
std::vector<double> mesh_angles(const MeshGrid& grid);

enum class VertexRole : std::uint8_t {
  Interior,     // open slit plane of one sheet
  Lip,          // on a slit, shared by the upper lip of one sheet and the lower of the other
  Cut,          // on (0, lambda), upper side
  CutCopy,      // on (0, lambda), lower side: same curve point, position shifted by a period
  Branch,       // a branch point
};

using Triangle = std::array<int, 3>;

struct MeshProvenance {
  double lambda = 1.0;
  NormKind normalization = NormKind::PaperNormalized;
  std::string sheets = "both; root on principal";
  MeshGrid grid;
  int copies = 1;
  Vec3 translation = Vec3::Zero();
};

struct SurfaceMesh {
  std::vector<Vec3> vertices;
  std::vector<Triangle> triangles;
  std::vector<Vec3> normals;
  std::vector<double> abs_k;
  // Per vertex of the first copy; later copies repeat them.
  std::vector<CurvePoint> sources;
  std::vector<VertexRole> roles;
  MeshProvenance provenance;

  std::size_t copy_vertex_count() const noexcept;
  std::size_t copy_triangle_count() const noexcept;
};

/// Fundamental domain from the two-sheet slit annulus, cut along the lift of
/// (0, lambda), plus copies - 1 translates by T. Positions are integrated
/// along a spanning tree of mesh edges, rooted at immersed points.
SurfaceMesh build_mesh(const Normalization& norm, const MeshGrid& grid = {}, int copies = 1);

/// V - E + F of the first copy.
long euler_characteristic(const SurfaceMesh& mesh);

/// Smallest triangle area over the mesh.
double min_triangle_area(const SurfaceMesh& mesh);

/// Unit normal of a triangle (counterclockwise orientation).
Vec3 triangle_normal(const SurfaceMesh& mesh, std::size_t t);

// ---------------------------------------------------------------------------
// Export and import.

enum class MeshFormat { Obj, Ply };

const char* to_string(MeshFormat format) noexcept;
std::optional<MeshFormat> parse_mesh_format(const std::string& name);

/// ASCII OBJ: v, vn and f a//a b//b c//c records, 1-based, %.17g.
std::string to_obj(const SurfaceMesh& mesh);

/// ASCII PLY 1.0: x y z nx ny nz quality (= |K|) and vertex_indices faces.
std::string to_ply(const SurfaceMesh& mesh);

/// Parse the output of to_obj / to_ply. Throws IoFailure on malformed input.
SurfaceMesh from_obj(const std::string& text);
SurfaceMesh from_ply(const std::string& text);

/// Write to a file; throws IoFailure when the file cannot be written.
void export_mesh(const SurfaceMesh& mesh, MeshFormat format, const std::string& path);

/// Read a file written by export_mesh.
SurfaceMesh import_mesh(MeshFormat format, const std::string& path);

}  // namespace riemann
