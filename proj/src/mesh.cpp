#include "riemann/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <queue>
#include <set>
#include <sstream>
#include <limits>
#include <tuple>

#include <Eigen/Geometry>

#include "riemann/analysis.hpp"
#include "riemann/parallel.hpp"

namespace riemann {

void MeshGrid::validate() const {
  if (radial < 4) throw Error(ErrorCode::InvalidArgument, "mesh needs at least 4 radial nodes");
  if (angular < 4 || angular % 2 != 0) {
    throw Error(ErrorCode::InvalidArgument, "mesh needs an even number (>= 4) of angular nodes");
  }
  if (!(L > 1.0) || !std::isfinite(L)) throw Error(ErrorCode::InvalidArgument, "mesh needs L > 1");
}

std::vector<double> mesh_radii(const MeshGrid& grid, Lambda lambda) {
  grid.validate();
  const int n = grid.radial;
  const double lo = -std::log(grid.L), hi = std::log(grid.L);
  std::vector<double> logs(n), radii(n);
  for (int k = 0; k < n; ++k) {
    logs[k] = lo + (hi - lo) * k / (n - 1);
    radii[k] = std::exp(logs[k]);
  }
  radii.front() = 1.0 / grid.L;
  radii.back() = grid.L;

  std::vector<double> breaks{lambda.value()};
  if (lambda.inverse() != lambda.value()) breaks.push_back(lambda.inverse());
  std::set<int> taken;
  for (double b : breaks) {
    const double lb = std::log(b);
    if (!(lb > lo && lb < hi)) continue;
    int best = -1;
    for (int k = 1; k + 1 < n; ++k) {
      if (taken.count(k)) continue;
      if (best < 0 || std::abs(logs[k] - lb) < std::abs(logs[best] - lb)) best = k;
    }
    taken.insert(best);
    radii[best] = b;
  }
  std::sort(radii.begin(), radii.end());
  for (int k = 1; k < n; ++k) {
    if (!(radii[k] > radii[k - 1])) {
      throw Error(ErrorCode::InvalidArgument, "radial grid too coarse for the branch points");
    }
  }
  return radii;
}

std::vector<double> mesh_angles(const MeshGrid& grid) {
  grid.validate();
  std::vector<double> out(grid.angular);
  for (int j = 0; j < grid.angular; ++j) out[j] = -kPi + kTwoPi * j / grid.angular;
  out[grid.angular / 2] = 0.0;
  return out;
}

std::size_t SurfaceMesh::copy_vertex_count() const noexcept { return sources.size(); }

std::size_t SurfaceMesh::copy_triangle_count() const noexcept {
  const int copies = std::max(provenance.copies, 1);
  return triangles.size() / copies;
}

namespace {

// (sheet of the upper lip, radial index, angular index, lower-side copy)
using Key = std::tuple<int, int, int, int>;

struct Domain {
  std::vector<CurvePoint> sources;
  std::vector<VertexRole> roles;
  std::vector<Triangle> triangles;
};

Domain build_domain(Lambda lambda, const std::vector<double>& radii,
                    const std::vector<double>& angles) {
  const int nr = static_cast<int>(radii.size());
  const int na = static_cast<int>(angles.size());
  const int j0 = na / 2;
  const double l = lambda.value(), li = lambda.inverse();

  Domain d;
  std::map<Key, int> ids;

  auto node_z = [&](int i, int j) {
    if (j == 0) return cplx(-radii[i], 0.0);
    if (j == j0) return cplx(radii[i], 0.0);
    return std::polar(radii[i], angles[j]);
  };

  // Corner (i, j) of a quad on sheet s lying above (theta > theta_j) or below.
  auto corner = [&](int s, int i, int j, bool above) -> int {
    const double r = radii[i];
    Key key{s, i, j, 0};
    VertexRole role = VertexRole::Interior;
    if (j == 0) {
      if (r == li) {
        key = {1, i, 0, 0};
        role = VertexRole::Branch;
      } else if (r < li) {
        // Quads above theta = -pi see the lower lip.
        key = {above ? -s : s, i, 0, 0};
        role = VertexRole::Lip;
      }
    } else if (j == j0) {
      if (r >= l) {
        key = {above ? s : -s, i, j0, 0};
        role = r == l ? VertexRole::Branch : VertexRole::Lip;
      } else {
        key = {s, i, j0, above ? 0 : 1};
        role = above ? VertexRole::Cut : VertexRole::CutCopy;
      }
    }
    auto [it, inserted] = ids.emplace(key, static_cast<int>(d.sources.size()));
    if (inserted) {
      const cplx z = node_z(i, j);
      const cplx w = role == VertexRole::Branch ? cplx(0.0)
                                                     : double(std::get<0>(key)) * slit_branch(z, lambda);
      d.sources.push_back({z, w, lambda});
      d.roles.push_back(role);
    }
    return it->second;
  };

  for (int s : {1, -1}) {
    for (int i = 0; i + 1 < nr; ++i) {
      for (int j = 0; j < na; ++j) {
        const int jn = (j + 1) % na;
        const int a = corner(s, i, j, true);
        const int b = corner(s, i + 1, j, true);
        const int c = corner(s, i + 1, jn, false);
        const int e = corner(s, i, jn, false);
        d.triangles.push_back({a, b, c});
        d.triangles.push_back({a, c, e});
      }
    }
  }
  return d;
}

// Integral of phi along the straight edge u -> v, on the sheets given by the
// vertex w values.
Vec3 edge_integral(const CurvePoint& u, bool u_branch, const CurvePoint& v, bool v_branch,
                   const Normalization& norm) {
  const Lambda lambda = norm.lambda();
  if (u_branch) return -edge_integral(v, v_branch, u, u_branch, norm);
  const std::vector<cplx> seg{u.z, v.z};
  const SheetedPath path = continue_sheet(seg, u.w, lambda, {false, v_branch});
  if (!v_branch && std::abs(path.end_w() - v.w) > 1e-8 * (1.0 + std::abs(v.w))) {
    std::ostringstream os;
    os << "mesh edge " << u.z << " -> " << v.z << " arrives at w=" << path.end_w()
       << ", vertex has w=" << v.w;
    throw Error(ErrorCode::AmbiguousSheet, os.str());
  }
  return integrate(path, norm);
}

Vec3 root_position(const Normalization& norm, const CurvePoint& p) {
  for (Sheet sheet : {Sheet::Principal, Sheet::Opposite}) {
    const SurfacePoint sp = immerse(norm, {p.z}, sheet).front();
    if (std::abs(sp.source.w - p.w) <= 1e-8 * (1.0 + std::abs(p.w))) return sp.position;
  }
  std::ostringstream os;
  os << "no immersed sheet matches the mesh root at z=" << p.z;
  throw Error(ErrorCode::AmbiguousSheet, os.str());
}

}  // namespace

SurfaceMesh build_mesh(const Normalization& norm, const MeshGrid& grid, int copies) {
  if (copies < 1) throw Error(ErrorCode::InvalidArgument, "copies must be at least 1");
  const Lambda lambda = norm.lambda();
  const auto radii = mesh_radii(grid, lambda);
  const auto angles = mesh_angles(grid);
  Domain d = build_domain(lambda, radii, angles);
  const std::size_t n = d.sources.size();

  std::vector<std::vector<int>> adj(n);
  for (const auto& t : d.triangles) {
    for (int e = 0; e < 3; ++e) {
      adj[t[e]].push_back(t[(e + 1) % 3]);
      adj[t[(e + 1) % 3]].push_back(t[e]);
    }
  }
  for (auto& a : adj) {
    std::sort(a.begin(), a.end());
    a.erase(std::unique(a.begin(), a.end()), a.end());
  }
  auto is_branch = [&](int v) { return d.roles[v] == VertexRole::Branch; };

  // Spanning forest by breadth-first search; each component is rooted at an
  // interior vertex of the upper half of the z-plane.
  struct TreeEdge {
    int parent, child;
  };
  std::vector<int> roots;
  std::vector<TreeEdge> tree;
  std::vector<char> seen(n, 0);
  const int root_j = grid.angular / 2 + std::max(1, grid.angular / 4);
  const cplx root_hint = std::polar(1.0, angles[root_j]);
  for (;;) {
    int root = -1;
    for (std::size_t v = 0; v < n; ++v) {
      if (seen[v] || d.roles[v] != VertexRole::Interior) continue;
      if (root < 0 || std::abs(d.sources[v].z - root_hint) <
                          std::abs(d.sources[root].z - root_hint) - 1e-12) {
        root = static_cast<int>(v);
      }
    }
    if (root < 0) break;
    roots.push_back(root);
    seen[root] = 1;
    std::queue<int> q;
    q.push(root);
    while (!q.empty()) {
      const int u = q.front();
      q.pop();
      for (int v : adj[u]) {
        if (seen[v] || (is_branch(u) && is_branch(v))) continue;
        seen[v] = 1;
        tree.push_back({u, v});
        q.push(v);
      }
    }
  }
  if (std::find(seen.begin(), seen.end(), 0) != seen.end()) {
    throw Error(ErrorCode::PathBlocked, "mesh vertex unreachable from any root");
  }

  std::vector<Vec3> root_pos(roots.size());
  parallel_for(roots.size(), [&](std::size_t k) {
    root_pos[k] = root_position(norm, d.sources[roots[k]]);
  });
  std::vector<Vec3> deltas(tree.size());
  parallel_for(tree.size(), [&](std::size_t k) {
    const int u = tree[k].parent, v = tree[k].child;
    deltas[k] = edge_integral(d.sources[u], is_branch(u), d.sources[v], is_branch(v), norm);
  });
  std::vector<Vec3> pos(n, Vec3::Zero());
  for (std::size_t k = 0; k < roots.size(); ++k) pos[roots[k]] = root_pos[k];
  for (std::size_t k = 0; k < tree.size(); ++k) {
    pos[tree[k].child] = pos[tree[k].parent] + deltas[k];
  }

  SurfaceMesh mesh;
  mesh.provenance.lambda = lambda.value();
  mesh.provenance.normalization = norm.kind();
  mesh.provenance.grid = grid;
  mesh.provenance.copies = copies;
  mesh.provenance.translation = period_vectors(lambda, norm).translation;
  const Vec3 T = mesh.provenance.translation;

  std::vector<Vec3> normals(n);
  std::vector<double> abs_k(n);
  for (std::size_t v = 0; v < n; ++v) {
    normals[v] = gauss_map(d.sources[v].z);
    abs_k[v] = abs_gauss_curvature(d.sources[v].z, norm);
  }
  for (int c = 0; c < copies; ++c) {
    const int offset = c * static_cast<int>(n);
    for (std::size_t v = 0; v < n; ++v) {
      mesh.vertices.push_back(c == 0 ? pos[v] : Vec3(pos[v] + static_cast<double>(c) * T));
    }
    mesh.normals.insert(mesh.normals.end(), normals.begin(), normals.end());
    mesh.abs_k.insert(mesh.abs_k.end(), abs_k.begin(), abs_k.end());
    for (const auto& t : d.triangles) mesh.triangles.push_back({t[0] + offset, t[1] + offset, t[2] + offset});
  }
  mesh.sources = std::move(d.sources);
  mesh.roles = std::move(d.roles);
  return mesh;
}

long euler_characteristic(const SurfaceMesh& mesh) {
  const std::size_t nt = mesh.copy_triangle_count();
  std::set<std::pair<int, int>> edges;
  for (std::size_t k = 0; k < nt; ++k) {
    const auto& t = mesh.triangles[k];
    for (int e = 0; e < 3; ++e) edges.insert(std::minmax(t[e], t[(e + 1) % 3]));
  }
  return static_cast<long>(mesh.copy_vertex_count()) - static_cast<long>(edges.size()) +
         static_cast<long>(nt);
}

Vec3 triangle_normal(const SurfaceMesh& mesh, std::size_t t) {
  const auto& tri = mesh.triangles[t];
  const Vec3 n = (mesh.vertices[tri[1]] - mesh.vertices[tri[0]])
                     .cross(mesh.vertices[tri[2]] - mesh.vertices[tri[0]]);
  return n.normalized();
}

double min_triangle_area(const SurfaceMesh& mesh) {
  double smallest = std::numeric_limits<double>::infinity();
  for (const auto& t : mesh.triangles) {
    const Vec3 n = (mesh.vertices[t[1]] - mesh.vertices[t[0]])
                       .cross(mesh.vertices[t[2]] - mesh.vertices[t[0]]);
    smallest = std::min(smallest, 0.5 * n.norm());
  }
  return smallest;
}

}  // namespace riemann
