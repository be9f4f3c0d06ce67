#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string_view>

#include "riemann/mesh.hpp"

namespace riemann {

const char* to_string(MeshFormat format) noexcept {
  return format == MeshFormat::Obj ? "obj" : "ply";
}

std::optional<MeshFormat> parse_mesh_format(const std::string& name) {
  if (name == "obj") return MeshFormat::Obj;
  if (name == "ply") return MeshFormat::Ply;
  return std::nullopt;
}

namespace {

void put(std::string& out, double x) {
  char buf[32];
  const int n = std::snprintf(buf, sizeof buf, "%.17g", x);
  out.append(buf, n);
}

void put3(std::string& out, const char* tag, const Vec3& v) {
  out += tag;
  for (int k = 0; k < 3; ++k) {
    out += ' ';
    put(out, v[k]);
  }
}

[[noreturn]] void malformed(const std::string& what, std::size_t line) {
  std::ostringstream os;
  os << what << " at line " << line;
  throw Error(ErrorCode::IoFailure, os.str());
}

class Lines {
 public:
  explicit Lines(const std::string& text) : text_(text) {}

  bool next(std::string_view& line) {
    if (pos_ >= text_.size()) return false;
    const std::size_t end = text_.find('\n', pos_);
    const std::size_t stop = end == std::string::npos ? text_.size() : end;
    line = std::string_view(text_).substr(pos_, stop - pos_);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    pos_ = stop + 1;
    ++number_;
    return true;
  }

  std::size_t number() const noexcept { return number_; }

 private:
  const std::string& text_;
  std::size_t pos_ = 0;
  std::size_t number_ = 0;
};

// Whitespace-separated tokens of one line.
std::vector<std::string_view> tokens(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t') ++i;
    if (i > start) out.push_back(line.substr(start, i - start));
  }
  return out;
}

template <typename T>
T number(std::string_view tok, std::size_t line) {
  T value{};
  const auto res = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (res.ec != std::errc() || res.ptr != tok.data() + tok.size()) {
    malformed("bad number '" + std::string(tok) + "'", line);
  }
  return value;
}

Vec3 vec3(const std::vector<std::string_view>& t, std::size_t first, std::size_t line) {
  return Vec3(number<double>(t[first], line), number<double>(t[first + 1], line),
              number<double>(t[first + 2], line));
}

void check_indices(const SurfaceMesh& mesh) {
  const int n = static_cast<int>(mesh.vertices.size());
  for (const auto& t : mesh.triangles) {
    for (int v : t) {
      if (v < 0 || v >= n) throw Error(ErrorCode::IoFailure, "face index out of range");
    }
  }
}

}  // namespace

std::string to_obj(const SurfaceMesh& mesh) {
  std::string out;
  for (const auto& v : mesh.vertices) {
    put3(out, "v", v);
    out += '\n';
  }
  for (const auto& n : mesh.normals) {
    put3(out, "vn", n);
    out += '\n';
  }
  for (const auto& t : mesh.triangles) {
    out += 'f';
    for (int v : t) {
      const std::string k = std::to_string(v + 1);
      out += ' ' + k + "//" + k;
    }
    out += '\n';
  }
  return out;
}

std::string to_ply(const SurfaceMesh& mesh) {
  std::string out = "ply\nformat ascii 1.0\n";
  out += "element vertex " + std::to_string(mesh.vertices.size()) + '\n';
  out += "property double x\nproperty double y\nproperty double z\n";
  out += "property double nx\nproperty double ny\nproperty double nz\n";
  out += "property double quality\n";
  out += "element face " + std::to_string(mesh.triangles.size()) + '\n';
  out += "property list uchar int vertex_indices\nend_header\n";
  for (std::size_t k = 0; k < mesh.vertices.size(); ++k) {
    const Vec3 n = k < mesh.normals.size() ? mesh.normals[k] : Vec3::Zero();
    const double q = k < mesh.abs_k.size() ? mesh.abs_k[k] : 0.0;
    const double fields[7] = {mesh.vertices[k].x(), mesh.vertices[k].y(), mesh.vertices[k].z(),
                              n.x(), n.y(), n.z(), q};
    for (int f = 0; f < 7; ++f) {
      if (f > 0) out += ' ';
      put(out, fields[f]);
    }
    out += '\n';
  }
  for (const auto& t : mesh.triangles) {
    out += "3 " + std::to_string(t[0]) + ' ' + std::to_string(t[1]) + ' ' + std::to_string(t[2]);
    out += '\n';
  }
  return out;
}

SurfaceMesh from_obj(const std::string& text) {
  SurfaceMesh mesh;
  Lines lines(text);
  std::string_view line;
  while (lines.next(line)) {
    const auto t = tokens(line);
    if (t.empty() || t[0].front() == '#') continue;
    if (t[0] == "v" || t[0] == "vn") {
      if (t.size() != 4) malformed("expected three coordinates", lines.number());
      (t[0] == "v" ? mesh.vertices : mesh.normals).push_back(vec3(t, 1, lines.number()));
    } else if (t[0] == "f") {
      if (t.size() != 4) malformed("expected a triangle", lines.number());
      Triangle tri{};
      for (int k = 0; k < 3; ++k) {
        const std::string_view tok = t[k + 1];
        tri[k] = number<int>(tok.substr(0, tok.find('/')), lines.number()) - 1;
      }
      mesh.triangles.push_back(tri);
    } else {
      malformed("unknown record '" + std::string(t[0]) + "'", lines.number());
    }
  }
  check_indices(mesh);
  return mesh;
}

SurfaceMesh from_ply(const std::string& text) {
  SurfaceMesh mesh;
  Lines lines(text);
  std::string_view line;
  if (!lines.next(line) || line != "ply") malformed("missing ply magic", lines.number());
  std::size_t nv = 0, nf = 0;
  bool header_done = false;
  while (lines.next(line)) {
    const auto t = tokens(line);
    if (t.empty()) continue;
    if (t[0] == "end_header") {
      header_done = true;
      break;
    }
    if (t[0] == "format" && (t.size() != 3 || t[1] != "ascii")) {
      malformed("only ascii PLY is supported", lines.number());
    }
    if (t[0] == "element" && t.size() == 3) {
      if (t[1] == "vertex") nv = number<std::size_t>(t[2], lines.number());
      if (t[1] == "face") nf = number<std::size_t>(t[2], lines.number());
    }
  }
  if (!header_done) malformed("missing end_header", lines.number());
  for (std::size_t k = 0; k < nv; ++k) {
    if (!lines.next(line)) malformed("truncated vertex list", lines.number());
    const auto t = tokens(line);
    if (t.size() != 7) malformed("expected 7 vertex properties", lines.number());
    mesh.vertices.push_back(vec3(t, 0, lines.number()));
    mesh.normals.push_back(vec3(t, 3, lines.number()));
    mesh.abs_k.push_back(number<double>(t[6], lines.number()));
  }
  for (std::size_t k = 0; k < nf; ++k) {
    if (!lines.next(line)) malformed("truncated face list", lines.number());
    const auto t = tokens(line);
    if (t.size() != 4 || t[0] != "3") malformed("expected a triangle", lines.number());
    mesh.triangles.push_back({number<int>(t[1], lines.number()), number<int>(t[2], lines.number()),
                              number<int>(t[3], lines.number())});
  }
  check_indices(mesh);
  return mesh;
}

void export_mesh(const SurfaceMesh& mesh, MeshFormat format, const std::string& path) {
  const std::string text = format == MeshFormat::Obj ? to_obj(mesh) : to_ply(mesh);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::IoFailure, "cannot open " + path + " for writing");
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw Error(ErrorCode::IoFailure, "failed writing " + path);
}

SurfaceMesh import_mesh(MeshFormat format, const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoFailure, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return format == MeshFormat::Obj ? from_obj(ss.str()) : from_ply(ss.str());
}

}  // namespace riemann
