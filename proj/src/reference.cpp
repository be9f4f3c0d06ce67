#include "riemann/reference.hpp"

#include <algorithm>
#include <cmath>

namespace riemann {

const char* to_string(ReferenceKind kind) noexcept {
  return kind == ReferenceKind::Catenoid ? "catenoid" : "helicoid";
}

namespace {

void require_nonzero(cplx z) {
  if (z == cplx(0.0)) throw Error(ErrorCode::SingularPoint, "reference surfaces are singular at z = 0");
}

}  // namespace

Vec3 catenoid_point(cplx z) {
  require_nonzero(z);
  const cplx inv = 1.0 / z;
  return Vec3(2.0 - (z + inv).real(), -(z - inv).imag(), 2.0 * std::log(std::abs(z)));
}

Vec3 helicoid_point(cplx z, int branch) {
  require_nonzero(z);
  const cplx inv = 1.0 / z;
  return Vec3(-(z + inv).imag(), (z - inv).real(), 2.0 * (std::arg(z) + kTwoPi * branch));
}

Vec3 reference_point(const ReferenceSurface& surface, cplx z) {
  return surface.kind == ReferenceKind::Catenoid ? catenoid_point(z)
                                                 : helicoid_point(z, surface.branch_of_log);
}

CVec3 catenoid_integrand(cplx z) noexcept {
  const cplx z2 = z * z;
  return CVec3((1.0 - z2) / z2, cplx(0.0, 1.0) * (1.0 + z2) / z2, 2.0 / z);
}

CVec3 helicoid_integrand(cplx z) noexcept {
  return cplx(0.0, -1.0) * catenoid_integrand(z);
}

double deviation_field(const std::vector<cplx>& points, const std::vector<Vec3>& immersed,
                       ReferenceKind kind, const std::vector<int>& branches) {
  if (points.size() != immersed.size() ||
      (kind == ReferenceKind::Helicoid && branches.size() != points.size())) {
    throw Error(ErrorCode::LengthMismatch, "sample lists differ in length");
  }
  double worst = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    const Vec3 ref = kind == ReferenceKind::Catenoid ? catenoid_point(points[i])
                                                     : helicoid_point(points[i], branches[i]);
    worst = std::max(worst, (immersed[i] - ref).norm());
  }
  return worst;
}

double deviation_field(const std::vector<cplx>& points, const std::vector<Vec3>& immersed,
                       ReferenceKind kind, int branch) {
  return deviation_field(points, immersed, kind, std::vector<int>(points.size(), branch));
}

}  // namespace riemann
