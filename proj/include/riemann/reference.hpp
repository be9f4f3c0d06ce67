#pragma once

// Catenoid (g = z, eta = dz/z^2) and helicoid (g = z, eta = -i dz/z^2), both
// based at z0 = 1.

#include <vector>

#include "riemann/error.hpp"
#include "riemann/types.hpp"

namespace riemann {

enum class ReferenceKind { Catenoid, Helicoid };

const char* to_string(ReferenceKind kind) noexcept;

struct ReferenceSurface {
  ReferenceKind kind = ReferenceKind::Catenoid;
  int branch_of_log = 0;  // always 0 for the catenoid
};

/// (Re(2 - z - 1/z), -Im(z - 1/z), 2 ln|z|). The axis is the vertical line
/// through (2, 0).
Vec3 catenoid_point(cplx z);

/// (-Im(z + 1/z), Re(z - 1/z), 2 (arg z + 2 pi branch)). One positive circuit
/// about the origin raises x3 by 4 pi.
Vec3 helicoid_point(cplx z, int branch);

Vec3 reference_point(const ReferenceSurface& surface, cplx z);

/// Integrands whose real antiderivatives are the two maps above.
CVec3 catenoid_integrand(cplx z) noexcept;
CVec3 helicoid_integrand(cplx z) noexcept;

/// max_i |immersed_i - reference(z_i)|, with a per-sample log branch for the
/// helicoid (ignored for the catenoid). Throws LengthMismatch.
double deviation_field(const std::vector<cplx>& points, const std::vector<Vec3>& immersed,
                       ReferenceKind kind, const std::vector<int>& branches);

double deviation_field(const std::vector<cplx>& points, const std::vector<Vec3>& immersed,
                       ReferenceKind kind, int branch = 0);

}  // namespace riemann
