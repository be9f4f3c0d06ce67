#pragma once

// Weierstrass data g = z, eta = s dz / (z w) on the curve, integration along
// lifted paths, period vectors and the immersion from the base point z0 = 1.

#include <optional>
#include <string>
#include <vector>

#include "riemann/curve.hpp"
#include "riemann/quadrature.hpp"

namespace riemann {

enum class NormKind { Unnormalized, PaperNormalized, FixedVerticalSpacing };

const char* to_string(NormKind kind) noexcept;
/// Accepts "raw", "paper", "spacing" as well as the enumerator names.
std::optional<NormKind> parse_norm_kind(const std::string& name);

/// Scale applied to eta. Unnormalized: 1. PaperNormalized: sqrt(lambda) for
/// lambda >= 1 and 1/sqrt(lambda) for lambda <= 1. FixedVerticalSpacing:
/// 2 pi divided by the unnormalized end spacing.
class Normalization {
 public:
  Normalization(NormKind kind, Lambda lambda);

  NormKind kind() const noexcept { return kind_; }
  Lambda lambda() const noexcept { return lambda_; }
  double scale() const noexcept { return scale_; }

 private:
  NormKind kind_;
  Lambda lambda_;
  double scale_;
};

double paper_scale(Lambda lambda) noexcept;

using PhiValue = CVec3;

/// s ((1 - z^2)/(z w), i (1 + z^2)/(z w), 2/w). Throws SingularPoint when z or
/// w vanishes.
PhiValue phi(const CurvePoint& point, const Normalization& norm);

inline PhiValue phi_raw(cplx z, cplx w, double scale) noexcept {
  const cplx zw = z * w;
  const cplx z2 = z * z;
  return PhiValue(scale * (1.0 - z2) / zw, cplx(0.0, scale) * (1.0 + z2) / zw, 2.0 * scale / w);
}

/// Unit normal from the stereographic Gauss map g = z.
Vec3 gauss_map(cplx z) noexcept;
inline Vec3 gauss_map(const CurvePoint& p) noexcept { return gauss_map(p.z); }

/// (1 + |z|^2)^2 / (4 |z|^2 |w|^2) times scale^2.
double metric_factor(const CurvePoint& point, const Normalization& norm);

// ---------------------------------------------------------------------------
// Integration.

inline constexpr double kAbsTolPerLength = 1e-10;

/// Integral of phi over the straight segment (za, wa) -> (zb, wb); w along the
/// segment is the root nearest the linear interpolation of the end values.
CVec3 segment_integral(cplx za, cplx wa, cplx zb, cplx wb, Lambda lambda, double scale);

/// Complex integral of phi along the path, accumulated per path vertex
/// (entry 0 is zero).
std::vector<CVec3> cumulative_integrals(const SheetedPath& path, const Normalization& norm);

CVec3 integrate_complex(const SheetedPath& path, const Normalization& norm);

/// Re of the integral of phi along the path.
Vec3 integrate(const SheetedPath& path, const Normalization& norm);

// ---------------------------------------------------------------------------
// Paths.

/// Polyline approximating the arc center + radius e^{it}, t from t0 to t1.
/// Chords are refined until their sagitta is below a quarter of the distance
/// to the nearest branch point, so the polyline is homotopic to the arc, and
/// until each chord is at most twice the branch distance of its ends.
std::vector<cplx> arc_polyline(cplx center, double radius, double t0, double t1, Lambda lambda);

/// Start of every immersion: z0 = 1, or the branch point lambda when lambda is
/// within the branch clearance of 1.
struct BasePoint {
  cplx z;
  bool singular;
};

BasePoint base_point(Lambda lambda) noexcept;

/// w at the first path vertex `first` when leaving the base point. For a
/// regular base this is the sheet's root at z0 = 1. At a singular base the
/// root is taken from the slit branch on the side `side` (+1 upper, -1 lower).
cplx base_seed(Lambda lambda, Sheet sheet, cplx first, int side);

struct Circle {
  cplx center;
  double radius;
};

/// Circle alpha: center -1/(2 lambda), radius (lambda + 1/lambda)/2;
/// encloses {0, -1/lambda}.
Circle alpha_circle(Lambda lambda) noexcept;

/// Circle of the same radius centered at lambda/2; encloses {0, lambda}.
Circle companion_circle(Lambda lambda) noexcept;

/// Lift from the base point to the top of `circle`, once around it
/// counterclockwise and nothing else; the returned path starts at the top.
SheetedPath cycle_path(const Circle& circle, Lambda lambda, Sheet sheet);

struct PeriodVector {
  Vec3 translation;
  Vec3 companion;
};

/// Real periods of the lifts of alpha (the translation T) and of the
/// companion circle.
PeriodVector period_vectors(Lambda lambda, const Normalization& norm,
                            Sheet sheet = Sheet::Principal);

/// Upper semicircle from lambda/2 (on the line image over (0, lambda)) to
/// -2/lambda (on the line image over (-inf, -1/lambda)), as a path on the
/// principal slit branch. It keeps a distance of order min(lambda, 1/lambda)
/// from every branch point.
SheetedPath end_spacing_path(Lambda lambda);

/// Re of the third component of the unnormalized integral along
/// end_spacing_path. For lambda > 1 this equals the integral along the upper
/// unit semicircle.
double unnormalized_end_spacing(Lambda lambda);

// ---------------------------------------------------------------------------
// Immersion.

struct SurfacePoint {
  Vec3 position;
  CurvePoint source;
  int winding = 0;
};

struct RouteOptions {
  int winding = 0;          // extra circuits about the origin
  int alpha_circuits = 0;   // signed circuits of alpha before leaving the base
};

/// The polyline used to reach re^{i t} with total angle t (t includes the
/// winding). Radial leg along the real axis from the base, with a half-circle
/// detour around lambda on the side of sign(t), then an arc at radius r.
struct Route {
  std::vector<cplx> vertices;
  PathEnds ends;
  cplx seed;                              // w at the start (or first regular vertex)
  std::vector<std::size_t> checkpoints;   // vertices where targets are read off
};

/// Route through all total angles in `angles` (all of one sign, sorted by
/// increasing magnitude) at radius r.
Route polar_route(Lambda lambda, Sheet sheet, double r, const std::vector<double>& angles,
                  int alpha_circuits = 0);

/// Immersion of re^{i t} for every (radius, total angle). Result is indexed
/// [radius][angle]. Angles of both signs are allowed.
std::vector<std::vector<SurfacePoint>> immerse_polar(const Normalization& norm, Sheet sheet,
                                                     const std::vector<double>& radii,
                                                     const std::vector<double>& angles,
                                                     int alpha_circuits = 0);

/// R at `target` along the plain route, and along the same route followed by
/// the loop target -> top of alpha -> `circuits` turns of alpha -> target.
/// The loop is freely homotopic to alpha^circuits, so the two differ by
/// orientation * circuits * T, where orientation is -1 when the loop runs on
/// the lift of alpha opposite to the one defining T. Works for a singular base
/// point.
struct LoopComparison {
  Vec3 plain;
  Vec3 looped;
  int orientation = 1;
};

LoopComparison loop_at_target(const Normalization& norm, cplx target, int circuits,
                              Sheet sheet = Sheet::Principal);

/// R(p) for each target, integrating from the base point.
std::vector<SurfacePoint> immerse(const Normalization& norm, const std::vector<cplx>& targets,
                                  Sheet sheet = Sheet::Principal, RouteOptions options = {});

}  // namespace riemann
