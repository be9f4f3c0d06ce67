#pragma once

// Correction factors against the catenoid and helicoid, limit sweeps, end
// spacing, the conjugate relation and the plane-limit experiment.

#include <string>
#include <vector>

#include "riemann/reference.hpp"
#include "riemann/weierstrass.hpp"

namespace riemann {

struct Annulus {
  double L = 10.0;
  int radial = 48;
  int angular = 64;

  /// Cell-centered grid: radii log-spaced in (1/L, L), angles in (-pi, pi).
  std::vector<double> radii() const;
  std::vector<double> angles() const;
  void validate() const;
};

enum class ClipKind { Ball, Slab };

struct ClipRegion {
  ClipKind kind = ClipKind::Ball;
  double r = 5.0;

  bool contains(const Vec3& p) const noexcept;
  void validate() const;
};

const char* to_string(ClipKind kind) noexcept;

/// sqrt(z) / sqrt((z - lambda)(lambda z + 1)) - 1, the square root continued
/// from its positive value at z = 1 along the immersion route to z.
cplx f0(cplx z, Lambda lambda, int winding = 0);

/// 1 - sqrt(z) / sqrt((1 - z/lambda)(z + 1/lambda)), continued likewise.
cplx f_inf(cplx z, Lambda lambda, int winding = 0);

/// Values of f0 (catenoid = true) or f_inf along the route to each target.
std::vector<cplx> correction_factors(Lambda lambda, const std::vector<cplx>& targets,
                                     bool catenoid, int winding = 0);

/// Both sides of the catenoid split R = C + Re int f0 Phi_C (lambda < 1) or
/// the helicoid split R = H - Re int f_inf Phi_H (lambda > 1) at one target,
/// paper-normalized.
struct Decomposition {
  cplx z;
  Vec3 immersion;     // R(z) by quadrature of phi
  Vec3 reference;     // C(z) or H(z, winding)
  Vec3 correction;    // the correction integral, computed independently
  double residual;    // |immersion - reference - correction|
};

Decomposition decompose(Lambda lambda, cplx z, int winding = 0);

struct ConvergenceReport {
  std::string reference;  // "catenoid", "helicoid" or "planes"
  std::string normalization;
  std::string sheet = "principal";
  std::vector<double> lambdas;
  std::vector<double> deviations;
  std::vector<double> end_spacings;
  std::vector<double> max_abs_k;
  std::vector<std::size_t> samples;  // clipped sample count per lambda
  Annulus annulus;
  ClipRegion clip;
  int max_winding = 0;

  /// Deviations strictly decrease along the schedule order.
  bool monotone() const;
};

/// Paper-normalized deviation from the catenoid over the annulus grid,
/// keeping samples whose catenoid point lies in the clip region. All lambdas
/// must be < 1. Rows are in schedule order.
ConvergenceReport catenoid_limit_sweep(const std::vector<double>& lambdas,
                                       const Annulus& annulus, const ClipRegion& clip);

/// Same against the helicoid, over windings -max_winding..max_winding.
/// All lambdas must be > 1.
ConvergenceReport helicoid_limit_sweep(const std::vector<double>& lambdas,
                                       const Annulus& annulus, const ClipRegion& clip,
                                       int max_winding = 4);

/// End spacing under the given normalization.
double end_spacing(const Normalization& norm);

/// |K| max over the annulus grid (used as a report column).
double annulus_max_abs_k(const Normalization& norm, const Annulus& annulus);

struct ConjugateReport {
  double lambda;
  std::vector<double> residuals;  // relative, per sample
  double max_residual = 0.0;
  double max_curve_residual = 0.0;  // mapped points on the conjugate curve
  bool branch_points_map = false;
};

/// i Phi_lambda(z, w) dz = diag(-1,-1,1) Phi_{1/lambda}(-z, i w) d(-z), both
/// paper-normalized.
ConjugateReport conjugate_check(Lambda lambda, const std::vector<CurvePoint>& samples);

/// Random points of the curve: |z| log-uniform in [1/L, L], uniform angle,
/// random sheet. Deterministic in `seed`.
std::vector<CurvePoint> random_curve_points(Lambda lambda, std::size_t count, unsigned seed,
                                            double L = 10.0);

struct PlaneRow {
  double lambda;
  double vertical_fraction;  // area fraction of near-vertical normals in the ball
  double neck_radius;        // radius of the level circle half way between ends
  double plane_deviation;    // max distance to the nearest end plane outside 4 necks
  double annulus_L;          // parameter annulus used after expansion
};

struct PlaneOptions {
  double ball = kPi;        // radius of the ball about the origin
  double tilt = 1e-2;       // near-vertical: 1 - |n3| <= tilt
  double L = 10.0;          // first annulus; tripled while its boundary meets the ball
  int radial = 96;
  int angular = 96;
};

/// Fixed-vertical-spacing examples as lambda -> 0.
std::vector<PlaneRow> plane_limit_experiment(const std::vector<double>& lambdas,
                                             const PlaneOptions& options = {});

ConvergenceReport plane_report(const std::vector<PlaneRow>& rows);

}  // namespace riemann
