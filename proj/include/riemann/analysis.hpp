#pragma once

// Gauss curvature, the curvature bound, symmetry checks and the images of
// the real line intervals.

#include <string>
#include <vector>

#include <Eigen/Core>

#include "riemann/foliation.hpp"
#include "riemann/weierstrass.hpp"

namespace riemann {

struct CurvatureSample {
  cplx z;
  double abs_k;
  NormKind normalization;
};

/// Closed form 16 |z - lambda| |z + 1/lambda| / (s^2 |z| (|z| + 1/|z|)^4).
double abs_gauss_curvature(cplx z, const Normalization& norm);

/// (4 |g'| / (|f| (1 + |g|^2)^2))^2. Throws DivisionByZero when f = 0.
double general_curvature(cplx g, cplx g_prime, cplx f);

/// general_curvature with g = z and f = s / (z w).
double riemann_general_curvature(const CurvePoint& point, const Normalization& norm);

/// The chain of bounds |K| <= 16 (|z|+1)^2 / (|z| (|z| + 1/|z|)^4) <= 4 on
/// paper-normalized data.
struct BoundChain {
  double abs_k;
  double middle;
  bool first_holds;
  bool second_holds;
};

BoundChain bound_chain(cplx z, Lambda lambda);

struct CurvatureGrid {
  int radial = 512;
  int angular = 512;
  double r_min = 1e-3;
  double r_max = 1e3;
};

struct CurvatureBoundReport {
  double lambda;
  double grid_max;
  cplx grid_argmax;
  double max_abs_k;  // after local refinement
  cplx argmax;
  bool argmax_in_cell_of_pm_i;
  bool within_bound;   // max_abs_k <= 4
  bool conjecture;     // max_abs_k <= 2 + 1e-3
};

/// Paper-normalized |K| over the log-polar grid, then a pattern search in
/// (log r, theta) from the best grid points.
CurvatureBoundReport verify_curvature_bound(Lambda lambda, const CurvatureGrid& grid = {},
                                            bool refine = true);

// ---------------------------------------------------------------------------
// Symmetries.

enum class SymmetryKind {
  Reflection,     // (z, w) -> (conj z, conj w), reflection in a plane x2 = c
  Rotation,       // (z, w) -> (-1/z, -w/z^2), half-turn about a line through R(i)
  LineRotation,   // (z, w) -> (conj z, -conj w), half-turn about the lines
  LiteralInverse  // (z, w) -> (-1/z, w/z^2)
};

const char* to_string(SymmetryKind kind) noexcept;

struct CurveMap {
  SymmetryKind kind;
  bool antiholomorphic;
  Eigen::Matrix3d linear;  // pullback phi^* Phi = linear * Phi (conj for anti)

  cplx map_z(cplx z) const noexcept;
  cplx map_w(cplx z, cplx w) const noexcept;
};

CurveMap curve_map(SymmetryKind kind);

struct SymmetryCheck {
  SymmetryKind kind;
  Vec3 fixed_image;  // image of the fixed point used as the pivot
  std::vector<double> residuals;
  double max_residual = 0.0;
  bool passed = false;
};

struct SymmetryReport {
  std::vector<SymmetryCheck> checks;
  double tolerance = 1e-7;
  bool passed() const;
};

/// For each map, with a fixed point f, checks
/// R(phi p) = linear (R(p) - R(f)) + R(f), where R(phi p) is integrated along
/// the image of the route to p. Each sample is reached on the sheet that
/// matches its w.
SymmetryReport check_symmetries(const Normalization& norm, const std::vector<CurvePoint>& samples,
                                double tolerance = 1e-7);

// ---------------------------------------------------------------------------
// Real parameter intervals.

enum class IntervalKind { Line, PlanarGeodesic };

struct IntervalCheck {
  std::string name;
  IntervalKind kind;
  double residual;  // lines: max distance / length; planar: max |x2 - x2_0|
  double length;
  Vec3 direction;   // fitted line direction (lines only)
  bool passed;
};

/// Images of (0, lambda], (-inf, -1/lambda] (lines) and [-1/lambda, 0),
/// [lambda, inf) (planar geodesics), sampled on `samples` points each and
/// truncated at |z| in [1/cutoff, cutoff] relative to the branch points.
std::vector<IntervalCheck> interval_checks(const Normalization& norm, int samples = 64,
                                           double cutoff = 100.0, double tolerance = 1e-7);

/// Points of the image of the real interval [a, b] on the upper lip of the
/// slit branch. Branch-point endpoints are handled exactly.
std::vector<Vec3> real_interval_image(const Normalization& norm, double a, double b, int samples);

/// R at the branch point lambda (reached along the principal slit branch).
Vec3 branch_point_image(const Normalization& norm);

}  // namespace riemann
