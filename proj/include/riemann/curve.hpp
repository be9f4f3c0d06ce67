#pragma once

// The elliptic curve w^2 = z (z - lambda)(z + 1/lambda), viewed as a double
// cover of the punctured z-plane, and analytic continuation of w along paths.

#include <array>
#include <functional>
#include <span>
#include <vector>

#include "riemann/error.hpp"
#include "riemann/types.hpp"

namespace riemann {

/// The family parameter. Always finite and strictly positive.
class Lambda {
 public:
  explicit Lambda(double value);

  double value() const noexcept { return value_; }
  double inverse() const noexcept { return 1.0 / value_; }
  /// The parameter of the conjugate example.
  Lambda reciprocal() const { return Lambda(1.0 / value_); }

  friend bool operator==(const Lambda&, const Lambda&) = default;

 private:
  double value_;
};

/// z (z - lambda)(z + 1/lambda).
cplx curve_rhs(cplx z, Lambda lambda) noexcept;

/// Derivative of curve_rhs with respect to z.
cplx curve_rhs_derivative(cplx z, Lambda lambda) noexcept;

struct BranchPoints {
  std::array<cplx, 3> finite;  // {0, lambda, -1/lambda}
  bool at_infinity = true;     // the cubic has odd order at infinity
};

BranchPoints branch_points(Lambda lambda);

/// Paths keep at least this distance from finite branch points:
/// 1e-6 max(1, lambda, 1/lambda), capped at 1% of the smallest gap between
/// branch points.
double branch_clearance(Lambda lambda) noexcept;

/// Distance from z to the nearest finite branch point.
double branch_distance(cplx z, Lambda lambda) noexcept;

/// A point (z, w) of the curve. The punctures (0,0) and (inf,inf) are never
/// representable; finite branch points other than 0 are allowed (w = 0).
struct CurvePoint {
  cplx z;
  cplx w;
  Lambda lambda;

  /// Validates |w^2 - P(z)| <= 1e-10 (1+|z|)^3.
  static CurvePoint make(cplx z, cplx w, Lambda lambda);

  /// The other point over the same z.
  CurvePoint partner() const { return {z, -w, lambda}; }
};

inline constexpr double kCurveTolerance = 1e-10;

bool on_curve(cplx z, cplx w, Lambda lambda, double tol = kCurveTolerance) noexcept;

/// Closed-form single-valued branch of w on the plane slit along
/// [-1/lambda, 0] and [lambda, +inf). On the slits the limit from the upper
/// half-plane is returned.
cplx slit_branch(cplx z, Lambda lambda) noexcept;

/// Same branch, limit from the lower half-plane on the slits.
cplx slit_branch_lower(cplx z, Lambda lambda) noexcept;

/// Which of the two lifts of the base point z0 = 1 a computation starts on.
enum class Sheet : int { Principal = 1, Opposite = -1 };

inline double sign_of(Sheet s) noexcept { return static_cast<int>(s) > 0 ? 1.0 : -1.0; }

/// w at the base point z0 = 1 on the given sheet: +-sqrt(P(1)) (principal root).
/// At lambda = 1 this is 0 (the base point is a branch point).
cplx base_root(Lambda lambda, Sheet sheet) noexcept;

/// True when the base point z0 = 1 coincides with the branch point lambda.
bool base_is_branch_point(Lambda lambda) noexcept;

/// Root of `radicand` nearest to `reference`.
cplx nearest_root(cplx radicand, cplx reference) noexcept;

// ---------------------------------------------------------------------------
// Continuation of a square root along a polyline.

/// A meromorphic radicand h together with its finite zeros and poles; the
/// continued quantity is sqrt(h).
struct Radicand {
  std::function<cplx(cplx)> value;
  std::vector<cplx> singular;
  double clearance = 0.0;

  double distance(cplx z) const noexcept;
};

Radicand curve_radicand(Lambda lambda);

/// Endpoints that sit exactly on a zero of the radicand (w -> 0 like a square
/// root). Only the first/last vertex may be flagged.
struct PathEnds {
  bool singular_start = false;
  bool singular_end = false;
};

/// Vertices with the continued root at each vertex.
struct RootPath {
  std::vector<cplx> vertices;
  std::vector<cplx> roots;
  PathEnds ends;
  std::vector<std::size_t> input_index;  // position of each input vertex in `vertices`
};

inline constexpr int kContinuationDepthCap = 40;

/// Continues sqrt(h) along the polyline by nearest-root selection with adaptive
/// bisection. Segments are refined until each is shorter than a quarter of the
/// distance to the nearest singular point and |r1 - r0| < |r1 + r0| / 2.
///
/// For a regular start the initial root is the root nearest `seed`; for a
/// singular start, the root at the first regular vertex is the one nearest
/// `seed`. Throws BranchTooClose / AmbiguousSheet.
RootPath continue_root(std::span<const cplx> vertices, cplx seed, const Radicand& radicand,
                       PathEnds ends = {});

/// A polyline on the curve with w continued along it.
struct SheetedPath {
  std::vector<cplx> vertices;
  std::vector<cplx> w_values;
  Lambda lambda;
  PathEnds ends;
  std::vector<std::size_t> input_index;

  cplx start_z() const { return vertices.front(); }
  cplx end_z() const { return vertices.back(); }
  cplx end_w() const { return w_values.back(); }
};

/// Lifts `vertices` to the curve starting from w_start. For a regular start
/// w_start must satisfy the curve equation at the first vertex; for a flagged
/// singular start it only selects the sheet at the first regular vertex.
SheetedPath continue_sheet(std::span<const cplx> vertices, cplx w_start, Lambda lambda,
                           PathEnds ends = {});

}  // namespace riemann
