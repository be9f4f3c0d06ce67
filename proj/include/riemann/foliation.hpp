#pragma once

// Horizontal slices of the surface: level curves x3 = c traced on the curve,
// circle/line fits and the summaries of the level circles along the family.

#include <array>
#include <vector>

#include <Eigen/Core>

#include "riemann/weierstrass.hpp"

namespace riemann {

enum class SliceKind { Circle, Line };

const char* to_string(SliceKind kind) noexcept;

struct FoliationSlice {
  double height = 0.0;
  SliceKind kind = SliceKind::Circle;
  Eigen::Vector2d center = Eigen::Vector2d::Zero();  // circles only
  double radius = 0.0;                               // circles only
  double residual = 0.0;  // max distance of the points to the fitted curve
  std::size_t points = 0;
};

inline constexpr std::size_t kMinSlicePoints = 16;
inline constexpr double kLineRadius = 1e6;

struct CircleFit {
  Eigen::Vector2d center;
  double radius;
  double residual;
};

struct LineFit {
  Eigen::Vector2d point;
  Eigen::Vector2d direction;
  double residual;
};

/// Algebraic fit followed by Gauss-Newton on the geometric distance.
CircleFit fit_circle(const std::vector<Eigen::Vector2d>& pts);

/// Total least squares line.
LineFit fit_line(const std::vector<Eigen::Vector2d>& pts);

/// Fits both and classifies: Line iff the line residual is smaller and the
/// circle radius exceeds 1e6 (ties go to Circle). Throws
/// InsufficientSlicePoints below 16 points.
FoliationSlice fit_slice(const std::vector<Vec3>& points, double height);

/// Intersection points of a triangle mesh with the plane x3 = height.
std::vector<Vec3> mesh_slice(const std::vector<Vec3>& vertices,
                             const std::vector<std::array<int, 3>>& triangles, double height);

/// Heights of the two line images: h0 on (0, lambda) and h_inf on
/// (-inf, -1/lambda); h_inf - h0 is the end spacing.
struct EndHeights {
  double h0;
  double h_inf;
};

EndHeights end_heights(const Normalization& norm);

struct LevelOptions {
  double step = 0.02;  // step in z relative to |z|
  std::size_t max_steps = 200000;
};

/// Points of the level set x3 = h0 + fraction (h_inf - h0), 0 < fraction < 1,
/// traced once around the origin starting from the planar geodesic over
/// (lambda, inf).
std::vector<Vec3> level_curve(const Normalization& norm, double fraction,
                              const LevelOptions& options = {});

/// Slice at the given fraction; fractions 0 and 1 sample the line images.
FoliationSlice level_slice(const Normalization& norm, double fraction,
                           const LevelOptions& options = {});

std::vector<FoliationSlice> foliation_slices(const Normalization& norm,
                                             const std::vector<double>& fractions,
                                             const LevelOptions& options = {});

/// Max three-point (Menger) curvature of the polyline through the points.
double max_menger_curvature(const std::vector<Vec3>& points);

struct FoliationSummary {
  double lambda;
  double mid_radius;              // radius of the level circle half way between end heights
  double center_curvature;        // max Menger curvature of the centers
  std::vector<FoliationSlice> slices;
};

/// Level circles at fractions 0.1 ... 0.9 (`count` of them) and the summary
/// quantities of the family trend.
FoliationSummary foliation_summary(const Normalization& norm, int count = 9,
                                   const LevelOptions& options = {});

}  // namespace riemann
