#include "riemann/weierstrass.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "riemann/parallel.hpp"

namespace riemann {

const char* to_string(NormKind kind) noexcept {
  switch (kind) {
    case NormKind::Unnormalized: return "Unnormalized";
    case NormKind::PaperNormalized: return "PaperNormalized";
    case NormKind::FixedVerticalSpacing: return "FixedVerticalSpacing";
  }
  return "Unknown";
}

std::optional<NormKind> parse_norm_kind(const std::string& name) {
  if (name == "raw" || name == "Unnormalized") return NormKind::Unnormalized;
  if (name == "paper" || name == "PaperNormalized") return NormKind::PaperNormalized;
  if (name == "spacing" || name == "FixedVerticalSpacing") return NormKind::FixedVerticalSpacing;
  return std::nullopt;
}

double paper_scale(Lambda lambda) noexcept {
  const double l = lambda.value();
  return l >= 1.0 ? std::sqrt(l) : 1.0 / std::sqrt(l);
}

Normalization::Normalization(NormKind kind, Lambda lambda)
    : kind_(kind), lambda_(lambda), scale_(1.0) {
  switch (kind) {
    case NormKind::Unnormalized: break;
    case NormKind::PaperNormalized: scale_ = paper_scale(lambda); break;
    case NormKind::FixedVerticalSpacing: {
      const double spacing = unnormalized_end_spacing(lambda);
      if (!(std::isfinite(spacing) && spacing > 0.0)) {
        std::ostringstream os;
        os << "end spacing " << spacing << " cannot be normalized";
        throw Error(ErrorCode::DivisionByZero, os.str());
      }
      scale_ = kTwoPi / spacing;
      break;
    }
  }
}

PhiValue phi(const CurvePoint& point, const Normalization& norm) {
  if (point.z == cplx(0.0) || point.w == cplx(0.0)) {
    throw Error(ErrorCode::SingularPoint, "phi is singular where z or w vanishes");
  }
  return phi_raw(point.z, point.w, norm.scale());
}

Vec3 gauss_map(cplx z) noexcept {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return Vec3(0.0, 0.0, 1.0);
  const double n2 = std::norm(z);
  return Vec3(2.0 * z.real(), 2.0 * z.imag(), n2 - 1.0) / (n2 + 1.0);
}

double metric_factor(const CurvePoint& point, const Normalization& norm) {
  if (point.z == cplx(0.0) || point.w == cplx(0.0)) {
    throw Error(ErrorCode::SingularPoint, "metric is singular where z or w vanishes");
  }
  const double z2 = std::norm(point.z);
  const double s = norm.scale();
  return s * s * (1.0 + z2) * (1.0 + z2) / (4.0 * z2 * std::norm(point.w));
}

// ---------------------------------------------------------------------------

namespace {

QuadratureOptions segment_options(double length) {
  QuadratureOptions o;
  o.abs_tol = kAbsTolPerLength * length;
  o.rel_tol = 1e-12;
  return o;
}

CVec3 regular_segment(cplx za, cplx wa, cplx zb, cplx wb, Lambda lambda, double s) {
  const cplx dz = zb - za;
  if (dz == cplx(0.0)) return CVec3::Zero();
  auto f = [&](double t) -> CVec3 {
    const cplx z = za + t * dz;
    const cplx w = nearest_root(curve_rhs(z, lambda), wa + t * (wb - wa));
    return phi_raw(z, w, s) * dz;
  };
  return gauss_kronrod(f, 0.0, 1.0, segment_options(std::abs(dz))).value;
}

// Integral from the branch point b to (a, wa) with z = b + (a - b) u^2. With
// w^2 = (z - b) q(z) we have w = u v, v^2 = (a - b) q(z), and u cancels.
CVec3 singular_segment(cplx b, cplx a, cplx wa, Lambda lambda, double s) {
  const auto finite = branch_points(lambda).finite;
  const cplx* nearest = &finite[0];
  for (const auto& p : finite) {
    if (std::abs(p - b) < std::abs(*nearest - b)) nearest = &p;
  }
  if (std::abs(*nearest - b) > 1e-12 * (1.0 + std::abs(b))) {
    std::ostringstream os;
    os << "singular endpoint " << b << " is not a branch point";
    throw Error(ErrorCode::InvalidArgument, os.str());
  }
  const cplx d = a - b;
  auto q = [&](cplx z) {
    cplx out = 1.0;
    for (const auto& p : finite) {
      if (&p != nearest) out *= z - p;
    }
    return out;
  };
  auto f = [&](double u) -> CVec3 {
    const cplx z = b + d * (u * u);
    const cplx v = nearest_root(d * q(z), wa);
    return phi_raw(z, v, s) * (2.0 * d);
  };
  return gauss_kronrod(f, 0.0, 1.0, segment_options(std::abs(d))).value;
}

}  // namespace

CVec3 segment_integral(cplx za, cplx wa, cplx zb, cplx wb, Lambda lambda, double scale) {
  return regular_segment(za, wa, zb, wb, lambda, scale);
}

std::vector<CVec3> cumulative_integrals(const SheetedPath& path, const Normalization& norm) {
  const std::size_t n = path.vertices.size();
  std::vector<CVec3> out(n, CVec3::Zero());
  const double s = norm.scale();
  const Lambda lambda = path.lambda;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const cplx za = path.vertices[i], zb = path.vertices[i + 1];
    const cplx wa = path.w_values[i], wb = path.w_values[i + 1];
    CVec3 piece;
    if (i == 0 && path.ends.singular_start) {
      piece = singular_segment(za, zb, wb, lambda, s);
    } else if (i + 2 == n && path.ends.singular_end) {
      piece = -singular_segment(zb, za, wa, lambda, s);
    } else {
      piece = regular_segment(za, wa, zb, wb, lambda, s);
    }
    out[i + 1] = out[i] + piece;
  }
  return out;
}

CVec3 integrate_complex(const SheetedPath& path, const Normalization& norm) {
  return cumulative_integrals(path, norm).back();
}

Vec3 integrate(const SheetedPath& path, const Normalization& norm) {
  return integrate_complex(path, norm).real();
}

// ---------------------------------------------------------------------------

namespace {

constexpr int kArcDepthCap = 48;

void refine_arc(cplx c, double r, double t0, double t1, Lambda lambda, int depth,
                std::vector<cplx>& out) {
  const double tm = 0.5 * (t0 + t1);
  const double sagitta = r * (1.0 - std::cos(0.5 * (t1 - t0)));
  const cplx mid = c + std::polar(r, tm);
  const cplx za = c + std::polar(r, t0), zb = c + std::polar(r, t1);
  // Endpoints on a branch point are handled by the singular-end substitution.
  auto end_distance = [&](cplx z) {
    const double d = branch_distance(z, lambda);
    return d < branch_clearance(lambda) ? std::numeric_limits<double>::infinity() : d;
  };
  const double ends = std::min(end_distance(za), end_distance(zb));
  const bool bulges = sagitta > 0.25 * branch_distance(mid, lambda);
  const bool long_chord = std::abs(zb - za) > 2.0 * ends;
  if (depth < kArcDepthCap && (bulges || long_chord)) {
    refine_arc(c, r, t0, tm, lambda, depth + 1, out);
    refine_arc(c, r, tm, t1, lambda, depth + 1, out);
    return;
  }
  out.push_back(c + std::polar(r, t1));
}

}  // namespace

std::vector<cplx> arc_polyline(cplx center, double radius, double t0, double t1, Lambda lambda) {
  std::vector<cplx> out{center + std::polar(radius, t0)};
  const int pieces = std::max(1, static_cast<int>(std::ceil(std::abs(t1 - t0) / (kPi / 8.0))));
  for (int k = 0; k < pieces; ++k) {
    const double a = t0 + (t1 - t0) * k / pieces;
    const double b = k + 1 == pieces ? t1 : t0 + (t1 - t0) * (k + 1) / pieces;
    refine_arc(center, radius, a, b, lambda, 0, out);
  }
  return out;
}

BasePoint base_point(Lambda lambda) noexcept {
  if (base_is_branch_point(lambda)) return {cplx(lambda.value()), true};
  return {cplx(1.0), false};
}

cplx base_seed(Lambda lambda, Sheet sheet, cplx first, int side) {
  const BasePoint base = base_point(lambda);
  if (!base.singular) return base_root(lambda, sheet);
  const double others = std::min(std::abs(base.z), std::abs(base.z + lambda.inverse()));
  const cplx dir = first - base.z;
  if (dir == cplx(0.0)) throw Error(ErrorCode::InvalidArgument, "first vertex equals the base");
  const cplx probe = base.z + dir * (std::min(0.25 * others, std::abs(dir)) / std::abs(dir));
  const cplx w = side >= 0 ? slit_branch(probe, lambda) : slit_branch_lower(probe, lambda);
  return sign_of(sheet) * w;
}

Circle alpha_circle(Lambda lambda) noexcept {
  return {cplx(-0.5 * lambda.inverse()), 0.5 * (lambda.value() + lambda.inverse())};
}

Circle companion_circle(Lambda lambda) noexcept {
  return {cplx(0.5 * lambda.value()), 0.5 * (lambda.value() + lambda.inverse())};
}

namespace {

cplx circle_top(const Circle& c) { return c.center + cplx(0.0, c.radius); }

// w at `target`, reached by a straight segment from the base point.
cplx lift_from_base(Lambda lambda, Sheet sheet, cplx target) {
  const BasePoint base = base_point(lambda);
  const std::vector<cplx> seg{base.z, target};
  const cplx seed = base_seed(lambda, sheet, target, target.imag() >= 0.0 ? 1 : -1);
  return continue_sheet(seg, seed, lambda, {base.singular, false}).end_w();
}

}  // namespace

SheetedPath cycle_path(const Circle& circle, Lambda lambda, Sheet sheet) {
  const cplx top = circle_top(circle);
  const cplx w_top = lift_from_base(lambda, sheet, top);
  const auto loop = arc_polyline(circle.center, circle.radius, 0.5 * kPi, 2.5 * kPi, lambda);
  return continue_sheet(loop, w_top, lambda);
}

PeriodVector period_vectors(Lambda lambda, const Normalization& norm, Sheet sheet) {
  PeriodVector pv;
  pv.translation = integrate(cycle_path(alpha_circle(lambda), lambda, sheet), norm);
  pv.companion = integrate(cycle_path(companion_circle(lambda), lambda, sheet), norm);
  return pv;
}

SheetedPath end_spacing_path(Lambda lambda) {
  const double right = 0.5 * lambda.value(), left = -2.0 * lambda.inverse();
  const auto arc = arc_polyline(0.5 * (right + left), 0.5 * (right - left), 0.0, kPi, lambda);
  return continue_sheet(arc, slit_branch(arc.front(), lambda), lambda);
}

double unnormalized_end_spacing(Lambda lambda) {
  return integrate(end_spacing_path(lambda), Normalization(NormKind::Unnormalized, lambda))[2];
}

// ---------------------------------------------------------------------------

namespace {

void append(std::vector<cplx>& dst, const std::vector<cplx>& src) {
  // src starts at dst.back(); skip the duplicate
  dst.insert(dst.end(), src.begin() + 1, src.end());
}

int winding_of(double total_angle) {
  return static_cast<int>(std::ceil((total_angle - kPi) / kTwoPi));
}

}  // namespace

Route polar_route(Lambda lambda, Sheet sheet, double r, const std::vector<double>& angles,
                  int alpha_circuits) {
  if (!(r > 0.0) || !std::isfinite(r)) {
    throw Error(ErrorCode::SingularPoint, "target radius must be positive and finite");
  }
  const int side = !angles.empty() && angles.back() < 0.0 ? -1 : 1;
  for (double t : angles) {
    if ((t < 0.0 && side > 0) || (t > 0.0 && side < 0)) {
      throw Error(ErrorCode::InvalidArgument, "route angles must share one sign");
    }
  }
  const double l = lambda.value();
  const BasePoint base = base_point(lambda);
  Route route;
  route.ends = {base.singular, false};
  route.vertices.push_back(base.z);

  if (alpha_circuits != 0) {
    if (base.singular) {
      throw Error(ErrorCode::PathBlocked, "alpha circuits need a regular base point");
    }
    const Circle a = alpha_circle(lambda);
    route.vertices.push_back(circle_top(a));
    append(route.vertices,
           arc_polyline(a.center, a.radius, 0.5 * kPi, 0.5 * kPi + kTwoPi * alpha_circuits, lambda));
    route.vertices.push_back(base.z);
  }

  const double x0 = base.z.real();
  if (!base.singular && std::min(x0, r) < l && l < std::max(x0, r)) {
    const double rho = 0.5 * std::min({l - std::min(x0, r), std::max(x0, r) - l, l});
    const double up = side > 0 ? 1.0 : -1.0;
    std::vector<cplx> detour;
    if (x0 < r) {
      route.vertices.push_back(cplx(l - rho));
      detour = arc_polyline(cplx(l), rho, kPi, kPi - up * kPi, lambda);
    } else {
      route.vertices.push_back(cplx(l + rho));
      detour = arc_polyline(cplx(l), rho, 0.0, up * kPi, lambda);
    }
    append(route.vertices, detour);
  }
  if (route.vertices.back() != cplx(r)) route.vertices.push_back(cplx(r));

  double prev = 0.0;
  for (double t : angles) {
    if (t != prev) append(route.vertices, arc_polyline(cplx(0.0), r, prev, t, lambda));
    route.checkpoints.push_back(route.vertices.size() - 1);
    prev = t;
  }

  if (route.vertices.size() > 1) {
    route.seed = base_seed(lambda, sheet, route.vertices[1], side);
  } else {
    route.seed = base.singular ? cplx(0.0) : base_root(lambda, sheet);
  }
  return route;
}

namespace {

// Positions for one radius and same-signed angles (sorted by magnitude).
std::vector<SurfacePoint> immerse_route(const Normalization& norm, Sheet sheet, double r,
                                        const std::vector<double>& angles, int alpha_circuits) {
  const Lambda lambda = norm.lambda();
  const Route route = polar_route(lambda, sheet, r, angles, alpha_circuits);
  const SheetedPath path = continue_sheet(route.vertices, route.seed, lambda, route.ends);
  const auto cum = cumulative_integrals(path, norm);
  std::vector<SurfacePoint> out;
  out.reserve(angles.size());
  for (std::size_t k = 0; k < angles.size(); ++k) {
    const std::size_t j = path.input_index[route.checkpoints[k]];
    out.push_back({cum[j].real(), CurvePoint{path.vertices[j], path.w_values[j], lambda},
                   winding_of(angles[k])});
  }
  return out;
}

}  // namespace

std::vector<std::vector<SurfacePoint>> immerse_polar(const Normalization& norm, Sheet sheet,
                                                     const std::vector<double>& radii,
                                                     const std::vector<double>& angles,
                                                     int alpha_circuits) {
  std::vector<std::size_t> pos, neg;
  for (std::size_t k = 0; k < angles.size(); ++k) (angles[k] < 0.0 ? neg : pos).push_back(k);
  std::sort(pos.begin(), pos.end(), [&](auto a, auto b) { return angles[a] < angles[b]; });
  std::sort(neg.begin(), neg.end(), [&](auto a, auto b) { return angles[a] > angles[b]; });

  const SurfacePoint blank{Vec3::Zero(), CurvePoint{cplx(1.0), cplx(0.0), norm.lambda()}, 0};
  std::vector<std::vector<SurfacePoint>> out(radii.size(),
                                             std::vector<SurfacePoint>(angles.size(), blank));
  parallel_for(radii.size(), [&](std::size_t i) {
    for (const auto* group : {&pos, &neg}) {
      if (group->empty()) continue;
      std::vector<double> ts;
      for (auto k : *group) ts.push_back(angles[k]);
      const auto pts = immerse_route(norm, sheet, radii[i], ts, alpha_circuits);
      for (std::size_t m = 0; m < group->size(); ++m) out[i][(*group)[m]] = pts[m];
    }
  });
  return out;
}

std::vector<SurfacePoint> immerse(const Normalization& norm, const std::vector<cplx>& targets,
                                  Sheet sheet, RouteOptions options) {
  const SurfacePoint blank{Vec3::Zero(), CurvePoint{cplx(1.0), cplx(0.0), norm.lambda()}, 0};
  std::vector<SurfacePoint> out(targets.size(), blank);
  parallel_for(targets.size(), [&](std::size_t i) {
    const cplx z = targets[i];
    if (z == cplx(0.0)) throw Error(ErrorCode::SingularPoint, "target z = 0 is a puncture");
    const double t = std::arg(z) + kTwoPi * options.winding;
    out[i] = immerse_route(norm, sheet, std::abs(z), {t}, options.alpha_circuits).front();
  });
  return out;
}

LoopComparison loop_at_target(const Normalization& norm, cplx target, int circuits,
                              Sheet sheet) {
  const Lambda lambda = norm.lambda();
  const Route route = polar_route(lambda, sheet, std::abs(target), {std::arg(target)});
  const Circle a = alpha_circle(lambda);
  const cplx top = a.center + cplx(0.0, a.radius);
  std::vector<cplx> verts = route.vertices;
  const std::size_t at_target = verts.size() - 1;
  verts.push_back(top);
  append(verts, arc_polyline(a.center, a.radius, 0.5 * kPi, 0.5 * kPi + kTwoPi * circuits, lambda));
  verts.push_back(target);
  const SheetedPath path = continue_sheet(verts, route.seed, lambda, route.ends);
  const auto cum = cumulative_integrals(path, norm);
  const cplx w_top = path.w_values[path.input_index[at_target + 1]];
  const cplx w_alpha = cycle_path(a, lambda, sheet).w_values.front();
  const int orientation = std::abs(w_top - w_alpha) <= std::abs(w_top + w_alpha) ? 1 : -1;
  return {cum[path.input_index[at_target]].real(), cum.back().real(), orientation};
}

}  // namespace riemann
