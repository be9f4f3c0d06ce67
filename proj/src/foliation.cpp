#include "riemann/foliation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>

#include <Eigen/Dense>

#include "riemann/analysis.hpp"
#include "riemann/parallel.hpp"

namespace riemann {

const char* to_string(SliceKind kind) noexcept {
  return kind == SliceKind::Circle ? "circle" : "line";
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double circle_residual(const std::vector<Eigen::Vector2d>& pts, const Eigen::Vector2d& c, double r) {
  double worst = 0.0;
  for (const auto& p : pts) worst = std::max(worst, std::abs((p - c).norm() - r));
  return worst;
}

}  // namespace

CircleFit fit_circle(const std::vector<Eigen::Vector2d>& pts) {
  const CircleFit degenerate{Eigen::Vector2d::Zero(), kInf, kInf};
  if (pts.size() < 3) return degenerate;
  Eigen::Vector2d mean = Eigen::Vector2d::Zero();
  for (const auto& p : pts) mean += p;
  mean /= static_cast<double>(pts.size());
  double scale = 0.0;
  for (const auto& p : pts) scale += (p - mean).squaredNorm();
  scale = std::sqrt(scale / pts.size());
  if (!(scale > 0.0)) return degenerate;

  // A (x^2 + y^2) + D x + E y + F = 0 on normalized data; A = 0 is a line.
  Eigen::MatrixXd m(pts.size(), 4);
  for (std::size_t k = 0; k < pts.size(); ++k) {
    const Eigen::Vector2d q = (pts[k] - mean) / scale;
    m.row(k) << q.squaredNorm(), q.x(), q.y(), 1.0;
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeThinV);
  const Eigen::Vector4d a = svd.matrixV().col(3);
  if (std::abs(a[0]) < 1e-14) return degenerate;
  Eigen::Vector2d c(-a[1] / (2.0 * a[0]), -a[2] / (2.0 * a[0]));
  const double r2 = c.squaredNorm() - a[3] / a[0];
  if (!(r2 > 0.0)) return degenerate;
  double r = std::sqrt(r2);
  c = mean + scale * c;
  r *= scale;

  // Gauss-Newton on sum (|p - c| - r)^2.
  for (int iter = 0; iter < 50; ++iter) {
    Eigen::MatrixXd jac(pts.size(), 3);
    Eigen::VectorXd res(pts.size());
    for (std::size_t k = 0; k < pts.size(); ++k) {
      const Eigen::Vector2d d = pts[k] - c;
      const double n = d.norm();
      if (n == 0.0) return degenerate;
      res[k] = n - r;
      jac.row(k) << -d.x() / n, -d.y() / n, -1.0;
    }
    const Eigen::Vector3d step = jac.colPivHouseholderQr().solve(-res);
    c += step.head<2>();
    r += step[2];
    if (step.norm() <= 1e-15 * (1.0 + r)) break;
  }
  if (!std::isfinite(r)) return degenerate;
  return {c, std::abs(r), circle_residual(pts, c, std::abs(r))};
}

LineFit fit_line(const std::vector<Eigen::Vector2d>& pts) {
  Eigen::Vector2d mean = Eigen::Vector2d::Zero();
  for (const auto& p : pts) mean += p;
  mean /= static_cast<double>(std::max<std::size_t>(pts.size(), 1));
  Eigen::Matrix2d cov = Eigen::Matrix2d::Zero();
  for (const auto& p : pts) cov += (p - mean) * (p - mean).transpose();
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(cov);
  const Eigen::Vector2d dir = es.eigenvectors().col(1);
  const Eigen::Vector2d normal(-dir.y(), dir.x());
  double worst = 0.0;
  for (const auto& p : pts) worst = std::max(worst, std::abs((p - mean).dot(normal)));
  return {mean, dir, worst};
}

FoliationSlice fit_slice(const std::vector<Vec3>& points, double height) {
  if (points.size() < kMinSlicePoints) {
    std::ostringstream os;
    os << "slice at height " << height << " has " << points.size() << " points, need "
       << kMinSlicePoints;
    throw Error(ErrorCode::InsufficientSlicePoints, os.str());
  }
  std::vector<Eigen::Vector2d> pts;
  pts.reserve(points.size());
  for (const auto& p : points) pts.emplace_back(p.x(), p.y());
  const CircleFit circle = fit_circle(pts);
  const LineFit line = fit_line(pts);

  FoliationSlice s;
  s.height = height;
  s.points = points.size();
  if (line.residual < circle.residual && circle.radius > kLineRadius) {
    s.kind = SliceKind::Line;
    s.residual = line.residual;
  } else {
    s.kind = SliceKind::Circle;
    s.center = circle.center;
    s.radius = circle.radius;
    s.residual = circle.residual;
  }
  return s;
}

std::vector<Vec3> mesh_slice(const std::vector<Vec3>& vertices,
                             const std::vector<std::array<int, 3>>& triangles, double height) {
  std::map<std::pair<int, int>, Vec3> hits;
  for (const auto& t : triangles) {
    for (int e = 0; e < 3; ++e) {
      const int a = t[e], b = t[(e + 1) % 3];
      const double da = vertices[a].z() - height;
      const double db = vertices[b].z() - height;
      if ((da < 0.0 && db >= 0.0) || (db < 0.0 && da >= 0.0)) {
        const double u = da / (da - db);
        hits.emplace(std::minmax(a, b), vertices[a] + u * (vertices[b] - vertices[a]));
      }
    }
  }
  std::vector<Vec3> out;
  out.reserve(hits.size());
  for (const auto& kv : hits) out.push_back(kv.second);
  return out;
}

EndHeights end_heights(const Normalization& norm) {
  const Lambda lambda = norm.lambda();
  const auto pts = immerse(norm, {cplx(0.5 * lambda.value()), cplx(-2.0 * lambda.inverse())});
  return {pts[0].position.z(), pts[1].position.z()};
}

namespace {

// x3 and position at t on the upper lip of (lambda, inf), integrating from
// the branch point.
struct LipPoint {
  Vec3 position;
  cplx w;
};

LipPoint lip_point(const Normalization& norm, const Vec3& at_branch, double t) {
  const Lambda lambda = norm.lambda();
  const std::vector<cplx> seg{cplx(lambda.value()), cplx(t)};
  const SheetedPath path = continue_sheet(seg, slit_branch(cplx(t), lambda), lambda, {true, false});
  return {at_branch + integrate(path, norm), path.end_w()};
}

}  // namespace

std::vector<Vec3> level_curve(const Normalization& norm, double fraction,
                              const LevelOptions& options) {
  if (!(fraction > 0.0 && fraction < 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "level fraction must lie strictly between 0 and 1");
  }
  const Lambda lambda = norm.lambda();
  const double l = lambda.value();
  const double s = norm.scale();
  const EndHeights eh = end_heights(norm);
  const double c = eh.h0 + fraction * (eh.h_inf - eh.h0);
  const Vec3 at_branch = branch_point_image(norm);

  // Bisection for the start on (lambda, inf), in log(t - lambda).
  double lo = std::log(2.0 * branch_clearance(lambda)), hi = std::log(1e9 * std::max(1.0, l));
  for (int iter = 0; iter < 80; ++iter) {
    const double mid = 0.5 * (lo + hi);
    const double x3 = lip_point(norm, at_branch, l + std::exp(mid)).position.z();
    (x3 < c ? lo : hi) = mid;
  }
  const double t0 = l + std::exp(0.5 * (lo + hi));
  const LipPoint start = lip_point(norm, at_branch, t0);

  cplx z(t0), w = start.w;
  Vec3 pos = start.position;
  std::vector<Vec3> out{pos};
  const cplx iu(0.0, 1.0);
  auto field = [&](cplx zz, cplx ref) {
    return iu * nearest_root(curve_rhs(zz, lambda), ref) / (2.0 * s);
  };
  double sweep = 0.0;
  for (std::size_t step = 0; step < options.max_steps; ++step) {
    const double dz = std::min(options.step * std::abs(z), 0.2 * branch_distance(z, lambda));
    const double h = dz * 2.0 * s / std::abs(w);
    const cplx k1 = iu * w / (2.0 * s);
    const cplx k2 = field(z + 0.5 * h * k1, w);
    const cplx k3 = field(z + 0.5 * h * k2, w);
    const cplx k4 = field(z + h * k3, w);
    cplx zn = z + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    cplx wn = nearest_root(curve_rhs(zn, lambda), w);
    CVec3 seg = segment_integral(z, w, zn, wn, lambda, s);
    for (int it = 0; it < 4; ++it) {
      const double err = c - (pos.z() + seg[2].real());
      if (std::abs(err) <= 1e-13 * (1.0 + std::abs(c))) break;
      zn += err / (2.0 * s / wn);
      wn = nearest_root(curve_rhs(zn, lambda), wn);
      seg = segment_integral(z, w, zn, wn, lambda, s);
    }
    sweep += std::arg(zn / z);
    if (std::abs(sweep) >= kTwoPi) break;
    z = zn;
    w = wn;
    pos += seg.real();
    out.push_back(pos);
  }
  return out;
}

FoliationSlice level_slice(const Normalization& norm, double fraction,
                           const LevelOptions& options) {
  const Lambda lambda = norm.lambda();
  const double l = lambda.value(), li = lambda.inverse();
  if (fraction == 0.0) {
    const auto pts = real_interval_image(norm, l / 100.0, l, 64);
    return fit_slice(pts, pts.back().z());
  }
  if (fraction == 1.0) {
    const auto pts = real_interval_image(norm, -100.0 * li, -li, 64);
    return fit_slice(pts, pts.back().z());
  }
  const auto pts = level_curve(norm, fraction, options);
  return fit_slice(pts, pts.front().z());
}

std::vector<FoliationSlice> foliation_slices(const Normalization& norm,
                                             const std::vector<double>& fractions,
                                             const LevelOptions& options) {
  std::vector<FoliationSlice> out(fractions.size());
  parallel_for(fractions.size(),
               [&](std::size_t i) { out[i] = level_slice(norm, fractions[i], options); });
  return out;
}

double max_menger_curvature(const std::vector<Vec3>& points) {
  double worst = 0.0;
  for (std::size_t k = 1; k + 1 < points.size(); ++k) {
    const Vec3 a = points[k - 1], b = points[k], c = points[k + 1];
    const double denom = (a - b).norm() * (b - c).norm() * (c - a).norm();
    if (denom == 0.0) continue;
    worst = std::max(worst, 2.0 * (b - a).cross(c - a).norm() / denom);
  }
  return worst;
}

FoliationSummary foliation_summary(const Normalization& norm, int count,
                                   const LevelOptions& options) {
  if (count < 3) throw Error(ErrorCode::InvalidArgument, "need at least 3 level circles");
  std::vector<double> fractions(count);
  for (int k = 0; k < count; ++k) fractions[k] = 0.1 + 0.8 * k / (count - 1);
  FoliationSummary out;
  out.lambda = norm.lambda().value();
  out.slices = foliation_slices(norm, fractions, options);
  std::vector<Vec3> centers;
  for (const auto& s : out.slices) centers.emplace_back(s.center.x(), s.center.y(), s.height);
  out.center_curvature = max_menger_curvature(centers);
  out.mid_radius = level_slice(norm, 0.5, options).radius;
  return out;
}

}  // namespace riemann
