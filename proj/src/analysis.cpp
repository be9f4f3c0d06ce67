#include "riemann/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "riemann/parallel.hpp"

namespace riemann {

double abs_gauss_curvature(cplx z, const Normalization& norm) {
  if (z == cplx(0.0)) throw Error(ErrorCode::SingularPoint, "curvature is undefined at z = 0");
  const Lambda lambda = norm.lambda();
  const double r = std::abs(z);
  const double s = norm.scale();
  const double q = r + 1.0 / r;
  return 16.0 * std::abs(z - lambda.value()) * std::abs(z + lambda.inverse()) /
         (s * s * r * q * q * q * q);
}

double general_curvature(cplx g, cplx g_prime, cplx f) {
  if (f == cplx(0.0)) throw Error(ErrorCode::DivisionByZero, "f vanishes");
  const double d = 1.0 + std::norm(g);
  const double k = 4.0 * std::abs(g_prime) / (std::abs(f) * d * d);
  return k * k;
}

double riemann_general_curvature(const CurvePoint& point, const Normalization& norm) {
  if (point.z == cplx(0.0) || point.w == cplx(0.0)) {
    throw Error(ErrorCode::SingularPoint, "data are singular where z or w vanishes");
  }
  return general_curvature(point.z, cplx(1.0), norm.scale() / (point.z * point.w));
}

BoundChain bound_chain(cplx z, Lambda lambda) {
  const Normalization paper(NormKind::PaperNormalized, lambda);
  BoundChain c;
  c.abs_k = abs_gauss_curvature(z, paper);
  const double r = std::abs(z);
  const double q = r + 1.0 / r;
  c.middle = 16.0 * (r + 1.0) * (r + 1.0) / (r * q * q * q * q);
  c.first_holds = c.abs_k <= c.middle * (1.0 + 1e-12);
  c.second_holds = c.middle <= 4.0 * (1.0 + 1e-12);
  return c;
}

namespace {

struct GridBest {
  double value = -1.0;
  int i = 0, j = 0;
};

double angular_distance(double a, double b) {
  double d = std::fmod(std::abs(a - b), kTwoPi);
  return std::min(d, kTwoPi - d);
}

}  // namespace

CurvatureBoundReport verify_curvature_bound(Lambda lambda, const CurvatureGrid& grid,
                                            bool refine) {
  if (grid.radial < 2 || grid.angular < 4 || !(grid.r_min > 0.0) || !(grid.r_max > grid.r_min)) {
    throw Error(ErrorCode::InvalidArgument, "curvature grid needs radial >= 2, angular >= 4");
  }
  const Normalization paper(NormKind::PaperNormalized, lambda);
  const double rho0 = std::log(grid.r_min);
  const double drho = (std::log(grid.r_max) - rho0) / (grid.radial - 1);
  const double dtheta = kTwoPi / grid.angular;
  auto eval = [&](double rho, double theta) {
    return abs_gauss_curvature(std::polar(std::exp(rho), theta), paper);
  };

  // Every grid value is kept so the refinement can start from the best few.
  std::vector<double> values(static_cast<std::size_t>(grid.radial) * grid.angular);
  parallel_for(grid.radial, [&](std::size_t i) {
    for (int j = 0; j < grid.angular; ++j) {
      values[i * grid.angular + j] = eval(rho0 + drho * i, dtheta * j);
    }
  });
  std::vector<std::size_t> order(values.size());
  for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
  const std::size_t top = std::min<std::size_t>(8, order.size());
  std::partial_sort(order.begin(), order.begin() + top, order.end(), [&](auto a, auto b) {
    return values[a] > values[b] || (values[a] == values[b] && a < b);
  });

  CurvatureBoundReport rep{};
  rep.lambda = lambda.value();
  const std::size_t g = order.front();
  rep.grid_max = values[g];
  rep.grid_argmax = std::polar(std::exp(rho0 + drho * (g / grid.angular)),
                               dtheta * static_cast<double>(g % grid.angular));
  double best = rep.grid_max;
  double best_rho = rho0 + drho * (g / grid.angular);
  double best_theta = dtheta * static_cast<double>(g % grid.angular);

  if (refine) {
    for (std::size_t t = 0; t < top; ++t) {
      const std::size_t k = order[t];
      double rho = rho0 + drho * (k / grid.angular);
      double theta = dtheta * static_cast<double>(k % grid.angular);
      double value = values[k];
      double hr = drho, ht = dtheta;
      for (int iter = 0; iter < 20000 && (hr > 1e-12 || ht > 1e-12); ++iter) {
        double cand_v = value, cand_r = rho, cand_t = theta;
        for (int a = -1; a <= 1; ++a) {
          for (int b = -1; b <= 1; ++b) {
            if (a == 0 && b == 0) continue;
            const double v = eval(rho + a * hr, theta + b * ht);
            if (v > cand_v) {
              cand_v = v;
              cand_r = rho + a * hr;
              cand_t = theta + b * ht;
            }
          }
        }
        if (cand_v > value) {
          value = cand_v;
          rho = cand_r;
          theta = cand_t;
        } else {
          hr *= 0.5;
          ht *= 0.5;
        }
      }
      if (value > best) {
        best = value;
        best_rho = rho;
        best_theta = theta;
      }
    }
  }
  rep.max_abs_k = best;
  rep.argmax = std::polar(std::exp(best_rho), best_theta);
  rep.argmax_in_cell_of_pm_i =
      std::abs(best_rho) <= drho && std::min(angular_distance(best_theta, 0.5 * kPi),
                                             angular_distance(best_theta, -0.5 * kPi)) <= dtheta;
  rep.within_bound = rep.max_abs_k <= 4.0;
  rep.conjecture = rep.max_abs_k <= 2.0 + 1e-3;
  return rep;
}

// ---------------------------------------------------------------------------

const char* to_string(SymmetryKind kind) noexcept {
  switch (kind) {
    case SymmetryKind::Reflection: return "reflection";
    case SymmetryKind::Rotation: return "rotation";
    case SymmetryKind::LineRotation: return "line_rotation";
    case SymmetryKind::LiteralInverse: return "literal_inverse";
  }
  return "unknown";
}

cplx CurveMap::map_z(cplx z) const noexcept {
  switch (kind) {
    case SymmetryKind::Reflection:
    case SymmetryKind::LineRotation: return std::conj(z);
    case SymmetryKind::Rotation:
    case SymmetryKind::LiteralInverse: return -1.0 / z;
  }
  return z;
}

cplx CurveMap::map_w(cplx z, cplx w) const noexcept {
  switch (kind) {
    case SymmetryKind::Reflection: return std::conj(w);
    case SymmetryKind::LineRotation: return -std::conj(w);
    case SymmetryKind::Rotation: return -w / (z * z);
    case SymmetryKind::LiteralInverse: return w / (z * z);
  }
  return w;
}

CurveMap curve_map(SymmetryKind kind) {
  CurveMap m{kind, false, Eigen::Matrix3d::Identity()};
  switch (kind) {
    case SymmetryKind::Reflection:
      m.antiholomorphic = true;
      m.linear.diagonal() << 1.0, -1.0, 1.0;
      break;
    case SymmetryKind::LineRotation:
      m.antiholomorphic = true;
      m.linear.diagonal() << -1.0, 1.0, -1.0;
      break;
    case SymmetryKind::Rotation:
      m.linear.diagonal() << -1.0, 1.0, -1.0;
      break;
    case SymmetryKind::LiteralInverse:
      m.linear.diagonal() << 1.0, -1.0, 1.0;
      break;
  }
  return m;
}

bool SymmetryReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.passed; });
}

namespace {

SheetedPath route_path(Lambda lambda, Sheet sheet, cplx z) {
  if (z == cplx(0.0)) throw Error(ErrorCode::SingularPoint, "z = 0 is a puncture");
  const Route r = polar_route(lambda, sheet, std::abs(z), {std::arg(z)});
  return continue_sheet(r.vertices, r.seed, lambda, r.ends);
}

// Route to the sample on whichever sheet reproduces its w.
SheetedPath sample_path(const CurvePoint& p) {
  SheetedPath path = route_path(p.lambda, Sheet::Principal, p.z);
  const cplx w = path.end_w();
  const double tol = 1e-6 * (1.0 + std::abs(p.w));
  if (std::abs(w - p.w) <= tol) return path;
  if (std::abs(w + p.w) <= tol) return route_path(p.lambda, Sheet::Opposite, p.z);
  std::ostringstream os;
  os << "sample (" << p.z << ", " << p.w << ") is not on the curve";
  throw Error(ErrorCode::InvalidArgument, os.str());
}

SheetedPath map_path(const SheetedPath& path, const CurveMap& m) {
  SheetedPath out = path;
  for (std::size_t k = 0; k < path.vertices.size(); ++k) {
    out.vertices[k] = m.map_z(path.vertices[k]);
    out.w_values[k] = m.map_w(path.vertices[k], path.w_values[k]);
  }
  return out;
}

cplx fixed_point(SymmetryKind kind, Lambda lambda) {
  switch (kind) {
    case SymmetryKind::Reflection: return cplx(2.0 * lambda.value());
    case SymmetryKind::Rotation: return cplx(0.0, 1.0);
    case SymmetryKind::LineRotation: return cplx(0.5 * lambda.value());
    case SymmetryKind::LiteralInverse: break;
  }
  throw Error(ErrorCode::InvalidArgument, "the literal inverse map has no fixed point");
}

}  // namespace

SymmetryReport check_symmetries(const Normalization& norm, const std::vector<CurvePoint>& samples,
                                double tolerance) {
  const Lambda lambda = norm.lambda();
  SymmetryReport rep;
  rep.tolerance = tolerance;

  std::vector<SheetedPath> paths(samples.size(), SheetedPath{{}, {}, lambda, {}, {}});
  std::vector<Vec3> images(samples.size());
  parallel_for(samples.size(), [&](std::size_t i) {
    paths[i] = sample_path(samples[i]);
    images[i] = integrate(paths[i], norm);
  });

  for (SymmetryKind kind :
       {SymmetryKind::Reflection, SymmetryKind::Rotation, SymmetryKind::LineRotation}) {
    const CurveMap m = curve_map(kind);
    const SheetedPath fpath = route_path(lambda, Sheet::Principal, fixed_point(kind, lambda));
    const Vec3 q = integrate(fpath, norm);
    const Vec3 qm = integrate(map_path(fpath, m), norm);

    SymmetryCheck check{kind, q, std::vector<double>(samples.size(), 0.0), 0.0, true};
    parallel_for(samples.size(), [&](std::size_t i) {
      const Vec3 mapped = q + integrate(map_path(paths[i], m), norm) - qm;
      const Vec3 expected = m.linear * (images[i] - q) + q;
      check.residuals[i] = (mapped - expected).norm();
    });
    for (double r : check.residuals) check.max_residual = std::max(check.max_residual, r);
    check.passed = check.max_residual < tolerance;
    rep.checks.push_back(std::move(check));
  }
  return rep;
}

// ---------------------------------------------------------------------------

std::vector<Vec3> real_interval_image(const Normalization& norm, double a, double b, int samples) {
  const Lambda lambda = norm.lambda();
  if (samples < 3) throw Error(ErrorCode::InvalidArgument, "need at least 3 samples");
  if (a == b || (a < 0.0) != (b < 0.0) || a == 0.0 || b == 0.0) {
    throw Error(ErrorCode::InvalidArgument, "interval must not contain 0");
  }
  std::vector<cplx> vertices(samples);
  for (int k = 0; k < samples; ++k) {
    const double t = static_cast<double>(k) / (samples - 1);
    vertices[k] = cplx(a * std::pow(b / a, t));
  }
  vertices.front() = cplx(a);
  vertices.back() = cplx(b);
  auto is_branch = [&](double x) { return x == lambda.value() || x == -lambda.inverse(); };
  const PathEnds ends{is_branch(a), is_branch(b)};
  const cplx seed = slit_branch(ends.singular_start ? vertices[1] : vertices[0], lambda);
  const SheetedPath path = continue_sheet(vertices, seed, lambda, ends);
  const auto cum = cumulative_integrals(path, norm);

  // Anchor the relative positions with an immersion of an interior point.
  const std::size_t mid = static_cast<std::size_t>(samples / 2);
  const std::size_t jm = path.input_index[mid];
  const Vec3 anchor = immerse(norm, {vertices[mid]}).front().position;
  std::vector<Vec3> out;
  out.reserve(samples);
  for (std::size_t k = 0; k < static_cast<std::size_t>(samples); ++k) {
    out.push_back(anchor + (cum[path.input_index[k]] - cum[jm]).real());
  }
  return out;
}

Vec3 branch_point_image(const Normalization& norm) {
  const Lambda lambda = norm.lambda();
  if (base_point(lambda).singular) return Vec3::Zero();
  return real_interval_image(norm, 0.5 * lambda.value(), lambda.value(), 3).back();
}

namespace {

IntervalCheck line_check(std::string name, const std::vector<Vec3>& pts, double tolerance) {
  Vec3 mean = Vec3::Zero();
  for (const auto& p : pts) mean += p;
  mean /= static_cast<double>(pts.size());
  Eigen::Matrix3d cov = Eigen::Matrix3d::Zero();
  for (const auto& p : pts) cov += (p - mean) * (p - mean).transpose();
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(cov);
  const Vec3 dir = es.eigenvectors().col(2);
  double lo = 0.0, hi = 0.0, worst = 0.0;
  for (const auto& p : pts) {
    const Vec3 d = p - mean;
    const double t = d.dot(dir);
    lo = std::min(lo, t);
    hi = std::max(hi, t);
    worst = std::max(worst, (d - t * dir).norm());
  }
  const double length = hi - lo;
  const double rel = length > 0.0 ? worst / length : worst;
  return {std::move(name), IntervalKind::Line, rel, length, dir, rel < tolerance};
}

IntervalCheck plane_check(std::string name, const std::vector<Vec3>& pts, double tolerance) {
  double worst = 0.0, length = 0.0;
  for (const auto& p : pts) {
    worst = std::max(worst, std::abs(p[1] - pts.front()[1]));
    length = std::max(length, (p - pts.front()).norm());
  }
  return {std::move(name), IntervalKind::PlanarGeodesic, worst, length, Vec3::UnitY(),
          worst < tolerance};
}

}  // namespace

std::vector<IntervalCheck> interval_checks(const Normalization& norm, int samples, double cutoff,
                                           double tolerance) {
  const double l = norm.lambda().value();
  const double li = norm.lambda().inverse();
  std::vector<IntervalCheck> out;
  out.push_back(line_check("(0,lambda]", real_interval_image(norm, l / cutoff, l, samples),
                           tolerance));
  out.push_back(line_check("(-inf,-1/lambda]",
                           real_interval_image(norm, -li, -li * cutoff, samples), tolerance));
  out.push_back(plane_check("[-1/lambda,0)", real_interval_image(norm, -li, -li / cutoff, samples),
                            tolerance));
  out.push_back(plane_check("[lambda,inf)", real_interval_image(norm, l, l * cutoff, samples),
                            tolerance));
  return out;
}

}  // namespace riemann
