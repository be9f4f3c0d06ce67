#include "riemann/limits.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "riemann/analysis.hpp"
#include "riemann/foliation.hpp"
#include "riemann/parallel.hpp"

namespace riemann {

std::vector<double> Annulus::radii() const {
  std::vector<double> out(radial);
  const double lo = -std::log(L), span = 2.0 * std::log(L);
  for (int i = 0; i < radial; ++i) out[i] = std::exp(lo + span * (i + 0.5) / radial);
  return out;
}

std::vector<double> Annulus::angles() const {
  std::vector<double> out(angular);
  for (int j = 0; j < angular; ++j) out[j] = -kPi + kTwoPi * (j + 0.5) / angular;
  return out;
}

void Annulus::validate() const {
  if (!(L > 1.0) || !std::isfinite(L)) throw Error(ErrorCode::InvalidArgument, "annulus needs L > 1");
  if (radial < 8 || angular < 8) {
    throw Error(ErrorCode::InvalidArgument, "annulus resolutions must be at least 8");
  }
}

bool ClipRegion::contains(const Vec3& p) const noexcept {
  return kind == ClipKind::Ball ? p.norm() <= r : std::abs(p.z()) <= r;
}

void ClipRegion::validate() const {
  if (!(r > 0.0)) throw Error(ErrorCode::InvalidArgument, "clip radius must be positive");
}

const char* to_string(ClipKind kind) noexcept { return kind == ClipKind::Ball ? "ball" : "slab"; }

// ---------------------------------------------------------------------------

namespace {

Radicand factor_radicand(Lambda lambda, bool catenoid) {
  const double l = lambda.value(), li = lambda.inverse();
  Radicand r = curve_radicand(lambda);
  if (catenoid) {
    r.value = [l](cplx z) { return z / ((z - l) * (l * z + 1.0)); };
  } else {
    r.value = [l, li](cplx z) { return z / ((1.0 - z / l) * (z + li)); };
  }
  return r;
}

struct FactorPath {
  RootPath roots;
  Route route;
};

FactorPath factor_path(Lambda lambda, cplx z, int winding, bool catenoid) {
  if (z == cplx(0.0)) throw Error(ErrorCode::SingularPoint, "z = 0 is a puncture");
  if (base_point(lambda).singular) {
    throw Error(ErrorCode::BranchAmbiguity, "correction factor is singular at the base point");
  }
  const double t = std::arg(z) + kTwoPi * winding;
  FactorPath fp;
  fp.route = polar_route(lambda, Sheet::Principal, std::abs(z), {t});
  const Radicand rad = factor_radicand(lambda, catenoid);
  try {
    fp.roots = continue_root(fp.route.vertices, std::sqrt(rad.value(cplx(1.0))), rad);
  } catch (const Error& e) {
    throw Error(ErrorCode::BranchAmbiguity, e.what());
  }
  return fp;
}

cplx factor_from_root(cplx root, bool catenoid) { return catenoid ? root - 1.0 : 1.0 - root; }

}  // namespace

std::vector<cplx> correction_factors(Lambda lambda, const std::vector<cplx>& targets,
                                     bool catenoid, int winding) {
  std::vector<cplx> out(targets.size());
  parallel_for(targets.size(), [&](std::size_t i) {
    const FactorPath fp = factor_path(lambda, targets[i], winding, catenoid);
    out[i] = factor_from_root(fp.roots.roots.back(), catenoid);
  });
  return out;
}

cplx f0(cplx z, Lambda lambda, int winding) {
  return correction_factors(lambda, {z}, true, winding).front();
}

cplx f_inf(cplx z, Lambda lambda, int winding) {
  return correction_factors(lambda, {z}, false, winding).front();
}

Decomposition decompose(Lambda lambda, cplx z, int winding) {
  const bool catenoid = lambda.value() < 1.0;
  const Normalization norm(NormKind::PaperNormalized, lambda);
  const FactorPath fp = factor_path(lambda, z, winding, catenoid);

  const SheetedPath path =
      continue_sheet(fp.route.vertices, fp.route.seed, lambda, fp.route.ends);
  Decomposition d;
  d.z = z;
  d.immersion = integrate(path, norm);
  d.reference = catenoid ? catenoid_point(z) : helicoid_point(z, winding);

  const Radicand rad = factor_radicand(lambda, catenoid);
  const auto& vs = fp.roots.vertices;
  const auto& rs = fp.roots.roots;
  CVec3 total = CVec3::Zero();
  for (std::size_t k = 0; k + 1 < vs.size(); ++k) {
    const cplx za = vs[k], dz = vs[k + 1] - vs[k];
    if (dz == cplx(0.0)) continue;
    const cplx ra = rs[k], rb = rs[k + 1];
    auto f = [&](double t) -> CVec3 {
      const cplx zz = za + t * dz;
      const cplx root = nearest_root(rad.value(zz), ra + t * (rb - ra));
      const CVec3 base = catenoid ? catenoid_integrand(zz) : helicoid_integrand(zz);
      return factor_from_root(root, catenoid) * base * dz;
    };
    QuadratureOptions o;
    o.abs_tol = kAbsTolPerLength * std::abs(dz);
    o.rel_tol = 1e-12;
    total += gauss_kronrod(f, 0.0, 1.0, o).value;
  }
  d.correction = catenoid ? Vec3(total.real()) : Vec3(-total.real());
  d.residual = (d.immersion - d.reference - d.correction).norm();
  return d;
}

// ---------------------------------------------------------------------------

bool ConvergenceReport::monotone() const {
  for (std::size_t k = 1; k < deviations.size(); ++k) {
    if (!(deviations[k] < deviations[k - 1])) return false;
  }
  return true;
}

double end_spacing(const Normalization& norm) {
  return unnormalized_end_spacing(norm.lambda()) * norm.scale();
}

double annulus_max_abs_k(const Normalization& norm, const Annulus& annulus) {
  double worst = 0.0;
  for (double r : annulus.radii()) {
    for (double t : annulus.angles()) {
      worst = std::max(worst, abs_gauss_curvature(std::polar(r, t), norm));
    }
  }
  return worst;
}

namespace {

ConvergenceReport sweep(const std::vector<double>& lambdas, const Annulus& annulus,
                        const ClipRegion& clip, ReferenceKind kind, int max_winding) {
  annulus.validate();
  clip.validate();
  ConvergenceReport rep;
  rep.reference = to_string(kind);
  rep.normalization = to_string(NormKind::PaperNormalized);
  rep.annulus = annulus;
  rep.clip = clip;
  rep.max_winding = max_winding;

  const auto radii = annulus.radii();
  const auto base_angles = annulus.angles();
  std::vector<double> angles;
  std::vector<int> windings;
  for (int n = -max_winding; n <= max_winding; ++n) {
    for (double t : base_angles) {
      angles.push_back(t + kTwoPi * n);
      windings.push_back(n);
    }
  }

  for (double lv : lambdas) {
    const Lambda lambda(lv);
    const Normalization norm(NormKind::PaperNormalized, lambda);
    const auto pts = immerse_polar(norm, Sheet::Principal, radii, angles);
    double dev = 0.0;
    std::size_t kept = 0;
    for (std::size_t i = 0; i < radii.size(); ++i) {
      for (std::size_t j = 0; j < angles.size(); ++j) {
        const cplx z = std::polar(radii[i], angles[j]);
        const Vec3 ref =
            kind == ReferenceKind::Catenoid ? catenoid_point(z) : helicoid_point(z, windings[j]);
        if (!clip.contains(ref)) continue;
        ++kept;
        dev = std::max(dev, (pts[i][j].position - ref).norm());
      }
    }
    rep.lambdas.push_back(lv);
    rep.deviations.push_back(dev);
    rep.end_spacings.push_back(end_spacing(norm));
    rep.max_abs_k.push_back(annulus_max_abs_k(norm, annulus));
    rep.samples.push_back(kept);
  }
  return rep;
}

}  // namespace

ConvergenceReport catenoid_limit_sweep(const std::vector<double>& lambdas,
                                       const Annulus& annulus, const ClipRegion& clip) {
  for (double l : lambdas) {
    if (!(l > 0.0 && l < 1.0)) {
      throw Error(ErrorCode::InvalidArgument, "catenoid sweep needs 0 < lambda < 1");
    }
  }
  return sweep(lambdas, annulus, clip, ReferenceKind::Catenoid, 0);
}

ConvergenceReport helicoid_limit_sweep(const std::vector<double>& lambdas,
                                       const Annulus& annulus, const ClipRegion& clip,
                                       int max_winding) {
  for (double l : lambdas) {
    if (!(l > 1.0) || !std::isfinite(l)) {
      throw Error(ErrorCode::InvalidArgument, "helicoid sweep needs lambda > 1");
    }
  }
  if (max_winding < 1) throw Error(ErrorCode::InvalidArgument, "max winding must be at least 1");
  return sweep(lambdas, annulus, clip, ReferenceKind::Helicoid, max_winding);
}

// ---------------------------------------------------------------------------

ConjugateReport conjugate_check(Lambda lambda, const std::vector<CurvePoint>& samples) {
  const Lambda dual = lambda.reciprocal();
  const double s = paper_scale(lambda);
  const double sd = paper_scale(dual);
  Eigen::Matrix3d flip = Eigen::Matrix3d::Identity();
  flip(0, 0) = flip(1, 1) = -1.0;
  const cplx iu(0.0, 1.0);

  ConjugateReport rep;
  rep.lambda = lambda.value();
  for (const auto& p : samples) {
    const cplx z2 = -p.z, w2 = iu * p.w;
    const double scale = std::pow(1.0 + std::abs(p.z), 3);
    rep.max_curve_residual =
        std::max(rep.max_curve_residual, std::abs(w2 * w2 - curve_rhs(z2, dual)) / scale);
    const CVec3 lhs = iu * phi(p, Normalization(NormKind::Unnormalized, lambda)) * s;
    const CVec3 rhs = -(flip.cast<cplx>() * phi_raw(z2, w2, sd));
    const double r = (lhs - rhs).norm() / std::max(lhs.norm(), 1e-300);
    rep.residuals.push_back(r);
    rep.max_residual = std::max(rep.max_residual, r);
  }

  auto bp = branch_points(lambda).finite;
  auto dual_bp = branch_points(dual).finite;
  std::vector<double> mapped, expected;
  for (auto b : bp) mapped.push_back((-b).real());
  for (auto b : dual_bp) expected.push_back(b.real());
  std::sort(mapped.begin(), mapped.end());
  std::sort(expected.begin(), expected.end());
  rep.branch_points_map = true;
  for (std::size_t k = 0; k < mapped.size(); ++k) {
    if (std::abs(mapped[k] - expected[k]) > 1e-14 * (1.0 + std::abs(expected[k]))) {
      rep.branch_points_map = false;
    }
  }
  return rep;
}

std::vector<CurvePoint> random_curve_points(Lambda lambda, std::size_t count, unsigned seed,
                                            double L) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> logr(-std::log(L), std::log(L));
  std::uniform_real_distribution<double> ang(-kPi, kPi);
  std::bernoulli_distribution flip(0.5);
  std::vector<CurvePoint> out;
  out.reserve(count);
  while (out.size() < count) {
    const cplx z = std::polar(std::exp(logr(rng)), ang(rng));
    const bool negate = flip(rng);
    if (branch_distance(z, lambda) < 1e-3 * std::max(1.0, std::abs(z))) continue;
    const cplx w = std::sqrt(curve_rhs(z, lambda));
    out.push_back({z, negate ? -w : w, lambda});
  }
  return out;
}

// ---------------------------------------------------------------------------

std::vector<PlaneRow> plane_limit_experiment(const std::vector<double>& lambdas,
                                             const PlaneOptions& options) {
  std::vector<PlaneRow> rows;
  for (double lv : lambdas) {
    const Lambda lambda(lv);
    const Normalization norm(NormKind::FixedVerticalSpacing, lambda);
    const FoliationSlice neck = level_slice(norm, 0.5);
    const double spacing = end_spacing(norm);

    double L = options.L;
    std::vector<std::vector<SurfacePoint>> pts;
    Annulus grid{L, options.radial, options.angular};
    for (int attempt = 0; attempt < 12; ++attempt) {
      grid.L = L;
      pts = immerse_polar(norm, Sheet::Principal, grid.radii(), grid.angles());
      bool edge_inside = false;
      for (std::size_t i : {std::size_t{0}, pts.size() - 1}) {
        for (const auto& p : pts[i]) edge_inside = edge_inside || p.position.norm() <= options.ball;
      }
      if (!edge_inside) break;
      L *= 3.0;
    }

    const auto radii = grid.radii();
    const double dlog = 2.0 * std::log(grid.L) / grid.radial;
    const double dtheta = kTwoPi / grid.angular;
    double area = 0.0, vertical = 0.0, deviation = 0.0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      for (const auto& p : pts[i]) {
        if (p.position.norm() > options.ball) continue;
        const double da = 4.0 * metric_factor(p.source, norm) * radii[i] * radii[i] * dlog * dtheta;
        area += da;
        if (1.0 - std::abs(gauss_map(p.source).z()) <= options.tilt) vertical += da;
        const Eigen::Vector2d horizontal(p.position.x() - neck.center.x(),
                                         p.position.y() - neck.center.y());
        if (horizontal.norm() > 4.0 * neck.radius) {
          const double off = p.position.z() - neck.height;
          const double k = std::round(off / spacing);
          deviation = std::max(deviation, std::abs(off - k * spacing));
        }
      }
    }
    rows.push_back({lv, area > 0.0 ? vertical / area : 0.0, neck.radius, deviation, grid.L});
  }
  return rows;
}

ConvergenceReport plane_report(const std::vector<PlaneRow>& rows) {
  ConvergenceReport rep;
  rep.reference = "planes";
  rep.normalization = to_string(NormKind::FixedVerticalSpacing);
  for (const auto& r : rows) {
    const Normalization norm(NormKind::FixedVerticalSpacing, Lambda(r.lambda));
    rep.lambdas.push_back(r.lambda);
    rep.deviations.push_back(1.0 - r.vertical_fraction);
    rep.end_spacings.push_back(end_spacing(norm));
    rep.max_abs_k.push_back(annulus_max_abs_k(norm, Annulus{r.annulus_L, 48, 64}));
    rep.samples.push_back(0);
  }
  return rep;
}

}  // namespace riemann
