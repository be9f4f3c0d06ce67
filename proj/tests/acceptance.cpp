// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>

#include "oracle.hpp"
#include "riemann/analysis.hpp"
#include "riemann/foliation.hpp"
#include "riemann/limits.hpp"
#include "riemann/mesh.hpp"
#include "riemann/reference.hpp"

using namespace riemann;

namespace {

// Frozen from the sweeps with a factor 2 margin (observed 6.688e-3 and 6.397e-3).
constexpr double kCatenoidAtMilli = 1.34e-2;
constexpr double kHelicoidAtKilo = 1.28e-2;

struct Outcome {
  bool passed = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      passed = false;
      if (!detail.empty()) detail += "; ";
      detail += what;
    }
  }
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

bool relative_close(double a, double b, double tol) { return std::abs(a - b) <= tol * std::abs(b); }

Outcome curvature_values() {
  Outcome o;
  for (double l : {0.1, 0.5, 1.0, 2.0, 10.0}) {
    const Normalization raw(NormKind::Unnormalized, Lambda(l));
    const Normalization paper(NormKind::PaperNormalized, Lambda(l));
    const double expected = l < 1.0 ? 1.0 + l * l : 1.0 + 1.0 / (l * l);
    for (cplx z : {cplx(0, 1), cplx(0, -1)}) {
      o.require(relative_close(abs_gauss_curvature(z, raw), l + 1.0 / l, 1e-10), fmt("raw at lambda %g", l));
      o.require(relative_close(abs_gauss_curvature(z, paper), expected, 1e-10), fmt("paper at lambda %g", l));
    }
  }
  return o;
}

Outcome curvature_bound() {
  Outcome o;
  double worst = 0.0, worst_refined = 0.0;
  for (int k = 0; k <= 8; ++k) {
    const double l = std::pow(10.0, -3.0 + 0.75 * k);
    const CurvatureBoundReport r = verify_curvature_bound(Lambda(l));
    worst = std::max(worst, r.grid_max);
    worst_refined = std::max(worst_refined, r.max_abs_k);
    o.require(r.grid_max <= 4.0, fmt("grid max above 4 at lambda %g", l));
    o.require(r.max_abs_k <= 2.0 + 1e-3, fmt("refined max above 2 at lambda %g", l));
    o.require(r.argmax_in_cell_of_pm_i, fmt("argmax away from +-i at lambda %g", l));
  }
  if (o.passed) o.detail = "grid max " + fmt("%.6g", worst) + ", refined max " + fmt("%.12g", worst_refined);
  return o;
}

Outcome periods() {
  Outcome o;
  double companion = 0.0, loop = 0.0;
  for (double l : {0.2, 1.0, 5.0}) {
    const Normalization norm(NormKind::PaperNormalized, Lambda(l));
    const PeriodVector pv = period_vectors(Lambda(l), norm);
    const double t = pv.translation.norm();
    companion = std::max(companion, pv.companion.norm() / t);
    for (cplx target : {cplx(0.5, 0.75), cplx(-3.0, 2.0), cplx(2.0 * l, -0.5 * l)}) {
      for (int circuits : {1, -1}) {
        const LoopComparison c = loop_at_target(norm, target, circuits);
        const Vec3 expected = double(c.orientation * circuits) * pv.translation;
        loop = std::max(loop, (c.looped - c.plain - expected).norm());
      }
    }
  }
  o.require(companion < 1e-6, fmt("companion ratio %.3g", companion));
  o.require(loop < 1e-8, fmt("loop mismatch %.3g", loop));
  if (o.passed) o.detail = "companion/|T| " + fmt("%.3g", companion) + ", loop mismatch " + fmt("%.3g", loop);
  return o;
}

Outcome spacing() {
  Outcome o;
  double prev = INFINITY, last = 0.0;
  for (double l : {10.0, 100.0, 1000.0}) {
    last = end_spacing(Normalization(NormKind::PaperNormalized, Lambda(l)));
    const double gap = std::abs(last - kTwoPi);
    o.require(gap < prev, fmt("gap not decreasing at lambda %g", l));
    prev = gap;
  }
  o.require(prev < 0.01 * kTwoPi, fmt("spacing %.8g at lambda 1000", last));
  if (o.passed) o.detail = "spacing at 1000 = " + fmt("%.8g", last);
  return o;
}

Outcome sweep(const ConvergenceReport& rep, double frozen) {
  Outcome o;
  o.require(rep.monotone(), "not strictly decreasing");
  o.require(rep.deviations.back() < frozen, fmt("final deviation %.4g", rep.deviations.back()));
  std::string d;
  for (double v : rep.deviations) d += (d.empty() ? "" : ", ") + fmt("%.4g", v);
  o.detail = o.passed ? "deviations " + d : o.detail + " (" + d + ")";
  return o;
}

Outcome conjugacy() {
  Outcome o;
  double worst = 0.0;
  for (double l : {0.3, 1.0, 3.0}) {
    const ConjugateReport r = conjugate_check(Lambda(l), random_curve_points(Lambda(l), 100, 1));
    worst = std::max({worst, r.max_residual, r.max_curve_residual});
    o.require(r.branch_points_map, fmt("branch points at lambda %g", l));
  }
  o.require(worst < 1e-10, fmt("residual %.3g", worst));
  if (o.passed) o.detail = "max residual " + fmt("%.3g", worst);
  return o;
}

Outcome symmetry_and_foliation() {
  Outcome o;
  double interval = 0.0;
  for (double l : {0.2, 1.0, 5.0}) {
    for (const auto& c : interval_checks(Normalization(NormKind::PaperNormalized, Lambda(l)))) {
      interval = std::max(interval, c.residual);
    }
  }
  o.require(interval < 1e-7, fmt("interval residual %.3g", interval));
  const Normalization one(NormKind::PaperNormalized, Lambda(1.0));
  std::vector<double> fractions;
  for (int k = 1; k <= 20; ++k) fractions.push_back(k / 21.0);
  double fit = 0.0;
  for (const auto& s : foliation_slices(one, fractions)) {
    o.require(s.kind == SliceKind::Circle, fmt("slice at height %g not a circle", s.height));
    fit = std::max(fit, s.residual / s.radius);
  }
  o.require(fit < 1e-6, fmt("circle fit %.3g", fit));
  std::vector<FoliationSummary> sums;
  for (double l : {1.0, 3.0, 10.0, 30.0}) sums.push_back(foliation_summary(Normalization(NormKind::PaperNormalized, Lambda(l))));
  for (std::size_t k = 1; k < sums.size(); ++k) {
    o.require(sums[k].mid_radius > sums[k - 1].mid_radius, "radius not increasing");
    o.require(sums[k].center_curvature < sums[k - 1].center_curvature, "center curvature not decreasing");
  }
  if (o.passed) o.detail = "interval " + fmt("%.3g", interval) + ", circle fit/r " + fmt("%.3g", fit);
  return o;
}

std::vector<cplx> annulus_points(int n, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> logr(-std::log(10.0), std::log(10.0)), ang(-kPi, kPi);
  std::vector<cplx> out;
  for (int k = 0; k < n; ++k) out.push_back(std::polar(std::exp(logr(rng)), ang(rng)));
  return out;
}

Outcome decompositions() {
  Outcome o;
  double cat = 0.0, hel = 0.0;
  for (cplx z : annulus_points(50, 21)) cat = std::max(cat, decompose(Lambda(0.01), z).residual);
  for (cplx z : annulus_points(50, 22)) hel = std::max(hel, decompose(Lambda(100.0), z).residual);
  o.require(cat < 1e-8, fmt("catenoid split %.3g", cat));
  o.require(hel < 1e-8, fmt("helicoid split %.3g", hel));
  if (o.passed) o.detail = "catenoid split " + fmt("%.3g", cat) + ", helicoid split " + fmt("%.3g", hel);
  return o;
}

Outcome infrastructure() {
  Outcome o;
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> logr(std::log(0.1), std::log(10.0)), ang(-kPi, kPi);
  double worst = 0.0;
  for (int k = 0; k < 200; ++k) {
    const double r = std::exp(logr(rng));
    const double t = ang(rng) + kTwoPi * (k % 3 - 1);
    const int branch = static_cast<int>(std::floor((t + kPi) / kTwoPi));
    const Vec3 c = catenoid_point(std::polar(r, t));
    const Vec3 h = helicoid_point(std::polar(r, t), branch);
    worst = std::max(worst, (oracle::reference_by_quadrature(1.0, r, t) - c).norm() / (1.0 + c.norm()));
    worst = std::max(worst, (oracle::reference_by_quadrature(cplx(0, -1), r, t) - h).norm() / (1.0 + h.norm()));
  }
  o.require(worst < 1e-8, fmt("closed form vs quadrature %.3g", worst));
  const auto build = [] {
    return build_mesh(Normalization(NormKind::PaperNormalized, Lambda(3.0)), MeshGrid{32, 32, 20.0}, 2);
  };
  const SurfaceMesh a = build(), b = build();
  o.require(to_obj(a) == to_obj(b), "OBJ exports differ");
  o.require(to_ply(a) == to_ply(b), "PLY exports differ");
  if (o.passed) o.detail = "quadrature agreement " + fmt("%.3g", worst) + ", exports identical";
  return o;
}

}  // namespace

int main() {
  const Annulus annulus{10.0};
  const ClipRegion ball{ClipKind::Ball, 5.0};
  struct Criterion {
    const char* name;
    double budget;  // seconds
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {"curvature value identity", 1.0, curvature_values},
      {"curvature bound", 60.0, curvature_bound},
      {"period structure", 30.0, periods},
      {"end spacing", 10.0, spacing},
      {"catenoid limit", 120.0,
       [&] { return sweep(catenoid_limit_sweep({0.1, 0.01, 0.001}, annulus, ball), kCatenoidAtMilli); }},
      {"helicoid limit", 120.0,
       [&] { return sweep(helicoid_limit_sweep({10.0, 100.0, 1000.0}, annulus, ball, 4), kHelicoidAtKilo); }},
      {"conjugacy identity", 5.0, conjugacy},
      {"symmetry and foliation", 60.0, symmetry_and_foliation},
      {"decomposition identities", 60.0, decompositions},
      {"infrastructure", 30.0, infrastructure},
  };
  int failed = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[k].run();
    } catch (const std::exception& e) {
      o.passed = false;
      o.detail = e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    o.require(secs < criteria[k].budget, fmt("over the %g s budget", criteria[k].budget));
    std::printf("criterion %2zu %s: %s (%.2f s) %s\n", k + 1, o.passed ? "PASS" : "FAIL", criteria[k].name,
                secs, o.detail.c_str());
    if (!o.passed) ++failed;
  }
  std::printf("%d of %zu criteria passed\n", int(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
