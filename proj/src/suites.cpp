#include "riemann/suites.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include "riemann/analysis.hpp"
#include "riemann/foliation.hpp"

namespace riemann {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

[[noreturn]] void invalid(const std::string& what) { throw Error(ErrorCode::InvalidArgument, what); }

const char* short_name(NormKind kind) noexcept {
  switch (kind) {
    case NormKind::Unnormalized: return "raw";
    case NormKind::PaperNormalized: return "paper";
    case NormKind::FixedVerticalSpacing: return "spacing";
  }
  return "paper";
}

json header(const char* command) {
  return json{{"schema", kReportSchema}, {"tool", "riemann"}, {"version", kVersion},
              {"command", command}};
}

json provenance(Lambda lambda) {
  const BasePoint base = base_point(lambda);
  return json{{"sheet", "principal"},
              {"base_point", base.z.real()},
              {"base_point_singular", base.singular}};
}

json provenance_for(const std::vector<double>& lambdas) {
  json out = json::array();
  for (double l : lambdas) {
    json p = provenance(Lambda(l));
    p["lambda"] = l;
    out.push_back(p);
  }
  return out;
}

json finite_or_null(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

void validate_lambdas(const std::vector<double>& lambdas, const char* what) {
  if (lambdas.empty()) invalid(std::string(what) + " must not be empty");
  for (double l : lambdas) {
    if (!(l > 0.0) || !std::isfinite(l)) invalid(std::string(what) + " values must be positive");
  }
}

// Strict JSON reading: every key must be known and of the expected type.
template <typename F>
void for_each_key(const json& j, const char* what, F&& f) {
  if (!j.is_object()) invalid(std::string(what) + " must be a JSON object");
  for (auto it = j.begin(); it != j.end(); ++it) {
    try {
      if (!f(it.key(), it.value())) invalid(std::string("unknown key '") + it.key() + "' in " + what);
    } catch (const json::exception& e) {
      invalid(std::string("bad value for '") + it.key() + "' in " + what + ": " + e.what());
    }
  }
}

double number(const json& v) {
  if (!v.is_number()) throw json::type_error::create(302, "expected a number", &v);
  return v.get<double>();
}

int integer(const json& v) {
  if (!v.is_number_integer()) throw json::type_error::create(302, "expected an integer", &v);
  return v.get<int>();
}

std::string text(const json& v) {
  if (!v.is_string()) throw json::type_error::create(302, "expected a string", &v);
  return v.get<std::string>();
}

std::vector<double> numbers(const json& v) {
  if (v.is_string()) return parse_lambda_list(v.get<std::string>());
  if (!v.is_array()) throw json::type_error::create(302, "expected an array", &v);
  std::vector<double> out;
  for (const auto& x : v) out.push_back(number(x));
  return out;
}

// ---------------------------------------------------------------------------
// verify

class Checks {
 public:
  explicit Checks(std::vector<Check>& out) : out_(out) {}

  void at_most(const char* suite, const std::string& name, double lambda, double value,
               double threshold) {
    out_.push_back({suite, name, lambda, value, threshold, std::isfinite(value) && value <= threshold});
  }

  void below(const char* suite, const std::string& name, double lambda, double value,
             double threshold) {
    out_.push_back({suite, name, lambda, value, threshold, std::isfinite(value) && value < threshold});
  }

  void above(const char* suite, const std::string& name, double lambda, double value,
             double threshold) {
    out_.push_back({suite, name, lambda, value, threshold, std::isfinite(value) && value > threshold});
  }

 private:
  std::vector<Check>& out_;
};

void curvature_suite(const VerifyConfig& cfg, Checks& checks) {
  const char* s = "curvature";
  for (double lv : cfg.lambdas) {
    const Lambda lambda(lv);
    const Normalization raw(NormKind::Unnormalized, lambda);
    const Normalization paper(NormKind::PaperNormalized, lambda);
    const double raw_expected = lv + 1.0 / lv;
    const double m = std::min(lv, 1.0 / lv);
    const double paper_expected = 1.0 + m * m;
    double raw_err = 0.0, paper_err = 0.0;
    for (cplx z : {cplx(0.0, 1.0), cplx(0.0, -1.0)}) {
      raw_err = std::max(raw_err, std::abs(abs_gauss_curvature(z, raw) - raw_expected) / raw_expected);
      paper_err =
          std::max(paper_err, std::abs(abs_gauss_curvature(z, paper) - paper_expected) / paper_expected);
    }
    checks.at_most(s, "value_at_pm_i_raw", lv, raw_err, 1e-10);
    checks.at_most(s, "value_at_pm_i_paper", lv, paper_err, 1e-10);

    double general = 0.0;
    for (const auto& p : random_curve_points(lambda, static_cast<std::size_t>(cfg.samples), cfg.seed)) {
      const double closed = abs_gauss_curvature(p.z, paper);
      general = std::max(general, std::abs(riemann_general_curvature(p, paper) - closed) / closed);
    }
    checks.at_most(s, "general_formula_agreement", lv, general, 1e-10);

    const CurvatureBoundReport bound = verify_curvature_bound(lambda, cfg.grid, true);
    checks.at_most(s, "grid_max_bound", lv, bound.grid_max, 4.0);
    checks.at_most(s, "refined_max_conjecture", lv, bound.max_abs_k, 2.0 + 1e-3);
    checks.at_most(s, "argmax_outside_cell_of_pm_i", lv, bound.argmax_in_cell_of_pm_i ? 0.0 : 1.0, 0.0);
  }
}

void periods_suite(const VerifyConfig& cfg, Checks& checks) {
  const char* s = "periods";
  for (double lv : cfg.lambdas) {
    const Lambda lambda(lv);
    const Normalization norm(NormKind::PaperNormalized, lambda);
    const PeriodVector pv = period_vectors(lambda, norm);
    const double t = pv.translation.norm();
    checks.below(s, "companion_over_translation", lv, pv.companion.norm() / t, 1e-6);

    double loop = 0.0;
    for (cplx target : {cplx(0.5, 0.75), cplx(-3.0, 2.0), cplx(2.0 * lv, -0.5 * lv)}) {
      for (int circuits : {1, -1}) {
        const LoopComparison c = loop_at_target(norm, target, circuits);
        loop = std::max(loop, (c.looped - c.plain - c.orientation * circuits * pv.translation).norm());
      }
    }
    checks.below(s, "alpha_loop_minus_translation", lv, loop, 1e-8);

    const double spacing = end_spacing(norm);
    checks.below(s, "end_spacing_minus_half_period", lv,
                 std::abs(spacing - 0.5 * pv.translation.z()) / std::abs(pv.translation.z()), 1e-9);
  }
}

void symmetry_suite(const VerifyConfig& cfg, Checks& checks) {
  const char* s = "symmetry";
  for (double lv : cfg.lambdas) {
    const Lambda lambda(lv);
    const Normalization norm(NormKind::PaperNormalized, lambda);
    const auto samples = random_curve_points(lambda, static_cast<std::size_t>(cfg.samples), cfg.seed);
    const SymmetryReport rep = check_symmetries(norm, samples);
    for (const auto& c : rep.checks) {
      checks.below(s, std::string(to_string(c.kind)), lv, c.max_residual, rep.tolerance);
    }
    for (const auto& c : interval_checks(norm)) checks.below(s, c.name, lv, c.residual, 1e-7);
  }
}

void conjugate_suite(const VerifyConfig& cfg, Checks& checks) {
  const char* s = "conjugate";
  for (double lv : cfg.lambdas) {
    const Lambda lambda(lv);
    const auto samples = random_curve_points(lambda, static_cast<std::size_t>(cfg.samples), cfg.seed);
    const ConjugateReport rep = conjugate_check(lambda, samples);
    checks.below(s, "relative_residual", lv, rep.max_residual, 1e-10);
    checks.below(s, "mapped_curve_residual", lv, rep.max_curve_residual, 1e-10);
    checks.at_most(s, "branch_points_unmapped", lv, rep.branch_points_map ? 0.0 : 1.0, 0.0);
  }
}

void foliation_suite(const VerifyConfig& cfg, Checks& checks) {
  const char* s = "foliation";
  constexpr int kHeights = 20;
  std::vector<double> fractions;
  for (int k = 1; k <= kHeights; ++k) fractions.push_back(double(k) / (kHeights + 1));

  for (double lv : cfg.lambdas) {
    const Normalization norm(NormKind::PaperNormalized, Lambda(lv));
    double fit = 0.0;
    int not_circles = 0;
    for (const auto& slice : foliation_slices(norm, fractions)) {
      if (slice.kind != SliceKind::Circle) {
        ++not_circles;
        continue;
      }
      fit = std::max(fit, slice.residual / slice.radius);
    }
    checks.at_most(s, "interior_slices_not_circles", lv, not_circles, 0.0);
    checks.below(s, "circle_fit_over_radius", lv, fit, 1e-6);
    int not_lines = 0;
    for (double f : {0.0, 1.0}) not_lines += level_slice(norm, f).kind == SliceKind::Line ? 0 : 1;
    checks.at_most(s, "end_slices_not_lines", lv, not_lines, 0.0);
  }

  std::vector<double> large;
  for (double lv : cfg.lambdas) {
    if (lv >= 1.0) large.push_back(lv);
  }
  std::sort(large.begin(), large.end());
  large.erase(std::unique(large.begin(), large.end()), large.end());
  if (large.size() < 2) return;
  std::vector<FoliationSummary> sums;
  for (double lv : large) sums.push_back(foliation_summary(Normalization(NormKind::PaperNormalized, Lambda(lv))));
  double radius_step = std::numeric_limits<double>::infinity();
  double curvature_step = -std::numeric_limits<double>::infinity();
  for (std::size_t k = 1; k < sums.size(); ++k) {
    radius_step = std::min(radius_step, sums[k].mid_radius - sums[k - 1].mid_radius);
    curvature_step = std::max(curvature_step, sums[k].center_curvature - sums[k - 1].center_curvature);
  }
  checks.above(s, "mid_radius_min_increase", kNaN, radius_step, 0.0);
  checks.below(s, "center_curvature_max_change", kNaN, curvature_step, 0.0);
}

json check_json(const Check& c) {
  return json{{"suite", c.suite},         {"name", c.name},
              {"lambda", finite_or_null(c.lambda)}, {"value", finite_or_null(c.value)},
              {"threshold", c.threshold}, {"passed", c.passed}};
}

}  // namespace

// ---------------------------------------------------------------------------

const char* to_string(Suite suite) noexcept {
  switch (suite) {
    case Suite::Curvature: return "curvature";
    case Suite::Periods: return "periods";
    case Suite::Symmetry: return "symmetry";
    case Suite::Conjugate: return "conjugate";
    case Suite::Foliation: return "foliation";
    case Suite::All: return "all";
  }
  return "all";
}

std::optional<Suite> parse_suite(const std::string& name) {
  for (Suite s : {Suite::Curvature, Suite::Periods, Suite::Symmetry, Suite::Conjugate,
                  Suite::Foliation, Suite::All}) {
    if (name == to_string(s)) return s;
  }
  return std::nullopt;
}

void VerifyConfig::validate() const {
  validate_lambdas(lambdas, "lambda set");
  if (samples < 1) invalid("samples must be at least 1");
  if (grid.radial < 2 || grid.angular < 2) invalid("curvature grid needs at least 2x2 nodes");
  if (!(grid.r_min > 0.0) || !(grid.r_max > grid.r_min)) invalid("curvature grid needs 0 < r_min < r_max");
}

VerifyResult run_verify(const VerifyConfig& config) {
  config.validate();
  VerifyResult res;
  Checks checks(res.checks);
  const bool all = config.suite == Suite::All;
  if (all || config.suite == Suite::Curvature) curvature_suite(config, checks);
  if (all || config.suite == Suite::Periods) periods_suite(config, checks);
  if (all || config.suite == Suite::Symmetry) symmetry_suite(config, checks);
  if (all || config.suite == Suite::Conjugate) conjugate_suite(config, checks);
  if (all || config.suite == Suite::Foliation) foliation_suite(config, checks);

  res.passed = std::all_of(res.checks.begin(), res.checks.end(), [](const Check& c) { return c.passed; });
  json items = json::array();
  std::size_t failed = 0;
  for (const auto& c : res.checks) {
    items.push_back(check_json(c));
    if (!c.passed) ++failed;
  }
  res.report = header("verify");
  res.report["config"] = to_json(config);
  res.report["provenance"] = provenance_for(config.lambdas);
  res.report["checks"] = items;
  res.report["summary"] = json{{"checks", res.checks.size()}, {"failed", failed}};
  res.report["passed"] = res.passed;
  return res;
}

// ---------------------------------------------------------------------------
// limits

const char* to_string(LimitTarget target) noexcept {
  switch (target) {
    case LimitTarget::Catenoid: return "catenoid";
    case LimitTarget::Helicoid: return "helicoid";
    case LimitTarget::Planes: return "planes";
  }
  return "catenoid";
}

std::optional<LimitTarget> parse_limit_target(const std::string& name) {
  for (LimitTarget t : {LimitTarget::Catenoid, LimitTarget::Helicoid, LimitTarget::Planes}) {
    if (name == to_string(t)) return t;
  }
  return std::nullopt;
}

void LimitsConfig::validate() const {
  validate_lambdas(schedule, "lambda schedule");
  annulus.validate();
  if (!(clip_r > 0.0) || !std::isfinite(clip_r)) invalid("clip radius must be positive");
  if (target == LimitTarget::Catenoid) {
    for (double l : schedule) {
      if (!(l < 1.0)) invalid("catenoid schedule needs lambda < 1");
    }
  }
  if (target == LimitTarget::Helicoid) {
    for (double l : schedule) {
      if (!(l > 1.0)) invalid("helicoid schedule needs lambda > 1");
    }
    if (max_winding < 1) invalid("max winding must be at least 1");
  }
}

std::string convergence_csv(const ConvergenceReport& report) {
  std::string out = "lambda,deviation,end_spacing,max_absK\n";
  char buf[128];
  for (std::size_t k = 0; k < report.lambdas.size(); ++k) {
    const int n = std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g\n", report.lambdas[k],
                                report.deviations[k], report.end_spacings[k], report.max_abs_k[k]);
    out.append(buf, n);
  }
  return out;
}

LimitsResult run_limits(const LimitsConfig& config) {
  config.validate();
  LimitsResult res;
  const ClipRegion clip{ClipKind::Ball, config.clip_r};
  json extra = json::object();
  switch (config.target) {
    case LimitTarget::Catenoid:
      res.convergence = catenoid_limit_sweep(config.schedule, config.annulus, clip);
      break;
    case LimitTarget::Helicoid:
      res.convergence = helicoid_limit_sweep(config.schedule, config.annulus, clip, config.max_winding);
      break;
    case LimitTarget::Planes: {
      PlaneOptions opts;
      opts.ball = config.clip_r;
      opts.L = config.annulus.L;
      res.planes = plane_limit_experiment(config.schedule, opts);
      res.convergence = plane_report(res.planes);
      res.convergence.clip = clip;
      extra = json{{"construction", "fixed vertical spacing 2 pi, lambda -> 0"},
                   {"deviation", "1 - area fraction of normals within the tilt of vertical"},
                   {"tilt", opts.tilt}};
      break;
    }
  }
  res.monotone = res.convergence.monotone();
  res.csv = convergence_csv(res.convergence);

  const ConvergenceReport& c = res.convergence;
  json rows = json::array();
  for (std::size_t k = 0; k < c.lambdas.size(); ++k) {
    json row{{"lambda", c.lambdas[k]},
             {"deviation", finite_or_null(c.deviations[k])},
             {"end_spacing", finite_or_null(c.end_spacings[k])},
             {"max_absK", finite_or_null(c.max_abs_k[k])},
             {"samples", c.samples[k]}};
    if (!res.planes.empty()) {
      const PlaneRow& p = res.planes[k];
      row["vertical_fraction"] = p.vertical_fraction;
      row["neck_radius"] = p.neck_radius;
      row["plane_deviation"] = p.plane_deviation;
      row["annulus_L"] = p.annulus_L;
    }
    rows.push_back(row);
  }
  res.report = header("limits");
  res.report["config"] = to_json(config);
  res.report["provenance"] = provenance_for(config.schedule);
  res.report["reference"] = c.reference;
  res.report["normalization"] = c.normalization;
  if (!extra.empty()) res.report["plane_experiment"] = extra;
  res.report["rows"] = rows;
  res.report["monotone"] = res.monotone;
  return res;
}

// ---------------------------------------------------------------------------
// mesh

void MeshConfig::validate() const {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) invalid("lambda must be positive");
  if (copies < 1) invalid("copies must be at least 1");
  grid.validate();
}

MeshResult run_mesh(const MeshConfig& config) {
  config.validate();
  const Normalization norm(config.normalization, Lambda(config.lambda));
  MeshResult res;
  res.mesh = build_mesh(norm, config.grid, config.copies);
  if (!config.out.empty()) export_mesh(res.mesh, config.format, config.out);

  const SurfaceMesh& m = res.mesh;
  const double max_k = m.abs_k.empty() ? 0.0 : *std::max_element(m.abs_k.begin(), m.abs_k.end());
  const Vec3& t = m.provenance.translation;
  res.report = header("mesh");
  res.report["config"] = to_json(config);
  json prov = provenance(Lambda(config.lambda));
  prov["sheets"] = m.provenance.sheets;
  res.report["provenance"] = prov;
  res.report["vertices"] = m.vertices.size();
  res.report["triangles"] = m.triangles.size();
  res.report["max_absK"] = max_k;
  res.report["period_vector"] = {t.x(), t.y(), t.z()};
  res.report["euler_characteristic"] = euler_characteristic(m);
  res.report["file"] = config.out.empty() ? json(nullptr) : json(config.out);
  return res;
}

// ---------------------------------------------------------------------------
// configuration (de)serialization

std::vector<double> parse_lambda_list(const std::string& csv) {
  std::vector<double> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto first = item.find_first_not_of(" \t");
    const auto last = item.find_last_not_of(" \t");
    if (first == std::string::npos) invalid("empty entry in list '" + csv + "'");
    item = item.substr(first, last - first + 1);
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      invalid("bad number '" + item + "'");
    }
    if (used != item.size()) invalid("bad number '" + item + "'");
    if (!(v > 0.0) || !std::isfinite(v)) invalid("values must be positive, got '" + item + "'");
    out.push_back(v);
  }
  if (out.empty() || (!csv.empty() && csv.back() == ',')) invalid("bad list '" + csv + "'");
  return out;
}

json to_json(const VerifyConfig& c) {
  return json{{"suite", to_string(c.suite)},
              {"lambdas", c.lambdas},
              {"seed", c.seed},
              {"samples", c.samples},
              {"grid", {{"radial", c.grid.radial}, {"angular", c.grid.angular},
                        {"r_min", c.grid.r_min}, {"r_max", c.grid.r_max}}}};
}

json to_json(const LimitsConfig& c) {
  return json{{"target", to_string(c.target)},
              {"schedule", c.schedule},
              {"annulus", {{"L", c.annulus.L}, {"radial", c.annulus.radial},
                           {"angular", c.annulus.angular}}},
              {"clip_r", c.clip_r},
              {"max_winding", c.max_winding}};
}

json to_json(const MeshConfig& c) {
  return json{{"lambda", c.lambda},
              {"normalization", short_name(c.normalization)},
              {"copies", c.copies},
              {"grid", {{"radial", c.grid.radial}, {"angular", c.grid.angular}, {"L", c.grid.L}}},
              {"format", to_string(c.format)},
              {"out", c.out}};
}

VerifyConfig verify_config_from_json(const json& j) {
  VerifyConfig c;
  for_each_key(j, "verify config", [&](const std::string& k, const json& v) {
    if (k == "suite") {
      const auto s = parse_suite(text(v));
      if (!s) invalid("unknown suite '" + text(v) + "'");
      c.suite = *s;
    } else if (k == "lambdas") {
      c.lambdas = numbers(v);
    } else if (k == "seed") {
      if (!v.is_number_integer() || v.get<long long>() < 0 ||
          v.get<long long>() > static_cast<long long>(std::numeric_limits<unsigned>::max())) {
        throw json::type_error::create(302, "expected an unsigned integer", &v);
      }
      c.seed = v.get<unsigned>();
    } else if (k == "samples") {
      c.samples = integer(v);
    } else if (k == "grid") {
      for_each_key(v, "grid", [&](const std::string& g, const json& x) {
        if (g == "radial") c.grid.radial = integer(x);
        else if (g == "angular") c.grid.angular = integer(x);
        else if (g == "r_min") c.grid.r_min = number(x);
        else if (g == "r_max") c.grid.r_max = number(x);
        else return false;
        return true;
      });
    } else {
      return false;
    }
    return true;
  });
  c.validate();
  return c;
}

LimitsConfig limits_config_from_json(const json& j) {
  LimitsConfig c;
  for_each_key(j, "limits config", [&](const std::string& k, const json& v) {
    if (k == "target") {
      const auto t = parse_limit_target(text(v));
      if (!t) invalid("unknown target '" + text(v) + "'");
      c.target = *t;
    } else if (k == "schedule") {
      c.schedule = numbers(v);
    } else if (k == "annulus") {
      for_each_key(v, "annulus", [&](const std::string& a, const json& x) {
        if (a == "L") c.annulus.L = number(x);
        else if (a == "radial") c.annulus.radial = integer(x);
        else if (a == "angular") c.annulus.angular = integer(x);
        else return false;
        return true;
      });
    } else if (k == "clip_r") {
      c.clip_r = number(v);
    } else if (k == "max_winding") {
      c.max_winding = integer(v);
    } else {
      return false;
    }
    return true;
  });
  c.validate();
  return c;
}

MeshConfig mesh_config_from_json(const json& j) {
  MeshConfig c;
  for_each_key(j, "mesh config", [&](const std::string& k, const json& v) {
    if (k == "lambda") {
      c.lambda = number(v);
    } else if (k == "normalization") {
      const auto n = parse_norm_kind(text(v));
      if (!n) invalid("unknown normalization '" + text(v) + "'");
      c.normalization = *n;
    } else if (k == "copies") {
      c.copies = integer(v);
    } else if (k == "grid") {
      for_each_key(v, "grid", [&](const std::string& g, const json& x) {
        if (g == "radial") c.grid.radial = integer(x);
        else if (g == "angular") c.grid.angular = integer(x);
        else if (g == "L") c.grid.L = number(x);
        else return false;
        return true;
      });
    } else if (k == "format") {
      const auto f = parse_mesh_format(text(v));
      if (!f) invalid("unknown format '" + text(v) + "'");
      c.format = *f;
    } else if (k == "out") {
      c.out = text(v);
    } else {
      return false;
    }
    return true;
  });
  c.validate();
  return c;
}

}  // namespace riemann
