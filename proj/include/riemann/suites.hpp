#pragma once

// The three commands (mesh, verify, limits) with JSON configurations and
// reports. Reports carry the schema number, the tool version, the resolved
// configuration and the sheet provenance, and no timings.

#include <string>
#include <vector>

#include "json.hpp"

#include "riemann/analysis.hpp"
#include "riemann/limits.hpp"
#include "riemann/mesh.hpp"

namespace riemann {

using json = nlohmann::json;

inline constexpr int kReportSchema = 1;
inline constexpr const char* kVersion = "1.0.0";

enum class Suite { Curvature, Periods, Symmetry, Conjugate, Foliation, All };

const char* to_string(Suite suite) noexcept;
std::optional<Suite> parse_suite(const std::string& name);

struct VerifyConfig {
  Suite suite = Suite::All;
  std::vector<double> lambdas{0.1, 1.0, 10.0};
  unsigned seed = 1;
  int samples = 100;          // random curve points per lambda
  CurvatureGrid grid;

  void validate() const;
};

struct Check {
  std::string suite;
  std::string name;
  double lambda;   // NaN for checks across the lambda set
  double value;
  double threshold;
  bool passed;
};

struct VerifyResult {
  std::vector<Check> checks;
  json report;
  bool passed = false;
};

VerifyResult run_verify(const VerifyConfig& config);

enum class LimitTarget { Catenoid, Helicoid, Planes };

const char* to_string(LimitTarget target) noexcept;
std::optional<LimitTarget> parse_limit_target(const std::string& name);

struct LimitsConfig {
  LimitTarget target = LimitTarget::Catenoid;
  std::vector<double> schedule{0.1, 0.01, 0.001};
  Annulus annulus;            // for planes only L is used, as the first annulus
  double clip_r = 5.0;        // planes: radius of the ball about R(1)
  int max_winding = 4;

  void validate() const;
};

struct LimitsResult {
  ConvergenceReport convergence;
  std::vector<PlaneRow> planes;   // planes target only
  json report;
  std::string csv;
  bool monotone = false;
};

LimitsResult run_limits(const LimitsConfig& config);

/// lambda,deviation,end_spacing,max_absK rows with %.17g.
std::string convergence_csv(const ConvergenceReport& report);

struct MeshConfig {
  double lambda = 1.0;
  NormKind normalization = NormKind::PaperNormalized;
  int copies = 1;
  MeshGrid grid;
  MeshFormat format = MeshFormat::Obj;
  std::string out;            // empty: no file is written

  void validate() const;
};

struct MeshResult {
  SurfaceMesh mesh;
  json report;
};

MeshResult run_mesh(const MeshConfig& config);

/// Configurations from JSON; missing keys keep their defaults. Unknown keys
/// and ill-typed values throw InvalidArgument.
VerifyConfig verify_config_from_json(const json& j);
LimitsConfig limits_config_from_json(const json& j);
MeshConfig mesh_config_from_json(const json& j);

json to_json(const VerifyConfig& config);
json to_json(const LimitsConfig& config);
json to_json(const MeshConfig& config);

/// Comma separated positive numbers. Throws InvalidArgument.
std::vector<double> parse_lambda_list(const std::string& csv);

}  // namespace riemann
