// Command-line front end: mesh, verify and limits. Talks to the library only
// through the C interface.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "riemann/riemann.h"

namespace {

using json = nlohmann::json;

enum Exit { kOk = 0, kCheckFailed = 1, kUsage = 2, kNumerical = 3 };

int exit_for(rmx_status status) {
  switch (status) {
    case RMX_OK: return kOk;
    case RMX_E_INVALID_ARGUMENT:
    case RMX_E_IO:
    case RMX_E_NULL_POINTER: return kUsage;
    default: return kNumerical;
  }
}

int report_error(rmx_status status) {
  std::cerr << "error: " << rmx_status_string(status) << ": " << rmx_last_error() << '\n';
  return exit_for(status);
}

bool parse_pair(const std::string& text, int& a, int& b) {
  const auto x = text.find('x');
  if (x == std::string::npos) return false;
  try {
    std::size_t used_a = 0, used_b = 0;
    const std::string sa = text.substr(0, x), sb = text.substr(x + 1);
    a = std::stoi(sa, &used_a);
    b = std::stoi(sb, &used_b);
    return used_a == sa.size() && used_b == sb.size();
  } catch (const std::exception&) {
    return false;
  }
}

using Runner = rmx_status (*)(const char*, rmx_report**);

// Runs one command; prints the JSON report on success.
int run(Runner runner, const json& config, rmx_report** report) {
  const rmx_status status = runner(config.dump().c_str(), report);
  if (status != RMX_OK) return report_error(status);
  std::cout << rmx_report_json(*report) << '\n';
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Riemann minimal examples: meshes, verification suites and limit sweeps"};
  app.set_version_flag("--version", std::string("riemann ") + rmx_version());
  app.require_subcommand(1);

  // mesh
  auto* mesh = app.add_subcommand("mesh", "Build and export a mesh of a fundamental domain");
  double lambda = 1.0;
  std::string norm = "paper", resolution = "64x64", format, out;
  int copies = 1;
  double cutoff = 40.0;
  mesh->add_option("--lambda", lambda, "Family parameter (> 0)")->required();
  mesh->add_option("--normalization", norm, "raw, paper or spacing")
      ->check(CLI::IsMember({"raw", "paper", "spacing"}))
      ->capture_default_str();
  mesh->add_option("--copies", copies, "Number of translated copies")->capture_default_str();
  mesh->add_option("--resolution", resolution, "Radial x angular nodes")->capture_default_str();
  mesh->add_option("--cutoff", cutoff, "End trimming: 1/L <= |z| <= L")->capture_default_str();
  mesh->add_option("--format", format, "obj or ply (default from --out, else obj)")
      ->check(CLI::IsMember({"obj", "ply"}));
  mesh->add_option("--out", out, "Output file (default mesh.<format>)");

  // verify
  auto* verify = app.add_subcommand("verify", "Run invariant suites");
  std::string suite = "all", lambda_set = "0.1,1,10";
  unsigned seed = 1;
  int samples = 100;
  verify->add_option("--suite", suite, "curvature, periods, symmetry, conjugate, foliation or all")
      ->check(CLI::IsMember({"curvature", "periods", "symmetry", "conjugate", "foliation", "all"}))
      ->capture_default_str();
  verify->add_option("--lambda-set", lambda_set, "Comma separated lambdas")->capture_default_str();
  verify->add_option("--seed", seed, "Seed for random samples")->capture_default_str();
  verify->add_option("--samples", samples, "Random samples per lambda")->capture_default_str();

  // limits
  auto* limits = app.add_subcommand("limits", "Sweep lambda towards a limit surface");
  std::string target, schedule, csv_path;
  double annulus_l = 10.0, clip_r = 0.0;
  int max_winding = 4;
  limits->add_option("--target", target, "catenoid, helicoid or planes")
      ->check(CLI::IsMember({"catenoid", "helicoid", "planes"}))
      ->required();
  limits->add_option("--lambda-schedule", schedule, "Comma separated lambdas")->required();
  limits->add_option("--annulus-L", annulus_l, "Annulus 1/L < |z| < L")->capture_default_str();
  limits->add_option("--clip-r", clip_r, "Clip ball radius (default 5, planes pi)");
  limits->add_option("--max-winding", max_winding, "Helicoid windings")->capture_default_str();
  limits->add_option("--csv", csv_path, "Also write the rows as CSV");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  rmx_report* report = nullptr;
  int code = kOk;

  if (mesh->parsed()) {
    int radial = 0, angular = 0;
    if (!parse_pair(resolution, radial, angular)) {
      std::cerr << "error: --resolution must look like 64x64\n";
      return kUsage;
    }
    if (format.empty()) {
      const bool ply = out.size() > 4 && out.compare(out.size() - 4, 4, ".ply") == 0;
      format = ply ? "ply" : "obj";
    }
    if (out.empty()) out = "mesh." + format;
    const json config{{"lambda", lambda},   {"normalization", norm},
                      {"copies", copies},   {"grid", {{"radial", radial}, {"angular", angular}, {"L", cutoff}}},
                      {"format", format},   {"out", out}};
    code = run(rmx_run_mesh, config, &report);
  } else if (verify->parsed()) {
    const json config{{"suite", suite}, {"lambdas", lambda_set}, {"seed", seed}, {"samples", samples}};
    code = run(rmx_run_verify, config, &report);
    if (code == kOk && !rmx_report_passed(report)) code = kCheckFailed;
  } else if (limits->parsed()) {
    if (limits->count("--clip-r") == 0) clip_r = target == "planes" ? 3.141592653589793 : 5.0;
    const json config{{"target", target},
                      {"schedule", schedule},
                      {"annulus", {{"L", annulus_l}}},
                      {"clip_r", clip_r},
                      {"max_winding", max_winding}};
    code = run(rmx_run_limits, config, &report);
    if (code == kOk && !csv_path.empty()) {
      std::ofstream csv(csv_path, std::ios::binary);
      csv << rmx_report_csv(report);
      if (!csv) {
        std::cerr << "error: cannot write " << csv_path << '\n';
        code = kUsage;
      }
    }
    if (code == kOk && !rmx_report_passed(report)) code = kCheckFailed;
  }

  rmx_report_free(report);
  return code;
}
