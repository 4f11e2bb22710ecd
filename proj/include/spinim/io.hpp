#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "spinim/bryant.hpp"

namespace spinim::io {

// Malformed or inconsistent run configuration (exit code 2).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum ExitCode { kPass = 0, kVerificationFailure = 1, kUsageError = 2 };

struct ChartConfig {
  double x0 = -1.0, x1 = 1.0, y0 = -1.0, y1 = 1.0;
  int resolution = 32;  // nodes per unit length, h = 1 / resolution
};

struct Injection {
  int i = 0, j = 0;
  double amount = 0.0;
};

struct SurfaceConfig {
  std::string family;  // empty when the config carries no surface
  std::map<std::string, double> params;
  std::optional<Injection> codazzi_injection;
  // family "tables": row-major nx * ny node values on the configured chart
  std::vector<double> lam, H, alpha, gamma;
  // family "null_curve"
  NullCurveSpec null_curve;
  // family "geodesic": generators of g in the model basis
  CVec Xa, Xb;
};

struct RunConfig {
  int version = 1;
  int n = 2;
  double lambda_killing = 0.0;  // 0 selects the model default
  std::string pipeline;
  ChartConfig chart;
  SurfaceConfig surface;
  std::map<std::string, double> tolerances;
  std::uint64_t seed = 1;
  int instances = 1000;
  std::vector<std::string> checks;
  std::string out_dir = ".";
  std::string basename = "spinim";

  double tol(const std::string& name, double fallback) const;
  double killing_multiple() const;
};

RunConfig parse_config(const std::string& json_text);
RunConfig load_config(const std::string& path);

// One verification line. order: empty when not measured, +inf for exact data.
struct CheckRow {
  std::string check;
  double residual = 0.0;
  std::optional<double> residual_coarse;
  std::optional<double> order;
  double tol = 0.0;
  bool pass = false;
  int worst_i = -1, worst_j = -1;
  std::string note;
};

struct Report {
  std::string command;
  std::string pipeline;
  int n = 2;
  int resolution = 0;
  std::uint64_t seed = 0;
  std::vector<CheckRow> rows;
  std::string error;  // set when the command was refused

  bool pass() const;
  std::string to_json() const;
};

// Mesh export: Poincare-ball vertices, grid quads split into two triangles.
void write_obj(const ImmersionMesh& m, const std::string& path);
void write_ply(const ImmersionMesh& m, const std::string& path);
// Hyperboloid coordinates (n = 2) or raw F coefficients (n = 3) plus the rows.
std::string sidecar_json(const ImmersionMesh& m, const Report& r);

// Subcommands; each writes <out_dir>/<basename>.report.json and echoes a summary
// to log. Return value is an ExitCode.
int cmd_generate(const RunConfig& cfg, std::ostream& log);
int cmd_verify_lemmas(const RunConfig& cfg, std::ostream& log);
int cmd_check(const RunConfig& cfg, std::ostream& log);

}  // namespace spinim::io
