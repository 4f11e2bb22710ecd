#include "spinim/io.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <set>
#include <sstream>

#include <json.hpp>

#include "spinim/lemmas.hpp"

namespace spinim::io {

namespace {

using json = nlohmann::json;
using ojson = nlohmann::ordered_json;

const std::set<std::string> kPipelines = {"bryant", "reconstruct", "verify-lemmas", "check-grc", "gaussmap", "killing"};
const std::set<std::string> kChecks = {"grc",        "decomposition", "killing", "morel", "holomorphy", "derivative",
                                       "general_route", "eta",        "bryant",  "null_curve", "unit"};
const std::set<std::string> kTopKeys = {"version", "n",          "lambda_killing", "pipeline", "chart",  "surface",
                                        "tolerances", "seed",    "instances",      "checks",   "output", "comment"};

[[noreturn]] void fail(const std::string& msg) { throw ConfigError(msg); }

cplx complex_of(const json& v, const std::string& what) {
  if (v.is_number()) return {v.get<double>(), 0.0};
  if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number())
    return {v[0].get<double>(), v[1].get<double>()};
  fail(what + ": expected a number or [re, im]");
}

CVec cvec_of(const json& v, const std::string& what) {
  if (!v.is_array() || v.empty()) fail(what + ": expected a non-empty array");
  CVec out;
  for (const auto& e : v) out.push_back(complex_of(e, what));
  return out;
}

std::vector<double> reals_of(const json& v, const std::string& what) {
  if (!v.is_array()) fail(what + ": expected an array of numbers");
  std::vector<double> out;
  for (const auto& e : v) {
    if (!e.is_number()) fail(what + ": expected an array of numbers");
    out.push_back(e.get<double>());
  }
  return out;
}

double number_of(const json& obj, const char* key, double fallback) {
  if (!obj.contains(key)) return fallback;
  if (!obj[key].is_number()) fail(std::string(key) + ": expected a number");
  return obj[key].get<double>();
}

NullCurveSpec null_curve_of(const json& s) {
  if (!s.contains("terms") || !s["terms"].is_array() || s["terms"].empty())
    fail("surface.terms: null_curve needs a non-empty term list");
  NullCurveSpec c;
  for (const auto& t : s["terms"]) {
    NullTerm term;
    if (!t.contains("coeff") || !t["coeff"].is_array() || t["coeff"].size() != 4)
      fail("surface.terms[].coeff: expected 4 complex numbers (1, I, J, K)");
    term.coeff = {complex_of(t["coeff"][0], "coeff"), complex_of(t["coeff"][1], "coeff"),
                  complex_of(t["coeff"][2], "coeff"), complex_of(t["coeff"][3], "coeff")};
    if (t.contains("power")) {
      if (!t["power"].is_number_integer() || t["power"].get<int>() < 0)
        fail("surface.terms[].power: expected a non-negative integer");
      term.power = t["power"].get<int>();
    }
    if (t.contains("rate")) term.rate = complex_of(t["rate"], "surface.terms[].rate");
    c.terms.push_back(term);
  }
  return c;
}

SurfaceConfig surface_of(const json& s) {
  if (!s.is_object()) fail("surface: expected an object");
  if (!s.contains("family") || !s["family"].is_string()) fail("surface.family: missing");
  SurfaceConfig out;
  out.family = s["family"].get<std::string>();
  if (s.contains("params")) {
    if (!s["params"].is_object()) fail("surface.params: expected an object");
    for (const auto& [k, v] : s["params"].items()) {
      if (!v.is_number()) fail("surface.params." + k + ": expected a number");
      out.params[k] = v.get<double>();
    }
  }
  if (s.contains("codazzi_injection")) {
    const json& q = s["codazzi_injection"];
    if (!q.is_object() || !q.contains("i") || !q.contains("j") || !q.contains("amount"))
      fail("surface.codazzi_injection: expected {i, j, amount}");
    out.codazzi_injection = Injection{q["i"].get<int>(), q["j"].get<int>(), q["amount"].get<double>()};
  }
  if (out.family == "tables") {
    for (const char* k : {"conformal_factor", "H", "alpha", "gamma"})
      if (!s.contains(k)) fail(std::string("surface.") + k + ": required for tables");
    out.lam = reals_of(s["conformal_factor"], "surface.conformal_factor");
    out.H = reals_of(s["H"], "surface.H");
    out.alpha = reals_of(s["alpha"], "surface.alpha");
    out.gamma = reals_of(s["gamma"], "surface.gamma");
  } else if (out.family == "null_curve") {
    out.null_curve = null_curve_of(s);
  } else if (out.family == "geodesic") {
    if (!s.contains("Xa") || !s.contains("Xb")) fail("surface: geodesic family needs Xa and Xb");
    out.Xa = cvec_of(s["Xa"], "surface.Xa");
    out.Xb = cvec_of(s["Xb"], "surface.Xb");
  } else {
    const auto fams = surface_families();
    if (std::find(fams.begin(), fams.end(), out.family) == fams.end())
      fail("surface.family: unknown family '" + out.family + "'");
  }
  return out;
}

RunConfig config_of(const json& j) {
  if (!j.is_object()) fail("config: expected a JSON object");
  for (const auto& [k, v] : j.items())
    if (!kTopKeys.count(k)) fail("config: unknown key '" + k + "'");
  RunConfig c;
  if (!j.contains("version") || !j["version"].is_number_integer() || j["version"].get<int>() != 1)
    fail("version: expected 1");
  if (j.contains("n")) {
    if (!j["n"].is_number_integer()) fail("n: expected 2 or 3");
    c.n = j["n"].get<int>();
  }
  if (c.n != 2 && c.n != 3) fail("n: expected 2 or 3");
  if (j.contains("lambda_killing")) {
    c.lambda_killing = number_of(j, "lambda_killing", 0.0);
    if (!(c.lambda_killing > 0.0)) fail("lambda_killing: must be positive");
  }
  if (!j.contains("pipeline") || !j["pipeline"].is_string()) fail("pipeline: missing");
  c.pipeline = j["pipeline"].get<std::string>();
  if (!kPipelines.count(c.pipeline)) fail("pipeline: unknown value '" + c.pipeline + "'");
  if (j.contains("chart")) {
    const json& ch = j["chart"];
    if (!ch.is_object()) fail("chart: expected an object");
    c.chart.x0 = number_of(ch, "x0", c.chart.x0);
    c.chart.x1 = number_of(ch, "x1", c.chart.x1);
    c.chart.y0 = number_of(ch, "y0", c.chart.y0);
    c.chart.y1 = number_of(ch, "y1", c.chart.y1);
    if (ch.contains("resolution")) {
      if (!ch["resolution"].is_number_integer()) fail("chart.resolution: expected an integer");
      c.chart.resolution = ch["resolution"].get<int>();
    }
  }
  if (j.contains("surface") && !j["surface"].is_null()) c.surface = surface_of(j["surface"]);
  if (j.contains("tolerances")) {
    if (!j["tolerances"].is_object()) fail("tolerances: expected an object");
    for (const auto& [k, v] : j["tolerances"].items()) {
      if (!v.is_number() || !(v.get<double>() > 0.0)) fail("tolerances." + k + ": must be a positive number");
      c.tolerances[k] = v.get<double>();
    }
  }
  if (j.contains("seed")) {
    if (!j["seed"].is_number_unsigned()) fail("seed: expected a non-negative integer");
    c.seed = j["seed"].get<std::uint64_t>();
  }
  if (j.contains("instances")) {
    if (!j["instances"].is_number_integer() || j["instances"].get<int>() < 1) fail("instances: expected >= 1");
    c.instances = j["instances"].get<int>();
  }
  if (j.contains("checks")) {
    if (!j["checks"].is_array()) fail("checks: expected an array of names");
    for (const auto& e : j["checks"]) {
      if (!e.is_string() || !kChecks.count(e.get<std::string>())) fail("checks: unknown check " + e.dump());
      c.checks.push_back(e.get<std::string>());
    }
  }
  if (j.contains("output")) {
    const json& o = j["output"];
    if (!o.is_object()) fail("output: expected an object");
    if (o.contains("dir")) c.out_dir = o["dir"].get<std::string>();
    if (o.contains("basename")) c.basename = o["basename"].get<std::string>();
    if (c.basename.empty()) fail("output.basename: must not be empty");
  }
  return c;
}

// ---------------------------------------------------------------- cases

Chart chart_for(const RunConfig& cfg, int resolution) {
  if (resolution < 1) fail("chart.resolution: must be positive");
  const ChartConfig& c = cfg.chart;
  if (!(c.x1 > c.x0) || !(c.y1 > c.y0)) fail("chart: need x1 > x0 and y1 > y0 (a single point is degenerate)");
  try {
    Chart ch = make_chart(c.x0, c.x1, c.y0, c.y1, resolution);
    ch.validate(5);
    return ch;
  } catch (const std::invalid_argument& e) {
    fail(std::string("chart: ") + e.what());
  }
}

bool is_surface_family(const std::string& f) { return f != "geodesic" && f != "null_curve" && !f.empty(); }

// Everything needed to evaluate the residual suites at one resolution.
struct Case {
  Chart chart;
  LieModel L;
  std::optional<SurfaceSpec> surface;
  std::optional<FrameField> frame;
  std::optional<NullCurveSpec> null_curve;
  std::optional<SpinorGrid> phi;

  const SpinorGrid& spinor() {
    if (!phi) {
      if (!frame) fail("this check needs a spinor field; the surface family provides none");
      phi = frame->has_exact_spinor() ? exact_spinor_grid(*frame)
                                      : integrate_field(*frame, MultiVector::scalar(frame->dim(), 1.0));
    }
    return *phi;
  }
  double h() const { return std::max(chart.hx, chart.hy); }
};

Case make_case(const RunConfig& cfg, int resolution, int index_scale) {
  const SurfaceConfig& sc = cfg.surface;
  if (sc.family.empty()) fail("surface: missing (a constant spinor with no surface gives a single-point degenerate mesh)");
  Case c;
  c.chart = chart_for(cfg, resolution);
  c.L = build_sl_n(cfg.n, cfg.killing_multiple());
  if (sc.family == "null_curve") {
    if (cfg.n != 2) fail("surface: null_curve input is defined for n = 2");
    c.null_curve = sc.null_curve;
    return c;
  }
  if (sc.family == "geodesic") {
    if (sc.Xa.size() != static_cast<std::size_t>(c.L.d) || sc.Xb.size() != static_cast<std::size_t>(c.L.d))
      fail("surface.Xa/Xb: expected " + std::to_string(c.L.d) + " coordinates for n = " + std::to_string(cfg.n));
    c.frame = geodesic_field(c.L, c.chart, sc.Xa, sc.Xb);
    return c;
  }
  if (cfg.n != 2) fail("surface: family '" + sc.family + "' describes surfaces in H^3 (n = 2)");
  if (std::abs(c.L.lambda - default_killing_multiple(2)) > 1e-15)
    fail("lambda_killing: surface data assume the curvature -1 normalization (" +
         std::to_string(default_killing_multiple(2)) + ")");
  try {
    SurfaceSpec s;
    if (sc.family == "tables") {
      if (index_scale != 1) fail("surface: tables are given on one grid only");
      s = surface_from_tables(c.chart, sc.lam, sc.H, sc.alpha, sc.gamma);
    } else {
      s = make_surface(sc.family, c.chart, sc.params);
    }
    if (sc.codazzi_injection) {
      const Injection& q = *sc.codazzi_injection;
      const int i = q.i * index_scale, j = q.j * index_scale;
      if (i < 0 || j < 0 || i >= c.chart.nx || j >= c.chart.ny) fail("surface.codazzi_injection: node outside the chart");
      inject_alpha(s, i, j, q.amount);
    }
    c.surface = s;
  } catch (const std::domain_error& e) {
    fail(std::string("surface: ") + e.what());
  } catch (const std::invalid_argument& e) {
    fail(std::string("surface: ") + e.what());
  }
  c.frame = surface_field(c.L, *c.surface);
  return c;
}

// ---------------------------------------------------------------- probes

struct Probe {
  std::string name;
  double value = 0.0;
  int i = -1, j = -1;
  bool convergent = true;  // expected O(h^2): order measured and enforced
  double default_tol = 0.0;
};

Probe field_probe(const std::string& name, const ResidualField& r, double tol) {
  return {name, r.max.value, r.max.i, r.max.j, true, tol};
}

Probe scalar_probe(const std::string& name, double v, double tol) { return {name, v, -1, -1, false, tol}; }

const SurfaceSpec& need_surface(Case& c, const std::string& check) {
  if (!c.surface) fail("check '" + check + "' needs surface data (conformal factor, H, alpha, gamma)");
  return *c.surface;
}

NodeMax max_hyper_difference(const ImmersionMesh& a, const ImmersionMesh& b) {
  Grid<double> d(a.chart, 0.0);
  for (std::size_t k = 0; k < d.v.size(); ++k)
    for (int m = 0; m < 4; ++m) d.v[k] = std::max(d.v[k], std::abs(a.hyper.v[k][m] - b.hyper.v[k][m]));
  return grid_max(d);
}

std::vector<Probe> run_probe(const std::string& check, Case& c) {
  const double conv = 10.0 * c.h() * c.h();
  std::vector<Probe> out;
  if (check == "grc") {
    const CurvatureReport r = grc_residuals(need_surface(c, check), c.L);
    out.push_back(field_probe("grc.gauss", r.gauss, conv));
    out.push_back(field_probe("grc.ricci", r.ricci, conv));
    out.push_back(field_probe("grc.codazzi", r.codazzi, conv));
    out.push_back(field_probe("grc.compat", r.compat, conv));
    Probe d = field_probe("grc.D", r.D, 1e-10);
    d.convergent = false;
    out.push_back(d);
  } else if (check == "decomposition") {
    const Decomposition d = curvature_decomposition(c.spinor(), *c.frame);
    out.push_back(field_probe("decomposition.sum", d.sum_defect, conv));
    Probe p = field_probe("decomposition.D", d.D, 1e-10);
    p.convergent = false;
    out.push_back(p);
  } else if (check == "killing") {
    if (!c.frame) fail("check 'killing' needs a frame (surface or geodesic family)");
    out.push_back(field_probe("killing", killing_residual(c.spinor(), *c.frame), conv));
  } else if (check == "morel") {
    const MorelResidual m = morel_dirac_check(c.spinor(), need_surface(c, check));
    out.push_back(field_probe("morel.dirac", m.dirac, conv));
    out.push_back(field_probe("morel.norm", m.norm, conv));
  } else if (check == "holomorphy") {
    if (!c.frame) fail("check 'holomorphy' needs a frame (surface or geodesic family)");
    const HolomorphyResult h = gauss_map_holomorphy(c.spinor(), *c.frame);
    out.push_back(field_probe("holomorphy.cauchy_riemann", h.cauchy_riemann, conv));
    out.push_back(field_probe("holomorphy.curvature", h.curvature, conv));
  } else if (check == "derivative") {
    if (!c.frame) fail("check 'derivative' needs a frame (surface or geodesic family)");
    const DerivativeDefects d = derivative_identity_check(c.spinor(), *c.frame);
    out.push_back(field_probe("derivative.dF", d.dF, conv));
    out.push_back(field_probe("derivative.dF_left", d.dF_left, conv));
  } else if (check == "general_route") {
    if (!c.frame) fail("check 'general_route' needs a frame (surface or geodesic family)");
    const GeneralRoute g = general_route(c.spinor(), *c.frame);
    out.push_back(field_probe("general_route.null_equation", g.null_equation, conv));
    out.push_back(scalar_probe("general_route.F_defect", g.F_defect, 1e-8));
    out.push_back(scalar_probe("general_route.isotropy", g.isotropy, 1e-12));
  } else if (check == "eta") {
    try {
      const EtaForm e = build_eta(need_surface(c, check));
      out.push_back(field_probe("eta.structure", eta_structure_residual(e), conv));
      out.push_back(scalar_probe("eta.reality", eta_reality_defect(e), 1e-14));
    } catch (const std::invalid_argument& e) {
      fail(std::string("check 'eta': ") + e.what());
    }
  } else if (check == "bryant") {
    const SurfaceSpec& s = need_surface(c, check);
    try {
      const BryantResult b = bryant_pipeline(s);
      const ImmersionMesh other = weierstrass_F(c.spinor());
      const NodeMax d = max_hyper_difference(b.mesh, other);
      out.push_back({"bryant.cross_difference", d.value, d.i, d.j, false, 1e-6});
      out.push_back(scalar_probe("bryant.minkowski", mesh_minkowski_defect(b.mesh), 1e-8));
    } catch (const std::invalid_argument& e) {
      fail(std::string("check 'bryant': ") + e.what());
    } catch (const Refusal& r) {
      out.push_back({"bryant.structure", r.residual(), r.node_i(), r.node_j(), false, 10.0 * c.h() * c.h()});
    }
  } else if (check == "null_curve") {
    if (!c.null_curve) fail("check 'null_curve' needs family null_curve");
    const NullCurveInvariants n = null_curve_invariants(sample_null_curve(*c.null_curve, c.chart));
    out.push_back(field_probe("null_curve.holomorphy", n.holomorphy, conv));
    out.push_back(field_probe("null_curve.isotropy", n.isotropy, conv));
    out.push_back(scalar_probe("null_curve.unit", n.unit, 1e-10));
  } else if (check == "unit") {
    if (c.null_curve) {
      const NullCurveInvariants n = null_curve_invariants(sample_null_curve(*c.null_curve, c.chart));
      out.push_back(scalar_probe("unit", n.unit, 1e-10));
    } else {
      out.push_back(scalar_probe("unit", unit_defect(c.spinor()), 1e-10));
    }
  } else {
    fail("unknown check '" + check + "'");
  }
  return out;
}

std::vector<std::string> default_checks(const RunConfig& cfg) {
  const std::string& fam = cfg.surface.family;
  if (fam == "null_curve") return {"null_curve"};
  if (fam == "geodesic") {
    if (cfg.pipeline == "gaussmap") return {"holomorphy"};
    return {"killing", "unit", "holomorphy", "general_route"};
  }
  if (cfg.pipeline == "check-grc") return {"grc", "decomposition"};
  if (cfg.pipeline == "gaussmap") return {"holomorphy"};
  if (cfg.pipeline == "bryant") return {"eta", "bryant", "killing", "holomorphy"};
  if (cfg.pipeline == "killing") return {"killing"};
  return {"grc", "killing", "morel", "derivative", "unit"};
}

CheckRow finish_row(const RunConfig& cfg, const Probe& fine, const Probe* coarse) {
  CheckRow r;
  r.check = fine.name;
  r.residual = fine.value;
  r.worst_i = fine.i;
  r.worst_j = fine.j;
  r.tol = cfg.tol(fine.name, fine.default_tol);
  r.pass = std::isfinite(r.residual) && r.residual <= r.tol;
  if (fine.convergent && coarse) {
    r.residual_coarse = coarse->value;
    r.order = convergence_order(coarse->value, fine.value);
    const double need = cfg.tol("order_min", 1.9);
    if (!order_is_exact(*r.order) && !(*r.order >= need)) r.pass = false;
  }
  return r;
}

void add_agreement(const RunConfig& cfg, Report& rep) {
  const CheckRow* cr = nullptr;
  const CheckRow* cu = nullptr;
  for (const auto& r : rep.rows) {
    if (r.check == "holomorphy.cauchy_riemann") cr = &r;
    if (r.check == "holomorphy.curvature") cu = &r;
  }
  if (!cr || !cu) return;
  CheckRow a;
  a.check = "holomorphy.agreement";
  a.residual = cr->pass == cu->pass ? 0.0 : 1.0;
  a.tol = cfg.tol(a.check, 0.5);
  a.pass = a.residual <= a.tol;
  a.note = cr->pass ? "holomorphic" : "not holomorphic";
  rep.rows.push_back(a);
}

// ---------------------------------------------------------------- output

std::string format_order(const std::optional<double>& o) {
  if (!o) return "-";
  if (order_is_exact(*o)) return "exact";
  std::ostringstream s;
  s << std::fixed << std::setprecision(2) << *o;
  return s.str();
}

void echo(const Report& rep, std::ostream& log) {
  for (const auto& r : rep.rows) {
    log << (r.pass ? "PASS " : "FAIL ") << std::left << std::setw(30) << r.check << " residual "
        << std::scientific << std::setprecision(3) << r.residual << "  tol " << r.tol << "  order "
        << format_order(r.order);
    if (r.worst_i >= 0) log << "  worst node (" << r.worst_i << ", " << r.worst_j << ")";
    if (!r.note.empty()) log << "  " << r.note;
    log << std::defaultfloat << '\n';
  }
  if (!rep.error.empty()) log << "error: " << rep.error << '\n';
  log << (rep.pass() ? "overall: PASS" : "overall: FAIL") << '\n';
}

std::string out_path(const RunConfig& cfg, const std::string& suffix) {
  std::filesystem::create_directories(cfg.out_dir);
  return (std::filesystem::path(cfg.out_dir) / (cfg.basename + suffix)).string();
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + path);
  f << text;
}

int finish(const RunConfig& cfg, Report& rep, std::ostream& log) {
  const std::string path = out_path(cfg, ".report.json");
  write_text(path, rep.to_json());
  echo(rep, log);
  log << "report: " << path << '\n';
  return rep.pass() ? kPass : kVerificationFailure;
}

Report new_report(const RunConfig& cfg, const std::string& command) {
  Report r;
  r.command = command;
  r.pipeline = cfg.pipeline;
  r.n = cfg.n;
  r.resolution = cfg.chart.resolution;
  r.seed = cfg.seed;
  return r;
}

void write_ball_vertices(const ImmersionMesh& m, std::ostream& f, const char* prefix) {
  f << std::setprecision(17);
  for (const auto& p : m.ball.v) f << prefix << p[0] << ' ' << p[1] << ' ' << p[2] << '\n';
}

// Two triangles per grid cell, zero-based vertex indices.
template <class Emit>
void for_each_triangle(const Chart& c, Emit&& emit) {
  for (int j = 0; j + 1 < c.ny; ++j)
    for (int i = 0; i + 1 < c.nx; ++i) {
      const int a = j * c.nx + i, b = a + 1, d = a + c.nx, e = d + 1;
      emit(a, b, e);
      emit(a, e, d);
    }
}

double mesh_spread(const ImmersionMesh& m) {
  double worst = 0.0;
  for (const auto& F : m.F.v) worst = std::max(worst, (F - m.F.v.front()).max_abs());
  return worst;
}

}  // namespace

// ---------------------------------------------------------------- config

double RunConfig::tol(const std::string& name, double fallback) const {
  const auto it = tolerances.find(name);
  return it == tolerances.end() ? fallback : it->second;
}

double RunConfig::killing_multiple() const { return lambda_killing > 0.0 ? lambda_killing : default_killing_multiple(n); }

RunConfig parse_config(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    fail(std::string("config is not valid JSON: ") + e.what());
  }
  try {
    return config_of(j);
  } catch (const json::exception& e) {
    fail(std::string("config: ") + e.what());
  }
}

RunConfig load_config(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) fail("cannot read config file '" + path + "'");
  std::ostringstream s;
  s << f.rdbuf();
  return parse_config(s.str());
}

// ---------------------------------------------------------------- report

bool Report::pass() const {
  if (!error.empty()) return false;
  return std::all_of(rows.begin(), rows.end(), [](const CheckRow& r) { return r.pass; });
}

namespace {

ojson number_or_null(double v) { return std::isfinite(v) ? ojson(v) : ojson(nullptr); }

ojson rows_json(const std::vector<CheckRow>& rows) {
  ojson arr = ojson::array();
  for (const auto& r : rows) {
    ojson o;
    o["check"] = r.check;
    o["residual"] = number_or_null(r.residual);
    if (!r.order) o["order"] = nullptr;
    else if (order_is_exact(*r.order)) o["order"] = "exact";
    else o["order"] = number_or_null(*r.order);
    o["tol"] = r.tol;
    o["pass"] = r.pass;
    if (r.residual_coarse) o["residual_coarse"] = number_or_null(*r.residual_coarse);
    o["worst_node"] = r.worst_i >= 0 ? ojson::array({r.worst_i, r.worst_j}) : ojson(nullptr);
    if (!r.note.empty()) o["note"] = r.note;
    arr.push_back(o);
  }
  return arr;
}

}  // namespace

std::string Report::to_json() const {
  ojson o;
  o["command"] = command;
  o["pipeline"] = pipeline;
  o["n"] = n;
  o["resolution"] = resolution;
  o["seed"] = seed;
  o["pass"] = pass();
  if (!error.empty()) o["error"] = error;
  o["checks"] = rows_json(rows);
  return o.dump(2) + "\n";
}

// ---------------------------------------------------------------- meshes

void write_obj(const ImmersionMesh& m, const std::string& path) {
  if (!m.has_hyperboloid) throw std::invalid_argument("write_obj: mesh has no ball coordinates");
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + path);
  f << "# spinim surface, Poincare ball model\n";
  write_ball_vertices(m, f, "v ");
  for_each_triangle(m.chart, [&](int a, int b, int c) { f << "f " << a + 1 << ' ' << b + 1 << ' ' << c + 1 << '\n'; });
}

void write_ply(const ImmersionMesh& m, const std::string& path) {
  if (!m.has_hyperboloid) throw std::invalid_argument("write_ply: mesh has no ball coordinates");
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + path);
  const Chart& c = m.chart;
  const long faces = 2L * (c.nx - 1) * (c.ny - 1);
  f << "ply\nformat ascii 1.0\ncomment spinim surface, Poincare ball model\n"
    << "element vertex " << c.nodes() << "\nproperty double x\nproperty double y\nproperty double z\n"
    << "element face " << faces << "\nproperty list uchar int vertex_indices\nend_header\n";
  write_ball_vertices(m, f, "");
  for_each_triangle(c, [&](int a, int b, int d) { f << "3 " << a << ' ' << b << ' ' << d << '\n'; });
}

std::string sidecar_json(const ImmersionMesh& m, const Report& r) {
  ojson o;
  const Chart& c = m.chart;
  o["chart"] = {{"nx", c.nx}, {"ny", c.ny}, {"hx", c.hx}, {"hy", c.hy}, {"x0", c.x0}, {"y0", c.y0}};
  if (m.has_hyperboloid) {
    ojson pts = ojson::array();
    for (const auto& X : m.hyper.v) pts.push_back({X[0], X[1], X[2], X[3]});
    o["hyperboloid"] = pts;
    o["minkowski_defect"] = mesh_minkowski_defect(m);
  } else {
    // Nonzero coefficients of F per node as [blade, re, im].
    ojson nodes = ojson::array();
    for (const auto& F : m.F.v) {
      ojson coeffs = ojson::array();
      for (std::size_t b = 0; b < F.size(); ++b) {
        const cplx z = F[static_cast<Blade>(b)];
        if (z != cplx(0.0)) coeffs.push_back({b, z.real(), z.imag()});
      }
      nodes.push_back(coeffs);
    }
    o["F"] = nodes;
  }
  o["cartan_defect"] = cartan_defect(m);
  o["pass"] = r.pass();
  o["checks"] = rows_json(r.rows);
  return o.dump(1) + "\n";
}

// ---------------------------------------------------------------- commands

int cmd_verify_lemmas(const RunConfig& cfg, std::ostream& log) {
  Report rep = new_report(cfg, "verify-lemmas");
  const LieModel L = build_sl_n(cfg.n, cfg.killing_multiple());
  auto add = [&](const std::string& name, double value, double tol) {
    CheckRow r;
    r.check = name;
    r.residual = value;
    r.tol = cfg.tol(name, tol);
    r.pass = std::isfinite(value) && value <= r.tol;
    rep.rows.push_back(r);
  };
  add("model.gram", L.gram_residual(), 1e-12);
  add("model.jacobi", L.jacobi_residual(), 1e-12);
  for (const auto& lr : run_lemma_suite(L, cfg.seed, cfg.instances))
    add("lemma." + lr.name, lr.max_deviation, cfg.tol("lemmas", 1e-10));
  if (cfg.n == 2) {
    add("omega_identity", omega_identity_deviation(L, cfg.seed, cfg.instances), 1e-12);
    const MorelIdentityDeviation m = morel_identities(cfg.seed, cfg.instances);
    add("morel.pairing_identity", m.pairing, 1e-12);
    add("morel.ad_pairing_identity", m.ad_pairing, 1e-12);
  }
  return finish(cfg, rep, log);
}

int cmd_check(const RunConfig& cfg, std::ostream& log) {
  if (cfg.surface.family.empty()) fail("check: the config carries no surface data");
  const std::vector<std::string> checks = cfg.checks.empty() ? default_checks(cfg) : cfg.checks;
  const bool single = cfg.surface.family == "tables";
  Case fine = make_case(cfg, single ? cfg.chart.resolution : 2 * cfg.chart.resolution, single ? 1 : 2);
  std::optional<Case> coarse;
  if (!single) coarse = make_case(cfg, cfg.chart.resolution, 1);

  Report rep = new_report(cfg, "check");
  for (const auto& name : checks) {
    const std::vector<Probe> pf = run_probe(name, fine);
    std::vector<Probe> pc;
    if (coarse) pc = run_probe(name, *coarse);
    for (std::size_t k = 0; k < pf.size(); ++k) {
      const Probe* c = k < pc.size() && pc[k].name == pf[k].name ? &pc[k] : nullptr;
      rep.rows.push_back(finish_row(cfg, pf[k], c));
      if (single) rep.rows.back().note = "tables: single resolution, order not measured";
    }
  }
  add_agreement(cfg, rep);
  return finish(cfg, rep, log);
}

int cmd_generate(const RunConfig& cfg, std::ostream& log) {
  if (cfg.pipeline != "bryant" && cfg.pipeline != "reconstruct")
    fail("generate: pipeline must be 'bryant' or 'reconstruct'");
  Case c = make_case(cfg, cfg.chart.resolution, 1);
  Report rep = new_report(cfg, "generate");
  auto add = [&](const std::string& name, double value, double tol, int i = -1, int j = -1) {
    CheckRow r;
    r.check = name;
    r.residual = value;
    r.tol = cfg.tol(name, tol);
    r.pass = std::isfinite(value) && value <= r.tol;
    r.worst_i = i;
    r.worst_j = j;
    rep.rows.push_back(r);
  };
  const double conv = 10.0 * c.h() * c.h();
  // tabulated data carry second-order derivatives only
  const double agree_tol = (c.surface && !c.surface->has_closed_form()) ? conv : 1e-6;

  ImmersionMesh mesh;
  try {
    if (c.null_curve) {
      if (cfg.pipeline != "bryant") fail("generate: null_curve input drives the bryant pipeline");
      const Grid<CQuat> v = sample_null_curve(*c.null_curve, c.chart);
      const NullCurveInvariants inv = null_curve_invariants(v);
      add("null_curve.unit", inv.unit, 1e-10);
      add("null_curve.holomorphy", inv.holomorphy.max.value, conv, inv.holomorphy.max.i, inv.holomorphy.max.j);
      add("null_curve.isotropy", inv.isotropy.max.value, conv, inv.isotropy.max.i, inv.isotropy.max.j);
      mesh = assemble_F(v);
    } else if (c.surface && cfg.pipeline == "bryant") {
      BryantResult b;
      try {
        b = bryant_pipeline(*c.surface);
      } catch (const std::invalid_argument& e) {
        fail(std::string("generate: ") + e.what());
      }
      mesh = b.mesh;
      const ImmersionMesh other = weierstrass_F(c.spinor());
      const NodeMax d = max_hyper_difference(mesh, other);
      add("cross_difference", d.value, agree_tol, d.i, d.j);
      const ResidualField k = killing_residual(b.g, *c.frame);
      add("killing", k.max.value, conv, k.max.i, k.max.j);
    } else if (c.surface) {
      const ReconstructResult r = reconstruct(*c.surface, c.L, MultiVector::scalar(c.L.d, 1.0));
      c.phi = r.phi;
      mesh = weierstrass_F(r.phi);
      add("grc", r.grc_max, conv);
      add("path_defect", r.path_defect, agree_tol);
      const ResidualField k = killing_residual(r.phi, *c.frame);
      add("killing", k.max.value, conv, k.max.i, k.max.j);
      if (std::all_of(c.surface->nodes.v.begin(), c.surface->nodes.v.end(),
                      [](const SurfacePoint& p) { return std::abs(p.H - 1.0) <= 1e-9; })) {
        const BryantResult b = bryant_pipeline(*c.surface);
        const NodeMax d = max_hyper_difference(mesh, b.mesh);
        add("cross_difference", d.value, agree_tol, d.i, d.j);
      }
    } else {
      if (cfg.pipeline != "reconstruct") fail("generate: the geodesic family drives the reconstruct pipeline");
      mesh = weierstrass_F(c.spinor());
      const ResidualField k = killing_residual(c.spinor(), *c.frame);
      add("killing", k.max.value, conv, k.max.i, k.max.j);
      add("unit", unit_defect(c.spinor()), 1e-10);
    }
  } catch (const Refusal& r) {
    rep.error = std::string(r.what()) + " (worst node " + std::to_string(r.node_i()) + ", " +
                std::to_string(r.node_j()) + ")";
    add("refused", r.residual(), 0.0, r.node_i(), r.node_j());
    rep.rows.back().pass = false;
    return finish(cfg, rep, log);
  }

  if (mesh_spread(mesh) < 1e-12)
    fail("generate: every node maps to the same point; the degenerate single-point mesh is refused");
  if (mesh.has_hyperboloid) {
    add("minkowski", mesh_minkowski_defect(mesh), 1e-8);
    double rmax = 0.0;
    for (const auto& p : mesh.ball.v) rmax = std::max(rmax, std::sqrt(p[0] * p[0] + p[1] * p[1] + p[2] * p[2]));
    add("ball_radius", rmax, std::nextafter(1.0, 0.0));
    write_obj(mesh, out_path(cfg, ".obj"));
    write_ply(mesh, out_path(cfg, ".ply"));
  }
  add("cartan_defect", cartan_defect(mesh), 1e-10);
  write_text(out_path(cfg, ".sidecar.json"), sidecar_json(mesh, rep));
  return finish(cfg, rep, log);
}

}  // namespace spinim::io
