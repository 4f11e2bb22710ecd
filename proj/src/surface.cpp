#include "spinim/surface.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>

namespace spinim {

SurfacePoint operator+(const SurfacePoint& a, const SurfacePoint& b) {
  return {a.lam + b.lam, a.lam_x + b.lam_x, a.lam_y + b.lam_y, a.lap_log_lam + b.lap_log_lam,
          a.H + b.H,     a.alpha + b.alpha, a.gamma + b.gamma};
}

SurfacePoint operator*(double s, const SurfacePoint& a) {
  return {s * a.lam, s * a.lam_x, s * a.lam_y, s * a.lap_log_lam, s * a.H, s * a.alpha, s * a.gamma};
}

SurfacePoint SurfaceSpec::sample(double x, double y) const {
  if (analytic) return analytic(x, y);
  return interpolate_cubic(nodes, x, y);
}

namespace {

double param(const std::map<std::string, double>& p, const std::string& key, double fallback) {
  const auto it = p.find(key);
  return it == p.end() ? fallback : it->second;
}

std::function<SurfacePoint(double, double)> family_sampler(const std::string& family,
                                                           const std::map<std::string, double>& p) {
  if (family == "horosphere")
    return [](double, double) { return SurfacePoint{1.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0}; };
  if (family == "horosphere_exp")
    return [](double x, double) {
      const double l = std::exp(x);
      return SurfacePoint{l, l, 0.0, 0.0, 1.0, 0.0, 0.0};
    };
  if (family == "poincare_disc")
    return [](double x, double y) {
      const double r2 = x * x + y * y;
      if (r2 >= 1.0) throw std::domain_error("poincare_disc: point outside the unit disc");
      const double q = 1.0 - r2;
      const double l = 2.0 / q;
      // log lam = log 2 - log(1 - r^2); its Laplacian is 4 / (1 - r^2)^2.
      return SurfacePoint{l, 4.0 * x / (q * q), 4.0 * y / (q * q), 4.0 / (q * q), 0.0, 0.0, 0.0};
    };
  if (family == "perturbed_H") {
    const double a = param(p, "amplitude", 0.1);
    return [a](double x, double) { return SurfacePoint{1.0, 0.0, 0.0, 0.0, 1.0 + a * x, 0.0, 0.0}; };
  }
  if (family == "cmc1_cosh") {
    // lam = (a/c) cosh(c x), constant Hopf differential a; Gauss holds since lap log lam = a^2 / lam^2.
    const double a = param(p, "amplitude", 1.0);
    const double c = param(p, "rate", 1.0);
    if (!(a > 0.0) || !(c > 0.0)) throw std::invalid_argument("cmc1_cosh: amplitude and rate must be positive");
    return [a, c](double x, double) {
      const double l = a / c * std::cosh(c * x);
      const double lx = a * std::sinh(c * x);
      return SurfacePoint{l, lx, 0.0, a * a / (l * l), 1.0, a / (l * l), 0.0};
    };
  }
  throw std::invalid_argument("unknown surface family '" + family + "'");
}

}  // namespace

std::vector<std::string> surface_families() {
  return {"horosphere", "horosphere_exp", "poincare_disc", "perturbed_H", "cmc1_cosh"};
}

SurfaceSpec make_surface(const std::string& family, const Chart& chart, const std::map<std::string, double>& params) {
  chart.validate();
  SurfaceSpec s;
  s.family = family;
  s.chart = chart;
  s.analytic = family_sampler(family, params);
  s.nodes = map_nodes<SurfacePoint>(chart, [&](int i, int j) { return s.analytic(chart.x(i), chart.y(j)); });
  validate_surface(s);
  return s;
}

SurfaceSpec surface_from_tables(const Chart& chart, const std::vector<double>& lam, const std::vector<double>& H,
                                const std::vector<double>& alpha, const std::vector<double>& gamma) {
  chart.validate();
  const std::size_t n = chart.nodes();
  if (lam.size() != n || H.size() != n || alpha.size() != n || gamma.size() != n)
    throw std::invalid_argument("surface tables must have nx*ny entries each");
  SurfaceSpec s;
  s.family = "grid";
  s.chart = chart;
  s.nodes = Grid<SurfacePoint>(chart);
  for (std::size_t k = 0; k < n; ++k) {
    s.nodes.v[k].lam = lam[k];
    s.nodes.v[k].H = H[k];
    s.nodes.v[k].alpha = alpha[k];
    s.nodes.v[k].gamma = gamma[k];
  }
  validate_surface(s);
  fill_lambda_derivatives(s);
  return s;
}

void fill_lambda_derivatives(SurfaceSpec& s) {
  const Chart& c = s.chart;
  Grid<double> lam(c), loglam(c);
  for (std::size_t k = 0; k < c.nodes(); ++k) {
    lam.v[k] = s.nodes.v[k].lam;
    loglam.v[k] = std::log(lam.v[k]);
  }
  Grid<double> gx(c), gy(c);
  for (int j = 0; j < c.ny; ++j)
    for (int i = 0; i < c.nx; ++i) {
      gx.at(i, j) = fd_x(loglam, i, j);
      gy.at(i, j) = fd_y(loglam, i, j);
    }
  for (int j = 0; j < c.ny; ++j)
    for (int i = 0; i < c.nx; ++i) {
      SurfacePoint& p = s.nodes.at(i, j);
      p.lam_x = fd_x(lam, i, j);
      p.lam_y = fd_y(lam, i, j);
      p.lap_log_lam = fd_x(gx, i, j) + fd_y(gy, i, j);
    }
}

void inject_alpha(SurfaceSpec& s, int i, int j, double amount) {
  if (i < 0 || j < 0 || i >= s.chart.nx || j >= s.chart.ny) throw std::invalid_argument("injection node outside chart");
  s.nodes.at(i, j).alpha += amount;
  s.analytic = nullptr;
}

void validate_surface(const SurfaceSpec& s) {
  for (int j = 0; j < s.chart.ny; ++j)
    for (int i = 0; i < s.chart.nx; ++i)
      if (!(s.nodes.at(i, j).lam >= s.min_conformal_factor))
        throw std::invalid_argument("conformal factor below floor at node (" + std::to_string(i) + ", " +
                                    std::to_string(j) + ")");
}

}  // namespace spinim
