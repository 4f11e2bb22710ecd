#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "spinim/grid.hpp"

namespace spinim {

// Local data of a conformal immersion ds^2 = lam^2 (dx^2 + dy^2) into the
// three-dimensional model: shape operator ((H + alpha, gamma), (gamma, H - alpha))
// in the orthonormal frame (dx/lam, dy/lam).
struct SurfacePoint {
  double lam = 1.0;
  double lam_x = 0.0, lam_y = 0.0;
  double lap_log_lam = 0.0;  // (d_xx + d_yy) log lam
  double H = 0.0;
  double alpha = 0.0, gamma = 0.0;
};

SurfacePoint operator+(const SurfacePoint& a, const SurfacePoint& b);
SurfacePoint operator*(double s, const SurfacePoint& a);

struct SurfaceSpec {
  std::string family;
  Chart chart;
  Grid<SurfacePoint> nodes;
  // Closed-form sampler; empty for tabulated data (then samples are interpolated).
  std::function<SurfacePoint(double, double)> analytic;
  // Sign of the ad term in the frame, see frame.hpp.
  double ad_orientation = -1.0;
  int normal_rank = 1;
  double min_conformal_factor = 1e-8;

  SurfacePoint sample(double x, double y) const;
  bool has_closed_form() const { return static_cast<bool>(analytic); }
};

// Closed-form families:
//   horosphere        lam = 1, H = 1, alpha = gamma = 0
//   horosphere_exp    lam = e^x, H = 1 (the horosphere in the parameter e^z)
//   poincare_disc     lam = 2/(1 - |z|^2), totally geodesic (chart inside |z| < 1)
//   perturbed_H       lam = 1, H = 1 + amplitude x, alpha = gamma = 0 (violates Codazzi)
//   cmc1_cosh         lam = (amplitude/rate) cosh(rate x), H = 1, alpha = amplitude / lam^2, gamma = 0
// params: "amplitude" (perturbed_H, cmc1_cosh), "rate" (cmc1_cosh).
SurfaceSpec make_surface(const std::string& family, const Chart& chart,
                         const std::map<std::string, double>& params = {});
std::vector<std::string> surface_families();

// Tabulated data: per-node lam, H, alpha, gamma (row-major, i fastest). lam
// derivatives are filled by finite differences.
SurfaceSpec surface_from_tables(const Chart& chart, const std::vector<double>& lam, const std::vector<double>& H,
                                const std::vector<double>& alpha, const std::vector<double>& gamma);

// Recomputes lam_x, lam_y, lap_log_lam from the tabulated lam.
void fill_lambda_derivatives(SurfaceSpec& s);

// Adds `amount` to alpha at node (i, j); the closed form is dropped.
void inject_alpha(SurfaceSpec& s, int i, int j, double amount);

// Throws std::invalid_argument if the conformal factor drops below the floor.
void validate_surface(const SurfaceSpec& s);

}  // namespace spinim
