#pragma once

#include <functional>
#include <string>

#include "spinim/liealg.hpp"
#include "spinim/surface.hpp"

namespace spinim {

// Connection coefficients of the Killing-type equation along one coordinate
// direction d: d_d phi = -(conn + half_II + half_ad) phi.
struct DirTerms {
  MultiVector conn;     // spin connection of the frame
  MultiVector half_II;  // (1/2) II(d_d)
  MultiVector half_ad;  // (1/2) ad(d_d)
  CVec ad_vec;          // d_d as a vector of g, in the frame

  MultiVector total() const { return conn + half_II + half_ad; }
};

struct FrameTerms {
  DirTerms d[2];
};

// Connection with the ad term turned by the complex structure:
// conn + half_II + (i/2) ad(J d_d), J d_x = d_y, J d_y = -d_x.
MultiVector primed_connection(const FrameTerms& t, int dir);
// ad(d_z) = (ad(d_x) - i ad(d_y)) / 2.
MultiVector ad_dz(const FrameTerms& t);

// Surface-chart terms for n = 2. Frame: e1 normal, e2 = d_x/lam, e3 = d_y/lam.
// ad(d_d) = orientation * ad_bivector(lam e_{d+1}).
FrameTerms surface_frame_terms(const LieModel& L, const SurfacePoint& p, double orientation);

struct FrameField {
  std::string name;
  LieModel L;
  Chart chart;
  double ad_orientation = 1.0;
  std::function<FrameTerms(double, double)> at;
  // Closed-form spinor solving the equation, when known, as phi = y_factor(y) * x_factor(x).
  std::function<MultiVector(double)> spinor_y_factor, spinor_x_factor;

  bool has_exact_spinor() const { return spinor_y_factor && spinor_x_factor; }

  int dim() const { return L.d; }
  FrameTerms node(int i, int j) const { return at(chart.x(i), chart.y(j)); }
};

// Samples the closed-form spinor at every node (one exponential per row and column).
Grid<MultiVector> exact_spinor_grid(const FrameField& f);

FrameField surface_field(const LieModel& L, const SurfaceSpec& s);

// Canonical spinor pulled back by the section s(x, y) = exp(x Xa) exp(y Xb):
// phi = lift(exp(-y Xb)) lift(exp(-x Xa)); the Maurer-Cartan form splits into
// its h-part (connection) and m-part (ad term), with no second fundamental form.
FrameField geodesic_field(const LieModel& L, const Chart& c, const CVec& Xa, const CVec& Xb);

}  // namespace spinim
