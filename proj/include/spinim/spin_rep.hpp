#pragma once

#include <array>
#include <cstdint>

#include "spinim/frame.hpp"
#include "spinim/quaternion.hpp"

namespace spinim {

using SpinorGrid = Grid<MultiVector>;

// <<phi, psi>> = tau(psi) phi.
MultiVector pairing(const MultiVector& phi, const MultiVector& psi);

struct ImmersionMesh {
  Chart chart;
  Grid<MultiVector> F;
  bool has_hyperboloid = false;
  Grid<std::array<double, 4>> hyper;  // (X0, X1, X2, X3)
  Grid<std::array<double, 3>> ball;   // (X1, X2, X3) / (1 + X0)
};

// F = tau(q) sigma(q) = X0 + i X1 I + i X2 J + i X3 K; reads off (X0..X3).
std::array<double, 4> hyperboloid_coords(const CQuat& F);
// The same coordinates by the explicit quadratic formulas in the spinor coefficients.
std::array<double, 4> hyperboloid_from_spinor(const CQuat& phi);
std::array<double, 3> ball_point(const std::array<double, 4>& X);
double minkowski_defect(const std::array<double, 4>& X);  // |-X0^2 + X1^2 + X2^2 + X3^2 + 1|

// Per-node F = tau(phi) sigma(phi); hyperboloid and ball coordinates when dim = 3.
ImmersionMesh weierstrass_F(const SpinorGrid& phi);
ImmersionMesh mesh_from_F(const Grid<MultiVector>& F);

struct ResidualField {
  Grid<double> node;
  NodeMax max;
};
ResidualField residual_field(Grid<double> g);

// max |tau(g) g - 1| over the grid.
double unit_defect(const SpinorGrid& phi);
// max |sigma(tau(F)) - F|: F must be a Cartan point.
double cartan_defect(const ImmersionMesh& m);
// worst Minkowski defect and smallest X0 (dim 3 only).
double mesh_minkowski_defect(const ImmersionMesh& m);

// Finite-difference d_d phi + Omega_d phi, max over both directions per node.
ResidualField killing_residual(const SpinorGrid& phi, const FrameField& f);

// d_d F - tau(phi) ad(d_d) sigma(phi) and F^{-1} d_d F + sigma(tau(phi) ad(d_d) phi).
struct DerivativeDefects {
  ResidualField dF, dF_left;
};
DerivativeDefects derivative_identity_check(const SpinorGrid& phi, const FrameField& f);

// Spinor coordinates of the plus component: phi^+ = (z1 + i z2 J)(1 - iI).
struct MorelResidual {
  ResidualField dirac;  // D psi - H psi + psi_bar
  ResidualField norm;   // d_X |psi|^2 + Re<X psi_bar, psi>, both directions
  double min_psi = 0.0; // smallest |psi|
};
MorelResidual morel_dirac_check(const SpinorGrid& phi, const SurfaceSpec& s);

// Deviation of the quadratic identities of the plus component, over random
// (z1, z2) and random real tangent X = x2 e2 + x3 e3:
//   tau(phi+) sigma(phi+) = 2(|z1|^2 + |z2|^2)(1 + iI)
//   tau(phi+) ad(X) sigma(phi+) = -4 Re{(x2 - i x3) z1 conj(z2)} (1 + iI)
struct MorelIdentityDeviation {
  double pairing = 0.0;
  double ad_pairing = 0.0;
};
MorelIdentityDeviation morel_identities(std::uint64_t seed, int instances);

// d_d <<phi, phi'>> - <<nabla_d phi, phi'>> - <<phi, nabla_d phi'>> with nabla = d + conn,
// for two spinor grids over the same field.
ResidualField pairing_compatibility(const SpinorGrid& phi, const SpinorGrid& psi, const FrameField& f);

}  // namespace spinim
