#pragma once

#include <array>
#include <functional>
#include <vector>

#include "spinim/grc.hpp"
#include "spinim/quaternion.hpp"

namespace spinim {

// Compact-factor connection form eta = eta_x dx + eta_y dy with real I, J, K parts.
using EtaPair = std::array<CQuat, 2>;
EtaPair eta_at(const SurfacePoint& p);

struct EtaForm {
  Chart chart;
  Grid<EtaPair> nodes;
  std::function<EtaPair(double, double)> at;
};

// Requires H = 1 within tol at every node (throws std::invalid_argument).
EtaForm build_eta(const SurfaceSpec& s, double tol = 1e-9);
// d eta - eta ^ eta: d_x eta_y - d_y eta_x - [eta_x, eta_y].
ResidualField eta_structure_residual(const EtaForm& eta);
// max |sigma(eta) - eta| (eta must have real coefficients).
double eta_reality_defect(const EtaForm& eta);

// d k = eta k with k = conj(h); refuses (Refusal) when the structure equation fails
// beyond threshold (<= 0 selects 10 h^2).
Grid<CQuat> integrate_compact_factor(const EtaForm& eta, const CQuat& k0 = CQuat::one(), double threshold = -1.0);

// dv v^{-1} = (i/2) lam dz h J (1 + iI) conj(h), integrated jointly with d k = eta k
// so that h is available between nodes.
struct BryantResult {
  Grid<CQuat> k;       // conj of the compact factor h
  Grid<CQuat> v;       // null curve
  SpinorGrid g;        // spinor k v in the generic algebra
  ImmersionMesh mesh;  // F = v^{-1} sigma(v)
};
BryantResult bryant_pipeline(const SurfaceSpec& s, const CQuat& k0 = CQuat::one(), const CQuat& v0 = CQuat::one(),
                             double threshold = -1.0);

// F = v^{-1} sigma(v) per node.
ImmersionMesh assemble_F(const Grid<CQuat>& v);

// Holomorphic null-curve input: v(z) = sum_k coeff_k z^power_k exp(rate_k z).
struct NullTerm {
  CQuat coeff;
  int power = 0;
  cplx rate = 0.0;
};
struct NullCurveSpec {
  std::vector<NullTerm> terms;
};
CQuat eval_null_curve(const NullCurveSpec& c, cplx z);
CQuat eval_null_curve_derivative(const NullCurveSpec& c, cplx z);
NullCurveSpec horosphere_null_curve();
Grid<CQuat> sample_null_curve(const NullCurveSpec& c, const Chart& chart);

struct NullCurveInvariants {
  double unit = 0.0;        // max |H(v, v) - 1|
  ResidualField holomorphy; // |d_zbar v| by differences
  ResidualField isotropy;   // |H(d_z v, d_z v)| by differences
};
NullCurveInvariants null_curve_invariants(const Grid<CQuat>& v);

// Closed form of the horosphere in hyperboloid coordinates.
std::array<double, 4> horosphere_point(double x, double y);

struct HolomorphyResult {
  ResidualField cauchy_riemann;  // |d_zbar <<ad(d_z) phi, phi>>|
  ResidualField curvature;       // curvature of the primed connection
};
HolomorphyResult gauss_map_holomorphy(const SpinorGrid& phi, const FrameField& f);

// Route for general n: h with h^{-1} dh = conn + half_II + (i/2) ad o J, v = h g,
// dv v^{-1} = dz h w conj(h) with w = -ad(d_z), and F = v^{-1} sigma(v).
struct GeneralRoute {
  SpinorGrid h, v;
  ResidualField null_equation;  // |d_d v v^{-1} - c_d h w tau(h)|, c = (1, i)
  double F_defect = 0.0;        // against tau(g) sigma(g)
  double isotropy = 0.0;        // |extended_B(ad(d_z), ad(d_z))| worst node
};
GeneralRoute general_route(const SpinorGrid& g, const FrameField& f);

}  // namespace spinim
