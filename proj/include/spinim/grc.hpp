#pragma once

#include <functional>
#include <stdexcept>
#include <string>

#include "spinim/spin_rep.hpp"

namespace spinim {

// (1/2) Rbar(X, Y) = (1/4)(ad(Y) ad(X) - ad(X) ad(Y)) with ad = ad_bivector.
MultiVector ambient_curvature(const LieModel& L, const CVec& X, const CVec& Y);
// Rbar(X, Y) Z as the commutator action of the element above.
CVec ambient_curvature_action(const LieModel& L, const CVec& X, const CVec& Y, const CVec& Z);

// Residuals of the fundamental equations for surface data (n = 2, one normal).
struct CurvatureReport {
  ResidualField gauss;    // |K - (Kbar + det S)| with K = -lap(log lam)/lam^2
  ResidualField ricci;    // normal curvature against <Rbar(E1,E2) nu, nu>
  ResidualField codazzi;  // (nabla_E1 h)(E2, .) - (nabla_E2 h)(E1, .) - <Rbar(E1,E2) ., nu>
  ResidualField compat;   // II/ad and nabla/ad compatibility in the Clifford bundle
  ResidualField D;        // the symmetric II/ad combination
  double max() const;
  // Name and node of the largest of gauss/ricci/codazzi/compat.
  std::string worst_description() const;
};
CurvatureReport grc_residuals(const SurfaceSpec& s, const LieModel& L);

// Curvature of the spin connection from second differences of phi, compared with
// the Clifford terms A + B + C + D (+ the ad-compatibility term, zero for valid data).
struct Decomposition {
  ResidualField sum_defect;  // |R_spin - (A + B + C + D + E)|
  ResidualField D;
  ResidualField compat;      // E
  ResidualField spin_curvature;
};
Decomposition curvature_decomposition(const SpinorGrid& phi, const FrameField& f);

// d_x W_y - d_y W_x + [W_x, W_y] for W_d = omega(terms, d), by finite differences of node samples.
using ConnectionPick = std::function<MultiVector(const FrameTerms&, int)>;
ResidualField connection_curvature(const FrameField& f, const ConnectionPick& omega);
ResidualField flatness_residual(const FrameField& f);

// Refusal of an integration whose integrability hypothesis fails.
class Refusal : public std::runtime_error {
 public:
  Refusal(const std::string& what, double residual, int i, int j)
      : std::runtime_error(what), residual_(residual), i_(i), j_(j) {}
  double residual() const { return residual_; }
  int node_i() const { return i_; }
  int node_j() const { return j_; }

 private:
  double residual_;
  int i_, j_;
};

// Solves d_d phi = -Omega_d phi by RK4 along paths from the chart origin, with
// unit renormalization after each step. No integrability check.
SpinorGrid integrate_field(const FrameField& f, const MultiVector& phi0, PathOrder order = PathOrder::RowsFirst);

struct ReconstructOptions {
  double grc_threshold = -1.0;  // <= 0: 10 h^2
  bool check_path = true;       // also integrate columns first and compare
};
struct ReconstructResult {
  SpinorGrid phi;
  double grc_max = 0.0;
  double path_defect = 0.0;
};
// Integrates the Killing-type equation for surface data; throws Refusal if the
// Gauss/Ricci/Codazzi/compatibility residual exceeds the threshold.
ReconstructResult reconstruct(const SurfaceSpec& s, const LieModel& L, const MultiVector& phi0,
                              const ReconstructOptions& opt = {});

double max_abs_difference(const SpinorGrid& a, const SpinorGrid& b);

}  // namespace spinim
