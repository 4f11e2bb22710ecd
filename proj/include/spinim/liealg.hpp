#pragma once

#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "spinim/clifford.hpp"

namespace spinim {

// sl_n(C) presented through a B-orthonormal basis of m = i su(n) (traceless
// Hermitian matrices). Vectors of g are complex coordinate vectors in that basis;
// real coordinates lie in m and purely imaginary ones in h = i m.
struct LieModel {
  int n = 0;
  int d = 0;
  double lambda = 0.0;  // B = lambda * tr(ad o ad)
  std::vector<Eigen::MatrixXcd> basis;
  std::vector<cplx> structure;  // [e_j, e_k] = sum_l c(j,k,l) e_l

  cplx c(int j, int k, int l) const { return structure[(static_cast<std::size_t>(j) * d + k) * d + l]; }

  CVec bracket(const CVec& X, const CVec& Y) const;
  Eigen::MatrixXcd ad_matrix(const CVec& X) const;  // column j holds [X, e_j]
  cplx B(const CVec& X, const CVec& Y) const;       // lambda tr(ad X o ad Y)
  Eigen::MatrixXcd to_matrix(const CVec& X) const;
  CVec coords(const Eigen::MatrixXcd& M) const;
  Eigen::MatrixXcd gram() const;
  double gram_residual() const;    // max |Gram - I|
  double jacobi_residual() const;  // max over basis triples
};

double default_killing_multiple(int n);

// n in {2, 3}; lambda <= 0 selects the default multiple.
LieModel build_sl_n(int n, double lambda = 0.0);

// (1/2) sum_j e_j [X, e_j]; half of it acts on vectors as ad(X).
MultiVector ad_bivector(const LieModel& L, const CVec& X);
// Differential of the spin lift: ad_bivector / 2.
MultiVector ad_tilde(const LieModel& L, const CVec& X);

struct GroupElement {
  MultiVector spin;
  std::optional<Eigen::MatrixXcd> matrix;
};

// Lift of exp(tX) into the spin group, with the matrix exponential alongside.
GroupElement lift_Ad(const LieModel& L, const CVec& X, double t);

// a * sigma(tau(a)).
MultiVector cartan_point(const MultiVector& a);
inline MultiVector cartan_point(const GroupElement& g) { return cartan_point(g.spin); }

// Vector action xi -> g xi tau(g) of a unit spin element.
CVec spin_act(const MultiVector& g, const CVec& xi);

// Matrix-group adjoint action M X M^{-1}, returned in coordinates.
CVec matrix_act(const LieModel& L, const Eigen::MatrixXcd& M, const CVec& X);

Eigen::MatrixXcd matrix_exp(const Eigen::MatrixXcd& M);

// m-part (real coordinates) and h-part (imaginary coordinates times i).
CVec m_part(const CVec& X);
CVec h_part(const CVec& X);

// Helpers on coordinate vectors.
CVec axpy(cplx a, const CVec& x, const CVec& y);  // a*x + y
double max_abs_diff(const CVec& a, const CVec& b);
double max_abs(const CVec& a);

}  // namespace spinim
