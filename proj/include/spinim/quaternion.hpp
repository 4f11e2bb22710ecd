#pragma once

#include <Eigen/Dense>

#include "spinim/clifford.hpp"

namespace spinim {

// z0 + z1 I + z2 J + z3 K with I^2 = J^2 = K^2 = -1, IJ = K.
struct CQuat {
  cplx z0 = 0.0, z1 = 0.0, z2 = 0.0, z3 = 0.0;

  static CQuat one() { return {1.0, 0.0, 0.0, 0.0}; }
  static CQuat I() { return {0.0, 1.0, 0.0, 0.0}; }
  static CQuat J() { return {0.0, 0.0, 1.0, 0.0}; }
  static CQuat K() { return {0.0, 0.0, 0.0, 1.0}; }

  CQuat& operator+=(const CQuat& o) {
    z0 += o.z0;
    z1 += o.z1;
    z2 += o.z2;
    z3 += o.z3;
    return *this;
  }
  CQuat& operator-=(const CQuat& o) {
    z0 -= o.z0;
    z1 -= o.z1;
    z2 -= o.z2;
    z3 -= o.z3;
    return *this;
  }
  CQuat& operator*=(cplx s) {
    z0 *= s;
    z1 *= s;
    z2 *= s;
    z3 *= s;
    return *this;
  }
  double max_abs() const;
  double norm() const;
};

CQuat operator+(CQuat a, const CQuat& b);
CQuat operator-(CQuat a, const CQuat& b);
CQuat operator-(CQuat a);
CQuat operator*(cplx s, CQuat a);
CQuat operator*(CQuat a, cplx s);
inline CQuat operator*(double s, CQuat a) { return cplx(s) * a; }
CQuat cq_product(const CQuat& a, const CQuat& b);
CQuat operator*(const CQuat& a, const CQuat& b);

cplx H(const CQuat& a, const CQuat& b);  // complex bilinear, H(z,z) = sum z_i^2
CQuat cq_tau(const CQuat& a);              // a0 - a1 I - a2 J - a3 K
CQuat cq_sigma(const CQuat& a);            // conjugate every coefficient
CQuat cq_inverse(const CQuat& a);          // tau(a) / H(a,a)
CQuat cq_renormalize(const CQuat& a);      // Newton step towards H(a,a) = 1

CQuat from_matrix(const Eigen::Matrix2cd& M);
Eigen::Matrix2cd to_matrix(const CQuat& z);

// Psi(z) = 2 diag(-i z, i z) for z with no scalar part.
struct PsiBlocks {
  CQuat upper, lower;
};
PsiBlocks psi_embed(const CQuat& z, double tol = 0.0);
PsiBlocks psi_product(const PsiBlocks& a, const PsiBlocks& b);

// Projections onto the left ideals (C + CJ)(1 - iI) and (C + CJ)(1 + iI):
// plus = a (1 - iI)/2, minus = a (1 + iI)/2.
struct SpinorPair {
  CQuat plus, minus;
};
SpinorPair split_even(const CQuat& a);
bool in_plus_ideal(const CQuat& a, double tol);

// Coordinates (z1, z2) of a plus-ideal element written as (z1 + i z2 J)(1 - iI).
struct PlusCoords {
  cplx z1, z2;
};
PlusCoords plus_coords(const CQuat& phi_plus);
CQuat plus_from_coords(cplx z1, cplx z2);

// Even subalgebra of Cl over three orthonormal generators:
// I -> e2 e3, J -> e3 e1, K -> e1 e2.
MultiVector to_generic(const CQuat& a);
// Inverse of to_generic; throws if the input has odd components above tol.
CQuat from_generic(const MultiVector& m, double tol = 1e-9);

// Quaternion of the Lie-algebra vector x1 e1 + x2 e2 + x3 e3 with e_k = (i/2) (I, J, K)_k.
CQuat lie_vector(cplx x1, cplx x2, cplx x3);

}  // namespace spinim
