#include "spinim/quaternion.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace spinim {

namespace {
const cplx I1(0.0, 1.0);
}

double CQuat::max_abs() const { return std::max({std::abs(z0), std::abs(z1), std::abs(z2), std::abs(z3)}); }
double CQuat::norm() const { return std::sqrt(std::norm(z0) + std::norm(z1) + std::norm(z2) + std::norm(z3)); }

CQuat operator+(CQuat a, const CQuat& b) { return a += b; }
CQuat operator-(CQuat a, const CQuat& b) { return a -= b; }
CQuat operator-(CQuat a) { return a *= -1.0; }
CQuat operator*(cplx s, CQuat a) { return a *= s; }
CQuat operator*(CQuat a, cplx s) { return a *= s; }

CQuat cq_product(const CQuat& a, const CQuat& b) {
  return {a.z0 * b.z0 - a.z1 * b.z1 - a.z2 * b.z2 - a.z3 * b.z3,
          a.z0 * b.z1 + a.z1 * b.z0 + a.z2 * b.z3 - a.z3 * b.z2,
          a.z0 * b.z2 - a.z1 * b.z3 + a.z2 * b.z0 + a.z3 * b.z1,
          a.z0 * b.z3 + a.z1 * b.z2 - a.z2 * b.z1 + a.z3 * b.z0};
}

CQuat operator*(const CQuat& a, const CQuat& b) { return cq_product(a, b); }

cplx H(const CQuat& a, const CQuat& b) { return a.z0 * b.z0 + a.z1 * b.z1 + a.z2 * b.z2 + a.z3 * b.z3; }

CQuat cq_tau(const CQuat& a) { return {a.z0, -a.z1, -a.z2, -a.z3}; }

CQuat cq_sigma(const CQuat& a) { return {std::conj(a.z0), std::conj(a.z1), std::conj(a.z2), std::conj(a.z3)}; }

CQuat cq_inverse(const CQuat& a) {
  const cplx h = H(a, a);
  if (std::abs(h) == 0.0) throw std::domain_error("cq_inverse: H(a,a) = 0");
  return (1.0 / h) * cq_tau(a);
}

CQuat cq_renormalize(const CQuat& a) { return (0.5 * (3.0 - H(a, a))) * a; }

CQuat from_matrix(const Eigen::Matrix2cd& M) {
  const cplx a = M(0, 0), b = M(0, 1), c = M(1, 0), d = M(1, 1);
  return {0.5 * (a + d), 0.5 * I1 * (d - a), 0.5 * (b - c), -0.5 * I1 * (b + c)};
}

Eigen::Matrix2cd to_matrix(const CQuat& z) {
  // Images of the units: I = diag(i, -i), J = [[0,1],[-1,0]], K = [[0,i],[i,0]].
  Eigen::Matrix2cd M;
  M(0, 0) = z.z0 + I1 * z.z1;
  M(1, 1) = z.z0 - I1 * z.z1;
  M(0, 1) = z.z2 + I1 * z.z3;
  M(1, 0) = -z.z2 + I1 * z.z3;
  return M;
}

PsiBlocks psi_embed(const CQuat& z, double tol) {
  if (std::abs(z.z0) > tol) throw std::invalid_argument("psi_embed: argument has a scalar part");
  return {(-2.0 * I1) * z, (2.0 * I1) * z};
}

PsiBlocks psi_product(const PsiBlocks& a, const PsiBlocks& b) { return {a.upper * b.upper, a.lower * b.lower}; }

SpinorPair split_even(const CQuat& a) {
  const CQuat pm = {0.5, -0.5 * I1, 0.0, 0.0};
  const CQuat pp = {0.5, 0.5 * I1, 0.0, 0.0};
  return {a * pm, a * pp};
}

bool in_plus_ideal(const CQuat& a, double tol) {
  const CQuat pm = {0.5, -0.5 * I1, 0.0, 0.0};
  return (a * pm - a).max_abs() <= tol;
}

PlusCoords plus_coords(const CQuat& p) {
  // (z1 + i z2 J)(1 - iI) = z1 - i z1 I + i z2 J - z2 K
  return {p.z0, -p.z3};
}

CQuat plus_from_coords(cplx z1, cplx z2) { return {z1, -I1 * z1, I1 * z2, -z2}; }

MultiVector to_generic(const CQuat& a) {
  MultiVector m(3);
  m[0] = a.z0;
  m[0b110] = a.z1;   // e2 e3
  m[0b101] = -a.z2;  // e3 e1 = -e1 e3
  m[0b011] = a.z3;   // e1 e2
  return m;
}

CQuat from_generic(const MultiVector& m, double tol) {
  if (m.dim() != 3) throw std::invalid_argument("from_generic: expected the three-generator algebra");
  const double odd = std::max({std::abs(m[0b001]), std::abs(m[0b010]), std::abs(m[0b100]), std::abs(m[0b111])});
  if (odd > tol * std::max(1.0, m.max_abs())) throw std::invalid_argument("from_generic: element has odd components");
  return {m[0], m[0b110], -m[0b101], m[0b011]};
}

CQuat lie_vector(cplx x1, cplx x2, cplx x3) { return {0.0, 0.5 * I1 * x1, 0.5 * I1 * x2, 0.5 * I1 * x3}; }

}  // namespace spinim
