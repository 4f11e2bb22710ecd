#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

namespace spinim {

using cplx = std::complex<double>;
using CVec = std::vector<cplx>;

// Blades are bitmasks over {0..d-1}; bit k set means e_{k+1} is a factor,
// factors kept in increasing index order.
using Blade = std::uint32_t;

constexpr int kMaxDenseDim = 8;

int grade_of(Blade b);

// Sign of e_a * e_b relative to the canonical blade e_{a xor b}, with e_k^2 = -1.
int blade_sign(Blade a, Blade b);

// Slow reference: expands both blades into index words and sorts with
// explicit adjacent transpositions. Used to cross-check blade_sign.
int blade_sign_oracle(Blade a, Blade b);

class MultiVector {
 public:
  MultiVector() = default;
  explicit MultiVector(int dim);

  static MultiVector scalar(int dim, cplx c);
  static MultiVector blade(int dim, Blade mask, cplx c = 1.0);
  static MultiVector basis_vector(int dim, int index, cplx c = 1.0);
  static MultiVector vector(const CVec& v);

  int dim() const { return dim_; }
  std::size_t size() const { return c_.size(); }
  cplx& operator[](Blade b) { return c_[b]; }
  const cplx& operator[](Blade b) const { return c_[b]; }
  const CVec& coeffs() const { return c_; }
  CVec& coeffs() { return c_; }

  cplx scalar_part() const { return c_.empty() ? cplx(0) : c_[0]; }
  MultiVector grade(int k) const;
  CVec vector_part() const;
  // Largest |coefficient| outside the listed grade.
  double off_grade_norm(int k) const;
  double norm() const;  // Euclidean norm of the coefficient array
  double max_abs() const;

  MultiVector& operator+=(const MultiVector& o);
  MultiVector& operator-=(const MultiVector& o);
  MultiVector& operator*=(cplx s);

 private:
  int dim_ = 0;
  CVec c_;
};

MultiVector operator+(MultiVector a, const MultiVector& b);
MultiVector operator-(MultiVector a, const MultiVector& b);
MultiVector operator-(MultiVector a);
MultiVector operator*(cplx s, MultiVector a);
MultiVector operator*(MultiVector a, cplx s);
inline MultiVector operator*(double s, MultiVector a) { return cplx(s) * std::move(a); }

// Clifford product; throws std::invalid_argument on dimension mismatch.
MultiVector product(const MultiVector& a, const MultiVector& b);
MultiVector operator*(const MultiVector& a, const MultiVector& b);

// Straightforward double loop over blades using blade_sign_oracle.
MultiVector product_reference(const MultiVector& a, const MultiVector& b);

MultiVector reverse(const MultiVector& a);           // tau
MultiVector sigma(const MultiVector& a);             // real-form involution in the m-basis
MultiVector grade_involution(const MultiVector& a);  // (-1)^k on grade k
MultiVector commutator(const MultiVector& a, const MultiVector& b);

// Symmetric bilinear form with orthonormal blades and orthogonal grades.
cplx extended_B(const MultiVector& a, const MultiVector& b);

// Signed scalar part of tau(b)*a; equals extended_B on even elements and
// its negative on odd ones.
cplx reversed_scalar_pairing(const MultiVector& a, const MultiVector& b);

// Skew operator u given by its matrix in the orthonormal basis (column j = u(e_j)).
// Returns (1/4) sum_j e_j u(e_j). Throws on non-skew input.
MultiVector bivector_of_skew(const Eigen::MatrixXcd& u, double skew_tol = 1e-10);

// u maps span{e_t : t in tangent} to span{e_n : n in normal}; u(r, c) is the
// coefficient of e_{normal[r]} in u(e_{tangent[c]}). Returns (1/2) sum_j e_j u(e_j).
MultiVector mixed_bivector(int dim, const std::vector<int>& tangent, const std::vector<int>& normal,
                           const Eigen::MatrixXcd& u);
// Ordered split: tangent = first p basis vectors, normal = the remaining q.
MultiVector mixed_bivector(int dim, int p, const Eigen::MatrixXcd& u);
// The symmetric form (1/4)(sum_tangent e_j u(e_j) + sum_normal e_j (-u^*(e_j))).
MultiVector mixed_bivector_symmetric(int dim, const std::vector<int>& tangent,
                                     const std::vector<int>& normal, const Eigen::MatrixXcd& u);

// Power series exp(b) for a bivector b; the sum stops once a term's norm
// falls below tol. Large arguments are scaled down and squared back.
MultiVector clifford_exp(const MultiVector& b, double tol = 1e-15, int max_terms = 200);

// Vector (grade-1) element -> coefficient vector, and the matrix of xi -> [b, xi].
Eigen::MatrixXcd commutator_action_matrix(const MultiVector& b);

// tau(g)*g = 1 fixes the spin normalization; this applies one Newton step
// g <- g * (3 - s)/2, s = scalar part of tau(g)*g.
MultiVector renormalize_unit(const MultiVector& g);

}  // namespace spinim
