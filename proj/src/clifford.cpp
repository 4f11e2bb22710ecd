#include "spinim/clifford.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <mutex>
#include <stdexcept>
#include <string>

#include "spinim/kernels.hpp"

namespace spinim {

int grade_of(Blade b) { return std::popcount(b); }

int blade_sign(Blade a, Blade b) {
  // Each factor of b has to move left past every factor of a with a larger index.
  int swaps = 0;
  for (Blade x = a >> 1; x != 0; x >>= 1) swaps += std::popcount(x & b);
  int s = (swaps & 1) ? -1 : 1;
  if (std::popcount(a & b) & 1) s = -s;  // each repeated e_k contributes e_k^2 = -1
#if defined(SPINIM_CORRUPT_SIGN)
  if (std::popcount(a) == 2 && std::popcount(b) == 1 && (a & b) != 0) s = -s;
#endif
  return s;
}

int blade_sign_oracle(Blade a, Blade b) {
  std::vector<int> word;
  for (int k = 0; k < 32; ++k)
    if (a & (Blade(1) << k)) word.push_back(k);
  for (int k = 0; k < 32; ++k)
    if (b & (Blade(1) << k)) word.push_back(k);
  int s = 1;
  // Bubble sort with explicit transpositions, contracting equal neighbours.
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t p = 0; p + 1 < word.size(); ++p) {
      if (word[p] > word[p + 1]) {
        std::swap(word[p], word[p + 1]);
        s = -s;
        changed = true;
      } else if (word[p] == word[p + 1]) {
        word.erase(word.begin() + static_cast<long>(p), word.begin() + static_cast<long>(p) + 2);
        s = -s;
        changed = true;
        break;
      }
    }
  }
  return s;
}

namespace {

const std::vector<double>& sign_table(int dim) {
  static std::array<std::vector<double>, kMaxDenseDim + 1> tables;
  static std::array<std::once_flag, kMaxDenseDim + 1> flags;
  std::call_once(flags[dim], [dim] {
    const std::size_t n = std::size_t(1) << dim;
    auto& t = tables[dim];
    t.resize(n * n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        t[i * n + j] = blade_sign(static_cast<Blade>(i), static_cast<Blade>(j));
  });
  return tables[dim];
}

void check_same_dim(const MultiVector& a, const MultiVector& b, const char* what) {
  if (a.dim() != b.dim())
    throw std::invalid_argument(std::string(what) + ": dimension mismatch (" + std::to_string(a.dim()) +
                                " vs " + std::to_string(b.dim()) + ")");
}

double reverse_sign(int k) { return ((k * (k - 1) / 2) & 1) ? -1.0 : 1.0; }

}  // namespace

MultiVector::MultiVector(int dim) : dim_(dim) {
  if (dim < 0 || dim > kMaxDenseDim)
    throw std::invalid_argument("MultiVector: dimension " + std::to_string(dim) + " outside dense range");
  c_.assign(std::size_t(1) << dim, cplx(0));
}

MultiVector MultiVector::scalar(int dim, cplx c) {
  MultiVector m(dim);
  m.c_[0] = c;
  return m;
}

MultiVector MultiVector::blade(int dim, Blade mask, cplx c) {
  MultiVector m(dim);
  if (mask >= m.size()) throw std::invalid_argument("MultiVector::blade: mask out of range");
  m.c_[mask] = c;
  return m;
}

MultiVector MultiVector::basis_vector(int dim, int index, cplx c) {
  if (index < 0 || index >= dim) throw std::invalid_argument("MultiVector::basis_vector: index out of range");
  return blade(dim, Blade(1) << index, c);
}

MultiVector MultiVector::vector(const CVec& v) {
  MultiVector m(static_cast<int>(v.size()));
  for (std::size_t k = 0; k < v.size(); ++k) m.c_[Blade(1) << k] = v[k];
  return m;
}

MultiVector MultiVector::grade(int k) const {
  MultiVector m(dim_);
  for (std::size_t b = 0; b < c_.size(); ++b)
    if (grade_of(static_cast<Blade>(b)) == k) m.c_[b] = c_[b];
  return m;
}

CVec MultiVector::vector_part() const {
  CVec v(dim_);
  for (int k = 0; k < dim_; ++k) v[k] = c_[Blade(1) << k];
  return v;
}

double MultiVector::off_grade_norm(int k) const {
  double m = 0.0;
  for (std::size_t b = 0; b < c_.size(); ++b)
    if (grade_of(static_cast<Blade>(b)) != k) m = std::max(m, std::abs(c_[b]));
  return m;
}

double MultiVector::norm() const {
  double s = 0.0;
  for (const auto& c : c_) s += std::norm(c);
  return std::sqrt(s);
}

double MultiVector::max_abs() const {
  double m = 0.0;
  for (const auto& c : c_) m = std::max(m, std::abs(c));
  return m;
}

MultiVector& MultiVector::operator+=(const MultiVector& o) {
  check_same_dim(*this, o, "operator+=");
  for (std::size_t k = 0; k < c_.size(); ++k) c_[k] += o.c_[k];
  return *this;
}

MultiVector& MultiVector::operator-=(const MultiVector& o) {
  check_same_dim(*this, o, "operator-=");
  for (std::size_t k = 0; k < c_.size(); ++k) c_[k] -= o.c_[k];
  return *this;
}

MultiVector& MultiVector::operator*=(cplx s) {
  for (auto& c : c_) c *= s;
  return *this;
}

MultiVector operator+(MultiVector a, const MultiVector& b) { return a += b; }
MultiVector operator-(MultiVector a, const MultiVector& b) { return a -= b; }
MultiVector operator-(MultiVector a) { return a *= -1.0; }
MultiVector operator*(cplx s, MultiVector a) { return a *= s; }
MultiVector operator*(MultiVector a, cplx s) { return a *= s; }

MultiVector product(const MultiVector& a, const MultiVector& b) {
  check_same_dim(a, b, "product");
  const int d = a.dim();
  const std::size_t n = a.size();
  MultiVector out(d);
  if (n == 1) {
    out[0] = a[0] * b[0];
    return out;
  }
  const auto& table = sign_table(d);
  const auto axpy = kernels::active_blade_axpy();
  const cplx* bp = b.coeffs().data();
  cplx* op = out.coeffs().data();
  for (std::size_t i = 0; i < n; ++i) {
    const cplx ai = a[static_cast<Blade>(i)];
    if (ai == cplx(0)) continue;
    axpy(op, bp, ai, static_cast<unsigned>(i), table.data() + i * n, n);
  }
  return out;
}

MultiVector operator*(const MultiVector& a, const MultiVector& b) { return product(a, b); }

MultiVector product_reference(const MultiVector& a, const MultiVector& b) {
  check_same_dim(a, b, "product_reference");
  MultiVector out(a.dim());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) {
      const Blade bi = static_cast<Blade>(i), bj = static_cast<Blade>(j);
      out[bi ^ bj] += double(blade_sign_oracle(bi, bj)) * a[bi] * b[bj];
    }
  return out;
}

MultiVector reverse(const MultiVector& a) {
  MultiVector m = a;
  for (std::size_t b = 0; b < m.size(); ++b) m[static_cast<Blade>(b)] *= reverse_sign(grade_of(static_cast<Blade>(b)));
  return m;
}

MultiVector sigma(const MultiVector& a) {
  MultiVector m = a;
  for (std::size_t b = 0; b < m.size(); ++b) {
    const Blade bl = static_cast<Blade>(b);
    m[bl] = (grade_of(bl) & 1 ? -1.0 : 1.0) * std::conj(a[bl]);
  }
  return m;
}

MultiVector grade_involution(const MultiVector& a) {
  MultiVector m = a;
  for (std::size_t b = 0; b < m.size(); ++b)
    if (grade_of(static_cast<Blade>(b)) & 1) m[static_cast<Blade>(b)] = -m[static_cast<Blade>(b)];
  return m;
}

MultiVector commutator(const MultiVector& a, const MultiVector& b) { return product(a, b) - product(b, a); }

cplx extended_B(const MultiVector& a, const MultiVector& b) {
  check_same_dim(a, b, "extended_B");
  cplx s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) s += a[static_cast<Blade>(k)] * b[static_cast<Blade>(k)];
  return s;
}

cplx reversed_scalar_pairing(const MultiVector& a, const MultiVector& b) {
  return product(reverse(b), a).scalar_part();
}

MultiVector bivector_of_skew(const Eigen::MatrixXcd& u, double skew_tol) {
  const int d = static_cast<int>(u.rows());
  if (u.cols() != d) throw std::invalid_argument("bivector_of_skew: operator must be square");
  const double scale = std::max(1.0, u.cwiseAbs().maxCoeff());
  if ((u + u.transpose()).cwiseAbs().maxCoeff() > skew_tol * scale)
    throw std::invalid_argument("bivector_of_skew: operator is not skew-symmetric");
  MultiVector out(d);
  // (1/4) sum_j e_j u(e_j) = (1/4) sum_{j,k} u_kj e_j e_k; the j = k terms vanish.
  for (int j = 0; j < d; ++j)
    for (int k = j + 1; k < d; ++k) {
      const Blade bl = (Blade(1) << j) | (Blade(1) << k);
      out[bl] += 0.25 * (u(k, j) - u(j, k));
    }
  return out;
}

MultiVector mixed_bivector(int dim, const std::vector<int>& tangent, const std::vector<int>& normal,
                           const Eigen::MatrixXcd& u) {
  if (u.rows() != static_cast<long>(normal.size()) || u.cols() != static_cast<long>(tangent.size()))
    throw std::invalid_argument("mixed_bivector: map shape does not match the block sizes");
  if (tangent.size() + normal.size() > static_cast<std::size_t>(dim))
    throw std::invalid_argument("mixed_bivector: blocks exceed the dimension");
  MultiVector out(dim);
  for (std::size_t c = 0; c < tangent.size(); ++c) {
    const MultiVector ej = MultiVector::basis_vector(dim, tangent[c]);
    CVec img(dim, 0.0);
    for (std::size_t r = 0; r < normal.size(); ++r) img[normal[r]] += u(static_cast<long>(r), static_cast<long>(c));
    out += 0.5 * product(ej, MultiVector::vector(img));
  }
  return out;
}

MultiVector mixed_bivector(int dim, int p, const Eigen::MatrixXcd& u) {
  if (p < 0 || p > dim) throw std::invalid_argument("mixed_bivector: block size out of range");
  std::vector<int> t, nn;
  for (int k = 0; k < p; ++k) t.push_back(k);
  for (int k = p; k < dim; ++k) nn.push_back(k);
  return mixed_bivector(dim, t, nn, u);
}

MultiVector mixed_bivector_symmetric(int dim, const std::vector<int>& tangent, const std::vector<int>& normal,
                                     const Eigen::MatrixXcd& u) {
  MultiVector out(dim);
  for (std::size_t c = 0; c < tangent.size(); ++c) {
    CVec img(dim, 0.0);
    for (std::size_t r = 0; r < normal.size(); ++r) img[normal[r]] += u(static_cast<long>(r), static_cast<long>(c));
    out += 0.25 * product(MultiVector::basis_vector(dim, tangent[c]), MultiVector::vector(img));
  }
  // Adjoint with respect to the bilinear form: u^*(e_n) = sum_t u(n, t) e_t.
  for (std::size_t r = 0; r < normal.size(); ++r) {
    CVec img(dim, 0.0);
    for (std::size_t c = 0; c < tangent.size(); ++c) img[tangent[c]] -= u(static_cast<long>(r), static_cast<long>(c));
    out += 0.25 * product(MultiVector::basis_vector(dim, normal[r]), MultiVector::vector(img));
  }
  return out;
}

MultiVector clifford_exp(const MultiVector& b, double tol, int max_terms) {
  if (tol <= 0) throw std::invalid_argument("clifford_exp: tolerance must be positive");
  const double scale = std::max(1.0, b.max_abs());
  if (b.off_grade_norm(2) > 1e-12 * scale) throw std::invalid_argument("clifford_exp: argument is not a bivector");
  int squarings = 0;
  double nb = b.norm();
  while (nb > 0.5) {
    nb *= 0.5;
    ++squarings;
  }
  const MultiVector x = std::ldexp(1.0, -squarings) * b;
  MultiVector sum = MultiVector::scalar(b.dim(), 1.0);
  MultiVector term = sum;
  bool converged = false;
  for (int k = 1; k <= max_terms; ++k) {
    term = (1.0 / k) * product(term, x);
    sum += term;
    if (term.norm() < tol) {
      converged = true;
      break;
    }
  }
  if (!converged) throw std::runtime_error("clifford_exp: series did not converge within the term limit");
  for (int s = 0; s < squarings; ++s) sum = product(sum, sum);
  return sum;
}

Eigen::MatrixXcd commutator_action_matrix(const MultiVector& b) {
  const int d = b.dim();
  Eigen::MatrixXcd m(d, d);
  for (int j = 0; j < d; ++j) {
    const CVec col = commutator(b, MultiVector::basis_vector(d, j)).vector_part();
    for (int k = 0; k < d; ++k) m(k, j) = col[k];
  }
  return m;
}

MultiVector renormalize_unit(const MultiVector& g) {
  const cplx s = product(reverse(g), g).scalar_part();
  return g * (0.5 * (3.0 - s));
}

}  // namespace spinim
