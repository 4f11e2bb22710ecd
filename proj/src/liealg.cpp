#include "spinim/liealg.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include <unsupported/Eigen/MatrixFunctions>

namespace spinim {

namespace {

using Mat = Eigen::MatrixXcd;
const cplx I1(0.0, 1.0);

// Matrices of the quaternion units under the 2x2 model: I = diag(i,-i),
// J = [[0,1],[-1,0]], K = [[0,i],[i,0]]; the starting basis is (i/2)(I, J, K).
std::vector<Mat> seed_basis_n2() {
  Mat I = Mat::Zero(2, 2), J = Mat::Zero(2, 2), K = Mat::Zero(2, 2);
  I(0, 0) = I1;
  I(1, 1) = -I1;
  J(0, 1) = 1.0;
  J(1, 0) = -1.0;
  K(0, 1) = I1;
  K(1, 0) = I1;
  return {0.5 * I1 * I, 0.5 * I1 * J, 0.5 * I1 * K};
}

// Traceless Hermitian basis: off-diagonal symmetric/antisymmetric pairs, then
// diagonal differences (Gram-Schmidt cleans up the diagonal block).
std::vector<Mat> seed_basis_general(int n) {
  std::vector<Mat> out;
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) {
      Mat s = Mat::Zero(n, n), t = Mat::Zero(n, n);
      s(a, b) = s(b, a) = 1.0;
      t(a, b) = -I1;
      t(b, a) = I1;
      out.push_back(s);
      out.push_back(t);
    }
  for (int a = 0; a + 1 < n; ++a) {
    Mat dgn = Mat::Zero(n, n);
    dgn(a, a) = 1.0;
    dgn(a + 1, a + 1) = -1.0;
    out.push_back(dgn);
  }
  return out;
}

// Coordinates of M in an arbitrary basis by least squares on the flattened matrices.
CVec solve_coords(const std::vector<Mat>& basis, const Mat& M) {
  const int n = static_cast<int>(M.rows());
  const int d = static_cast<int>(basis.size());
  Mat A(n * n, d);
  for (int k = 0; k < d; ++k) A.col(k) = basis[k].reshaped();
  Eigen::VectorXcd rhs = M.reshaped();
  Eigen::VectorXcd x = A.colPivHouseholderQr().solve(rhs);
  return CVec(x.data(), x.data() + d);
}

std::vector<cplx> structure_of(const std::vector<Mat>& basis) {
  const int d = static_cast<int>(basis.size());
  std::vector<cplx> c(static_cast<std::size_t>(d) * d * d);
  for (int j = 0; j < d; ++j)
    for (int k = 0; k < d; ++k) {
      const Mat br = basis[j] * basis[k] - basis[k] * basis[j];
      const CVec x = solve_coords(basis, br);
      for (int l = 0; l < d; ++l) c[(static_cast<std::size_t>(j) * d + k) * d + l] = x[l];
    }
  return c;
}

}  // namespace

double default_killing_multiple(int n) { return n == 2 ? 0.5 : 1.0 / (2.0 * n); }

CVec LieModel::bracket(const CVec& X, const CVec& Y) const {
  CVec out(d, 0.0);
  for (int j = 0; j < d; ++j) {
    if (X[j] == cplx(0)) continue;
    for (int k = 0; k < d; ++k) {
      const cplx xy = X[j] * Y[k];
      if (xy == cplx(0)) continue;
      for (int l = 0; l < d; ++l) out[l] += xy * c(j, k, l);
    }
  }
  return out;
}

Eigen::MatrixXcd LieModel::ad_matrix(const CVec& X) const {
  Mat m = Mat::Zero(d, d);
  for (int j = 0; j < d; ++j)
    for (int i = 0; i < d; ++i) {
      if (X[i] == cplx(0)) continue;
      for (int l = 0; l < d; ++l) m(l, j) += X[i] * c(i, j, l);
    }
  return m;
}

cplx LieModel::B(const CVec& X, const CVec& Y) const { return lambda * (ad_matrix(X) * ad_matrix(Y)).trace(); }

Eigen::MatrixXcd LieModel::to_matrix(const CVec& X) const {
  Mat m = Mat::Zero(n, n);
  for (int k = 0; k < d; ++k) m += X[k] * basis[k];
  return m;
}

CVec LieModel::coords(const Eigen::MatrixXcd& M) const { return solve_coords(basis, M); }

Eigen::MatrixXcd LieModel::gram() const {
  Mat g(d, d);
  for (int j = 0; j < d; ++j) {
    CVec ej(d, 0.0);
    ej[j] = 1.0;
    for (int k = 0; k < d; ++k) {
      CVec ek(d, 0.0);
      ek[k] = 1.0;
      g(j, k) = B(ej, ek);
    }
  }
  return g;
}

double LieModel::gram_residual() const { return (gram() - Mat::Identity(d, d)).cwiseAbs().maxCoeff(); }

double LieModel::jacobi_residual() const {
  double worst = 0.0;
  auto unit = [this](int k) {
    CVec e(d, 0.0);
    e[k] = 1.0;
    return e;
  };
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b)
      for (int cc = 0; cc < d; ++cc) {
        const CVec x = unit(a), y = unit(b), z = unit(cc);
        const CVec t1 = bracket(x, bracket(y, z));
        const CVec t2 = bracket(y, bracket(z, x));
        const CVec t3 = bracket(z, bracket(x, y));
        for (int l = 0; l < d; ++l) worst = std::max(worst, std::abs(t1[l] + t2[l] + t3[l]));
      }
  return worst;
}

LieModel build_sl_n(int n, double lambda) {
  if (n != 2 && n != 3) throw std::invalid_argument("build_sl_n: n = " + std::to_string(n) + " is unsupported (2 or 3)");
  if (lambda <= 0.0) lambda = default_killing_multiple(n);
  std::vector<Mat> seed = n == 2 ? seed_basis_n2() : seed_basis_general(n);
  const int d = n * n - 1;

  LieModel L;
  L.n = n;
  L.d = d;
  L.lambda = lambda;

  // Gram-Schmidt against B = lambda tr(ad o ad), recomputing ad from the current basis.
  std::vector<Mat> ortho;
  for (const Mat& v : seed) {
    ortho.push_back(v);
  }
  for (int pass = 0; pass < 2; ++pass) {
    L.basis = ortho;
    L.structure = structure_of(L.basis);
    // B in the current (possibly non-orthonormal) basis.
    std::vector<Mat> ads(d);
    for (int j = 0; j < d; ++j) {
      CVec ej(d, 0.0);
      ej[j] = 1.0;
      ads[j] = L.ad_matrix(ej);
    }
    Mat G(d, d);
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k) G(j, k) = lambda * (ads[j] * ads[k]).trace();
    // Orthonormalize coefficient vectors with respect to G.
    std::vector<Eigen::VectorXcd> coeffs;
    for (int j = 0; j < d; ++j) {
      Eigen::VectorXcd v = Eigen::VectorXcd::Unit(d, j);
      for (const auto& u : coeffs) {
        const cplx proj = (u.transpose() * G * v)(0, 0);
        v -= proj * u;
      }
      const cplx nrm = (v.transpose() * G * v)(0, 0);
      if (std::abs(nrm) < 1e-14) throw std::runtime_error("build_sl_n: degenerate seed basis");
      v /= std::sqrt(nrm);
      coeffs.push_back(v);
    }
    std::vector<Mat> next(d);
    for (int j = 0; j < d; ++j) {
      next[j] = Mat::Zero(n, n);
      for (int k = 0; k < d; ++k) next[j] += coeffs[j](k) * ortho[k];
      // Keep the basis exactly Hermitian so that m-coordinates stay real.
      next[j] = 0.5 * (next[j] + next[j].adjoint()).eval();
    }
    ortho = next;
  }
  L.basis = ortho;
  L.structure = structure_of(L.basis);
  return L;
}

MultiVector ad_bivector(const LieModel& L, const CVec& X) {
  if (static_cast<int>(X.size()) != L.d) throw std::invalid_argument("ad_bivector: vector dimension mismatch");
  const Mat A = L.ad_matrix(X);
  // (1/2) sum_j e_j [X, e_j] = (1/2) sum_{j,l} A(l,j) e_j e_l.
  MultiVector out(L.d);
  for (int j = 0; j < L.d; ++j)
    for (int l = j + 1; l < L.d; ++l) out[(Blade(1) << j) | (Blade(1) << l)] += 0.5 * (A(l, j) - A(j, l));
  for (int j = 0; j < L.d; ++j) out[0] -= 0.5 * A(j, j);
  return out;
}

MultiVector ad_tilde(const LieModel& L, const CVec& X) { return 0.5 * ad_bivector(L, X); }

GroupElement lift_Ad(const LieModel& L, const CVec& X, double t) {
  GroupElement g;
  CVec tx(X.size());
  for (std::size_t k = 0; k < X.size(); ++k) tx[k] = t * X[k];
  g.spin = clifford_exp(ad_tilde(L, tx));
  g.matrix = matrix_exp(L.to_matrix(tx));
  return g;
}

MultiVector cartan_point(const MultiVector& a) { return product(a, sigma(reverse(a))); }

CVec spin_act(const MultiVector& g, const CVec& xi) {
  return product(product(g, MultiVector::vector(xi)), reverse(g)).vector_part();
}

CVec matrix_act(const LieModel& L, const Eigen::MatrixXcd& M, const CVec& X) {
  return L.coords(M * L.to_matrix(X) * M.inverse());
}

Eigen::MatrixXcd matrix_exp(const Eigen::MatrixXcd& M) { return M.exp(); }

CVec m_part(const CVec& X) {
  CVec out(X.size());
  for (std::size_t k = 0; k < X.size(); ++k) out[k] = X[k].real();
  return out;
}

CVec h_part(const CVec& X) {
  CVec out(X.size());
  for (std::size_t k = 0; k < X.size(); ++k) out[k] = cplx(0.0, X[k].imag());
  return out;
}

CVec axpy(cplx a, const CVec& x, const CVec& y) {
  CVec out(y);
  for (std::size_t k = 0; k < x.size(); ++k) out[k] += a * x[k];
  return out;
}

double max_abs_diff(const CVec& a, const CVec& b) {
  double m = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) m = std::max(m, std::abs(a[k] - b[k]));
  return m;
}

double max_abs(const CVec& a) {
  double m = 0.0;
  for (const auto& v : a) m = std::max(m, std::abs(v));
  return m;
}

}  // namespace spinim
