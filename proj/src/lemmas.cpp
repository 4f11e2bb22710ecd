#include "spinim/lemmas.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace spinim {

namespace {

double uniform(std::mt19937_64& rng) { return std::uniform_real_distribution<double>(-1.0, 1.0)(rng); }

CVec apply(const Eigen::MatrixXcd& u, const CVec& x) {
  Eigen::Map<const Eigen::VectorXcd> xv(x.data(), static_cast<long>(x.size()));
  Eigen::VectorXcd y = u * xv;
  return CVec(y.data(), y.data() + y.size());
}

}  // namespace

CVec random_cvec(std::mt19937_64& rng, int d, double scale) {
  CVec v(d);
  for (auto& c : v) c = scale * cplx(uniform(rng), uniform(rng));
  return v;
}

CVec random_real_cvec(std::mt19937_64& rng, int d, double scale) {
  CVec v(d);
  for (auto& c : v) c = scale * uniform(rng);
  return v;
}

MultiVector random_multivector(std::mt19937_64& rng, int dim, double scale) {
  MultiVector m(dim);
  for (auto& c : m.coeffs()) c = scale * cplx(uniform(rng), uniform(rng));
  return m;
}

MultiVector random_bivector(std::mt19937_64& rng, int dim, double scale) {
  MultiVector m(dim);
  for (std::size_t b = 0; b < m.size(); ++b)
    if (grade_of(static_cast<Blade>(b)) == 2) m[static_cast<Blade>(b)] = scale * cplx(uniform(rng), uniform(rng));
  return m;
}

Eigen::MatrixXcd random_skew(std::mt19937_64& rng, int d, double scale) {
  Eigen::MatrixXcd u = Eigen::MatrixXcd::Zero(d, d);
  for (int j = 0; j < d; ++j)
    for (int k = j + 1; k < d; ++k) {
      u(j, k) = scale * cplx(uniform(rng), uniform(rng));
      u(k, j) = -u(j, k);
    }
  return u;
}

std::vector<LemmaResult> run_lemma_suite(const LieModel& L, std::uint64_t seed, int instances) {
  if (instances <= 0) throw std::invalid_argument("run_lemma_suite: instance count must be positive");
  std::mt19937_64 rng(seed);
  const int d = L.d;
  std::vector<LemmaResult> out;

  {
    LemmaResult r{"skew_action", instances, 0.0};
    for (int it = 0; it < instances; ++it) {
      const Eigen::MatrixXcd u = random_skew(rng, d);
      const CVec xi = random_cvec(rng, d);
      const CVec lhs = commutator(bivector_of_skew(u), MultiVector::vector(xi)).vector_part();
      const MultiVector full = commutator(bivector_of_skew(u), MultiVector::vector(xi));
      r.max_deviation = std::max({r.max_deviation, max_abs_diff(lhs, apply(u, xi)), full.off_grade_norm(1)});
    }
    out.push_back(r);
  }
  {
    LemmaResult r{"skew_commutator", instances, 0.0};
    for (int it = 0; it < instances; ++it) {
      const Eigen::MatrixXcd u = random_skew(rng, d), v = random_skew(rng, d);
      const MultiVector lhs = commutator(bivector_of_skew(u), bivector_of_skew(v));
      const MultiVector rhs = bivector_of_skew(u * v - v * u);
      r.max_deviation = std::max(r.max_deviation, (lhs - rhs).max_abs());
    }
    out.push_back(r);
  }
  {
    LemmaResult r{"mixed_block", instances, 0.0};
    for (int it = 0; it < instances; ++it) {
      const int p = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(d - 1));
      const int q = d - p;
      Eigen::MatrixXcd u(q, p);
      for (int a = 0; a < q; ++a)
        for (int b = 0; b < p; ++b) u(a, b) = cplx(uniform(rng), uniform(rng));
      std::vector<int> tan, nor;
      for (int k = 0; k < p; ++k) tan.push_back(k);
      for (int k = p; k < d; ++k) nor.push_back(k);
      const MultiVector ub = mixed_bivector(d, p, u);
      const MultiVector us = mixed_bivector_symmetric(d, tan, nor, u);
      const CVec xi = random_cvec(rng, d);
      const CVec act = commutator(ub, MultiVector::vector(xi)).vector_part();
      CVec expect(d, 0.0);
      for (int a = 0; a < q; ++a)
        for (int b = 0; b < p; ++b) {
          expect[p + a] += u(a, b) * xi[b];  // u(xi_p)
          expect[b] -= u(a, b) * xi[p + a];  // -u^*(xi_q)
        }
      r.max_deviation = std::max({r.max_deviation, max_abs_diff(act, expect), (ub - us).max_abs()});
    }
    out.push_back(r);
  }
  {
    LemmaResult r{"form_invariance", instances, 0.0};
    for (int it = 0; it < instances; ++it) {
      const MultiVector g = clifford_exp(random_bivector(rng, d, 0.3));
      const MultiVector a = random_multivector(rng, d), b = random_multivector(rng, d);
      const cplx ref = extended_B(a, b);
      const cplx left = extended_B(product(g, a), product(g, b));
      const cplx right = extended_B(product(a, g), product(b, g));
      const MultiVector X = random_bivector(rng, d), Y = random_bivector(rng, d), Z = random_bivector(rng, d);
      const cplx inf = extended_B(commutator(Z, X), Y) + extended_B(X, commutator(Z, Y));
      r.max_deviation = std::max({r.max_deviation, std::abs(left - ref), std::abs(right - ref), std::abs(inf)});
    }
    out.push_back(r);
  }
  {
    LemmaResult r{"adjoint_norm", instances, 0.0};
    for (int it = 0; it < instances; ++it) {
      const CVec X = random_cvec(rng, d), Y = random_cvec(rng, d);
      const cplx lhs = extended_B(ad_tilde(L, X), ad_tilde(L, Y));
      const cplx rhs = -L.B(X, Y) / (8.0 * L.lambda);
      r.max_deviation = std::max(r.max_deviation, std::abs(lhs - rhs));
    }
    out.push_back(r);
  }
  return out;
}

double omega_identity_deviation(const LieModel& L, std::uint64_t seed, int instances) {
  if (L.n != 2) throw std::invalid_argument("omega_identity_deviation: defined for n = 2 only");
  const MultiVector omega = MultiVector::blade(3, 0b111, cplx(0, 1));
  std::mt19937_64 rng(seed);
  double worst = 0.0;
  auto check = [&](const CVec& X) {
    const MultiVector lhs = ad_bivector(L, X);
    const MultiVector rhs = -product(MultiVector::vector(X), omega);
    worst = std::max(worst, (lhs - rhs).max_abs());
  };
  for (int k = 0; k < 3; ++k) {
    CVec e(3, 0.0);
    e[k] = 1.0;
    check(e);
  }
  for (int it = 0; it < instances; ++it) check(random_cvec(rng, 3));
  return worst;
}

}  // namespace spinim
