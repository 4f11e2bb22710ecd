#include <doctest.h>

#include <random>

#include "spinim/lemmas.hpp"
#include "spinim/liealg.hpp"

using namespace spinim;

TEST_CASE("sl_n models: dimensions, Hermitian basis, orthonormality, Jacobi") {
  for (int n : {2, 3}) {
    const LieModel L = build_sl_n(n);
    CHECK(L.d == n * n - 1);
    CHECK(MultiVector(L.d).size() == (std::size_t(1) << L.d));
    CHECK(L.gram_residual() < 1e-12);
    CHECK(L.jacobi_residual() < 1e-12);
    for (const auto& M : L.basis) {
      CHECK((M - M.adjoint()).cwiseAbs().maxCoeff() < 1e-14);
      CHECK(std::abs(M.trace()) < 1e-14);
    }
  }
  CHECK(MultiVector(8).size() == 256);
  CHECK_THROWS_AS(build_sl_n(4), std::invalid_argument);
}

TEST_CASE("structure constants reproduce matrix commutators") {
  std::mt19937_64 rng(3);
  for (int n : {2, 3}) {
    const LieModel L = build_sl_n(n);
    for (int k = 0; k < 20; ++k) {
      const CVec X = random_cvec(rng, L.d), Y = random_cvec(rng, L.d);
      const Eigen::MatrixXcd MX = L.to_matrix(X), MY = L.to_matrix(Y);
      CHECK((L.to_matrix(L.bracket(X, Y)) - (MX * MY - MY * MX)).cwiseAbs().maxCoeff() < 1e-12);
      CHECK(max_abs_diff(L.coords(MX), X) < 1e-12);
    }
  }
}

TEST_CASE("[m, m] lies in h: brackets of real vectors are imaginary") {
  std::mt19937_64 rng(5);
  const LieModel L = build_sl_n(3);
  const CVec X = random_real_cvec(rng, L.d), Y = random_real_cvec(rng, L.d);
  for (const cplx c : L.bracket(X, Y)) CHECK(std::abs(c.real()) < 1e-13);
}

TEST_CASE("half the adjoint bivector acts as ad") {
  std::mt19937_64 rng(7);
  for (int n : {2, 3}) {
    const LieModel L = build_sl_n(n);
    for (int k = 0; k < 20; ++k) {
      const CVec X = random_cvec(rng, L.d), xi = random_cvec(rng, L.d);
      const CVec lhs = commutator(ad_tilde(L, X), MultiVector::vector(xi)).vector_part();
      CHECK(max_abs_diff(lhs, L.bracket(X, xi)) < 1e-12);
      CHECK(ad_bivector(L, X).off_grade_norm(2) < 1e-13);
    }
  }
}

TEST_CASE("extended form of adjoint bivectors carries the factor -1/(8 lambda)") {
  for (int n : {2, 3}) {
    for (double lam : {0.0, 0.3}) {
      const LieModel L = build_sl_n(n, lam);
      for (int j = 0; j < L.d; ++j)
        for (int k = 0; k < L.d; ++k) {
          CVec ej(L.d, 0.0), ek(L.d, 0.0);
          ej[j] = 1.0;
          ek[k] = 1.0;
          const cplx lhs = extended_B(ad_tilde(L, ej), ad_tilde(L, ek));
          CHECK(std::abs(lhs + L.B(ej, ek) / (8.0 * L.lambda)) < 1e-12);
        }
    }
  }
}

TEST_CASE("spin lift covers the matrix adjoint action") {
  std::mt19937_64 rng(9);
  for (int n : {2, 3}) {
    const LieModel L = build_sl_n(n);
    for (int k = 0; k < 5; ++k) {
      const CVec X = random_cvec(rng, L.d, 0.7), xi = random_cvec(rng, L.d);
      const GroupElement g = lift_Ad(L, X, 0.9);
      REQUIRE(g.matrix.has_value());
      CHECK(max_abs_diff(spin_act(g.spin, xi), matrix_act(L, *g.matrix, xi)) < 1e-10);
      // Cartan model point is fixed by sigma o tau
      const MultiVector F = cartan_point(g);
      CHECK((sigma(reverse(F)) - F).max_abs() < 1e-12);
    }
  }
}

TEST_CASE("lemma suites hold on random instances for both models") {
  for (int n : {2, 3}) {
    const LieModel L = build_sl_n(n);
    for (const auto& r : run_lemma_suite(L, 42, 200)) {
      INFO(r.name << " n=" << n);
      CHECK(r.max_deviation < 1e-10);
    }
  }
}

TEST_CASE("ad(X) = -X omega for the n = 2 model") {
  const LieModel L = build_sl_n(2);
  CHECK(omega_identity_deviation(L, 1, 1000) < 1e-12);
  CHECK_THROWS(omega_identity_deviation(build_sl_n(3), 1, 10));
}

TEST_CASE("m and h parts split a complex vector") {
  const CVec X = {cplx(1, 2), cplx(-3, 0.5)};
  const CVec s = axpy(1.0, m_part(X), h_part(X));
  CHECK(max_abs_diff(s, X) == 0.0);
  CHECK(m_part(X)[0] == cplx(1, 0));
  CHECK(h_part(X)[1] == cplx(0, 0.5));
}
