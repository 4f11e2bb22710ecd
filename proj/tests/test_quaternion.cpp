#include <doctest.h>

#include <random>

#include "spinim/lemmas.hpp"
#include "spinim/quaternion.hpp"

using namespace spinim;

namespace {

const cplx I1(0.0, 1.0);

CQuat random_q(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> U(-1, 1);
  return {cplx(U(rng), U(rng)), cplx(U(rng), U(rng)), cplx(U(rng), U(rng)), cplx(U(rng), U(rng))};
}

Eigen::Matrix2cd random_m(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> U(-1, 1);
  Eigen::Matrix2cd M;
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) M(r, c) = cplx(U(rng), U(rng));
  return M;
}

}  // namespace

TEST_CASE("unit multiplication table") {
  const CQuat I = CQuat::I(), J = CQuat::J(), K = CQuat::K(), one = CQuat::one();
  CHECK((I * I + one).max_abs() == 0.0);
  CHECK((J * J + one).max_abs() == 0.0);
  CHECK((K * K + one).max_abs() == 0.0);
  CHECK((I * J - K).max_abs() == 0.0);
  CHECK((J * K - I).max_abs() == 0.0);
  CHECK((K * I - J).max_abs() == 0.0);
}

TEST_CASE("from_matrix is a determinant-preserving algebra isomorphism") {
  std::mt19937_64 rng(1);
  for (int k = 0; k < 2000; ++k) {
    const Eigen::Matrix2cd M = random_m(rng), N = random_m(rng);
    const CQuat zm = from_matrix(M), zn = from_matrix(N);
    CHECK((from_matrix(M * N) - zm * zn).max_abs() < 1e-12);
    CHECK(std::abs(M.determinant() - H(zm, zm)) < 1e-12);
    CHECK((to_matrix(zm) - M).cwiseAbs().maxCoeff() < 1e-12);
  }
  // the units map to the documented matrices
  Eigen::Matrix2cd Im;
  Im << I1, 0.0, 0.0, -I1;
  CHECK((from_matrix(Im) - CQuat::I()).max_abs() == 0.0);
}

TEST_CASE("tau, sigma, inverse and renormalization") {
  std::mt19937_64 rng(2);
  for (int k = 0; k < 100; ++k) {
    const CQuat a = random_q(rng), b = random_q(rng);
    CHECK((cq_tau(a * b) - cq_tau(b) * cq_tau(a)).max_abs() < 1e-14);
    CHECK((cq_sigma(a * b) - cq_sigma(a) * cq_sigma(b)).max_abs() < 1e-14);
    CHECK((a * cq_inverse(a) - CQuat::one()).max_abs() < 1e-10);
    CHECK(std::abs(H(a * b, a * b) - H(a, a) * H(b, b)) < 1e-12);
  }
  const CQuat u = CQuat{1.02, 0.0, cplx(0.0, 0.1), 0.0};
  const CQuat r = cq_renormalize(cq_renormalize(u));
  CHECK(std::abs(H(r, r) - 1.0) < 1e-4);
}

TEST_CASE("Psi is a Clifford map on pure quaternions") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> U(-1, 1);
  for (int k = 0; k < 2000; ++k) {
    const CQuat z = lie_vector(cplx(U(rng), U(rng)), cplx(U(rng), U(rng)), cplx(U(rng), U(rng)));
    const PsiBlocks p = psi_embed(z);
    const PsiBlocks sq = psi_product(p, p);
    const cplx B = -4.0 * (z.z1 * z.z1 + z.z2 * z.z2 + z.z3 * z.z3);
    CHECK((sq.upper + B * CQuat::one()).max_abs() < 1e-12);
    CHECK((sq.lower + B * CQuat::one()).max_abs() < 1e-12);
  }
  // B(e1, e1) = 1
  const PsiBlocks e1 = psi_embed(lie_vector(1.0, 0.0, 0.0));
  CHECK((psi_product(e1, e1).upper + CQuat::one()).max_abs() < 1e-15);
  CHECK_THROWS_AS(psi_embed(CQuat::one()), std::invalid_argument);
}

TEST_CASE("generic algebra round trip and unit correspondence") {
  std::mt19937_64 rng(4);
  for (int k = 0; k < 50; ++k) {
    const CQuat a = random_q(rng), b = random_q(rng);
    CHECK((from_generic(to_generic(a)) - a).max_abs() == 0.0);
    CHECK((from_generic(to_generic(a) * to_generic(b)) - a * b).max_abs() < 1e-14);
    CHECK((from_generic(reverse(to_generic(a))) - cq_tau(a)).max_abs() == 0.0);
    CHECK((from_generic(sigma(to_generic(a))) - cq_sigma(a)).max_abs() == 0.0);
  }
  // I = e2 e3, J = e3 e1, K = e1 e2
  CHECK((to_generic(CQuat::I()) - MultiVector::blade(3, 0b110)).max_abs() == 0.0);
  CHECK((to_generic(CQuat::J()) + MultiVector::blade(3, 0b101)).max_abs() == 0.0);
  CHECK((to_generic(CQuat::K()) - MultiVector::blade(3, 0b011)).max_abs() == 0.0);
  CHECK_THROWS(from_generic(MultiVector::basis_vector(3, 0)));
}

TEST_CASE("adjoint bivectors of the basis are i times the units") {
  const LieModel L = build_sl_n(2);
  const CQuat units[3] = {CQuat::I(), CQuat::J(), CQuat::K()};
  for (int k = 0; k < 3; ++k) {
    CVec e(3, 0.0);
    e[k] = 1.0;
    CHECK((from_generic(ad_bivector(L, e)) - I1 * units[k]).max_abs() < 1e-12);
  }
}

TEST_CASE("even spinors split into plus and minus ideals") {
  std::mt19937_64 rng(5);
  for (int k = 0; k < 50; ++k) {
    const CQuat a = random_q(rng);
    const SpinorPair s = split_even(a);
    CHECK((s.plus + s.minus - a).max_abs() < 1e-15);
    CHECK(in_plus_ideal(s.plus, 1e-14));
    CHECK_FALSE(in_plus_ideal(s.minus, 1e-3));
    const PlusCoords z = plus_coords(s.plus);
    CHECK((plus_from_coords(z.z1, z.z2) - s.plus).max_abs() < 1e-14);
  }
}
