#include <doctest.h>

#include <cmath>
#include <random>

#include "spinim/bryant.hpp"
#include "spinim/lemmas.hpp"

using namespace spinim;

namespace {

const cplx I1(0.0, 1.0);

// Unit element of the spin group with a nontrivial boost part.
CQuat unit_constant() {
  return CQuat{std::cos(0.7), std::sin(0.7), 0.0, 0.0} * CQuat{std::cosh(0.4), 0.0, I1 * std::sinh(0.4), 0.0};
}

SpinorGrid surface_spinor(const SurfaceSpec& s, const MultiVector& phi0) {
  return integrate_field(surface_field(build_sl_n(2), s), phi0);
}

}  // namespace

TEST_CASE("hyperboloid coordinates: explicit formulas agree with tau(phi) sigma(phi)") {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> U(-1, 1);
  for (int k = 0; k < 200; ++k) {
    const CQuat q{cplx(U(rng), U(rng)), cplx(U(rng), U(rng)), cplx(U(rng), U(rng)), cplx(U(rng), U(rng))};
    const auto a = hyperboloid_coords(cq_tau(q) * cq_sigma(q));
    const auto b = hyperboloid_from_spinor(q);
    for (int m = 0; m < 4; ++m) CHECK(std::abs(a[m] - b[m]) < 1e-13);
  }
  // unit spinor -> point on the hyperboloid, inside the ball
  const CQuat u = unit_constant();
  const auto X = hyperboloid_from_spinor(u);
  CHECK(minkowski_defect(X) < 1e-13);
  const auto p = ball_point(X);
  CHECK(p[0] * p[0] + p[1] * p[1] + p[2] * p[2] < 1.0);
}

TEST_CASE("Weierstrass map of the constant unit spinor is the base point") {
  const Chart c = make_chart(0, 0.25, 0, 0.25, 16);
  const SpinorGrid one(c, MultiVector::scalar(3, 1.0));
  const ImmersionMesh m = weierstrass_F(one);
  REQUIRE(m.has_hyperboloid);
  for (const auto& X : m.hyper.v) {
    CHECK(X[0] == doctest::Approx(1.0));
    CHECK(std::abs(X[1]) + std::abs(X[2]) + std::abs(X[3]) == 0.0);
  }
  CHECK(cartan_defect(m) == 0.0);
}

TEST_CASE("Killing residual of the geodesic spinor converges at second order") {
  const LieModel L = build_sl_n(2);
  double prev = 0.0;
  for (int res : {32, 64, 128}) {
    const Chart c = make_chart(0, 0.5, 0, 0.5, res);
    const FrameField f = geodesic_field(L, c, {0.0, 1.0, 0.0}, {0.0, 0.0, 1.0});
    const double r = killing_residual(exact_spinor_grid(f), f).max.value;
    if (prev > 0.0) CHECK(convergence_order(prev, r) >= 1.9);
    prev = r;
  }
}

TEST_CASE("geodesic spinor traces the unit-speed geodesic (cosh s, +-sinh s, 0, 0)") {
  // curvature -1 normalization: a unit generator moves at unit hyperbolic speed.
  const LieModel L = build_sl_n(2);
  const Chart c = make_chart(0, 0.5, 0, 0.25, 16);
  const FrameField f = geodesic_field(L, c, {1.0, 0.0, 0.0}, {0.0, 1.0, 0.0});
  const ImmersionMesh m = weierstrass_F(exact_spinor_grid(f));
  for (int i = 0; i < c.nx; ++i) {
    const double s = c.x(i);
    const auto& X = m.hyper.at(i, 0);
    CHECK(std::abs(X[0] - std::cosh(s)) < 1e-12);
    CHECK(std::abs(std::abs(X[1]) - std::sinh(s)) < 1e-12);
    CHECK(std::abs(X[2]) + std::abs(X[3]) < 1e-12);
  }
}

TEST_CASE("derivative identities for F hold to second order") {
  double prev[2] = {0, 0};
  for (int res : {16, 32, 64}) {
    const Chart c = make_chart(-0.5, 0.5, -0.5, 0.5, res);
    const SurfaceSpec s = make_surface("cmc1_cosh", c);
    const SpinorGrid phi = surface_spinor(s, to_generic(unit_constant()));
    const DerivativeDefects d = derivative_identity_check(phi, surface_field(build_sl_n(2), s));
    if (prev[0] > 0) {
      CHECK(convergence_order(prev[0], d.dF.max.value) >= 1.9);
      CHECK(convergence_order(prev[1], d.dF_left.max.value) >= 1.9);
    }
    prev[0] = d.dF.max.value;
    prev[1] = d.dF_left.max.value;
  }
}

TEST_CASE("Morel Dirac and norm residuals converge on CMC-1 data") {
  for (const char* fam : {"horosphere_exp", "cmc1_cosh"}) {
    double pd = 0, pn = 0;
    for (int res : {32, 64, 128}) {
      const Chart c = make_chart(-0.5, 0.5, -0.5, 0.5, res);
      const SurfaceSpec s = make_surface(fam, c);
      const MorelResidual m = morel_dirac_check(surface_spinor(s, to_generic(unit_constant())), s);
      CHECK(m.min_psi > 0.1);
      if (pd > 0) {
        INFO(fam << " res " << res);
        CHECK(convergence_order(pd, m.dirac.max.value) >= 1.9);
        CHECK(convergence_order(pn, m.norm.max.value) >= 1.9);
      }
      pd = m.dirac.max.value;
      pn = m.norm.max.value;
    }
  }
}

TEST_CASE("Morel residuals stay bounded away from zero off CMC-1") {
  for (int res : {32, 64}) {
    const Chart c = make_chart(-0.5, 0.5, -0.5, 0.5, res);
    const SurfaceSpec s = make_surface("perturbed_H", c);
    const MorelResidual m = morel_dirac_check(surface_spinor(s, to_generic(unit_constant())), s);
    CHECK(m.dirac.max.value > 1e-2);
  }
}

TEST_CASE("Morel algebraic identities on random spinors") {
  const MorelIdentityDeviation d = morel_identities(9, 10000);
  CHECK(d.pairing < 1e-12);
  CHECK(d.ad_pairing < 1e-12);
}

TEST_CASE("spinor pairing is parallel for the spin connection") {
  const Chart c = make_chart(-0.5, 0.5, -0.5, 0.5, 32);
  const SurfaceSpec s = make_surface("cmc1_cosh", c);
  const FrameField f = surface_field(build_sl_n(2), s);
  const SpinorGrid a = surface_spinor(s, MultiVector::scalar(3, 1.0));
  const SpinorGrid b = surface_spinor(s, to_generic(unit_constant()));
  CHECK(pairing_compatibility(a, b, f).max.value < 10.0 * c.hx * c.hx);
  CHECK(unit_defect(a) < 1e-12);
}

TEST_CASE("killing residual rejects mismatched charts") {
  const Chart a = make_chart(0, 1, 0, 1, 8), b = make_chart(0, 1, 0, 1, 16);
  const FrameField f = surface_field(build_sl_n(2), make_surface("horosphere", a));
  CHECK_THROWS_AS(killing_residual(SpinorGrid(b, MultiVector::scalar(3, 1.0)), f), std::invalid_argument);
}
