#include <doctest.h>

#include <random>

#include "spinim/grc.hpp"
#include "spinim/lemmas.hpp"

using namespace spinim;

namespace {

CVec unit(int d, int k) {
  CVec e(d, 0.0);
  e[k] = 1.0;
  return e;
}

CQuat unit_constant() {
  return CQuat{std::cos(0.3), 0.0, std::sin(0.3), 0.0} * CQuat{std::cosh(0.5), cplx(0.0, std::sinh(0.5)), 0.0, 0.0};
}

}  // namespace

TEST_CASE("ambient curvature vanishes on the diagonal and is antisymmetric") {
  std::mt19937_64 rng(1);
  const LieModel L = build_sl_n(3);
  const CVec X = random_cvec(rng, L.d), Y = random_cvec(rng, L.d);
  CHECK(ambient_curvature(L, X, X).max_abs() < 1e-14);
  CHECK((ambient_curvature(L, X, Y) + ambient_curvature(L, Y, X)).max_abs() < 1e-13);
}

TEST_CASE("n = 2 ambient curvature has constant curvature -1") {
  const LieModel L = build_sl_n(2);
  std::mt19937_64 rng(2);
  for (int k = 0; k < 200; ++k) {
    const CVec X = random_real_cvec(rng, 3), Y = random_real_cvec(rng, 3), Z = random_real_cvec(rng, 3);
    const CVec lhs = ambient_curvature_action(L, X, Y, Z);
    const CVec rhs = axpy(L.B(X, Z), Y, axpy(-L.B(Y, Z), X, CVec(3, 0.0)));
    CHECK(max_abs_diff(lhs, rhs) < 1e-12);
  }
  // (1/2) Rbar(X, Y) = (1/4)(XY - YX)
  const CVec X = random_real_cvec(rng, 3), Y = random_real_cvec(rng, 3);
  const MultiVector vx = MultiVector::vector(X), vy = MultiVector::vector(Y);
  CHECK((ambient_curvature(L, X, Y) - 0.25 * (vx * vy - vy * vx)).max_abs() < 1e-12);
}

TEST_CASE("n = 3 ambient curvature matches the bracket oracle and is B-skew") {
  const LieModel L = build_sl_n(3);
  std::mt19937_64 rng(3);
  for (int k = 0; k < 20; ++k) {
    const CVec X = random_cvec(rng, 8), Y = random_cvec(rng, 8), Z = random_cvec(rng, 8), W = random_cvec(rng, 8);
    const CVec lhs = ambient_curvature_action(L, X, Y, Z);
    const CVec oracle = axpy(-1.0, L.bracket(X, L.bracket(Y, Z)), L.bracket(Y, L.bracket(X, Z)));
    CHECK(max_abs_diff(lhs, oracle) < 1e-11);
    const cplx a = L.B(ambient_curvature_action(L, X, Y, Z), W);
    const cplx b = L.B(Z, ambient_curvature_action(L, X, Y, W));
    CHECK(std::abs(a + b) < 1e-11);
  }
}

TEST_CASE("fundamental equations hold on horosphere and Poincare-disc data") {
  const LieModel L = build_sl_n(2);
  for (int res : {16, 64}) {
    const Chart c = make_chart(-0.5, 0.5, -0.5, 0.5, res);
    for (const char* fam : {"horosphere", "poincare_disc", "horosphere_exp"}) {
      const CurvatureReport r = grc_residuals(make_surface(fam, c), L);
      INFO(fam << " res " << res << " worst " << r.worst_description());
      CHECK(r.max() < 1e-8);
      CHECK(r.D.max.value < 1e-10);
    }
  }
}

TEST_CASE("fundamental equations converge on CMC-1 data with a nonzero Hopf differential") {
  const LieModel L = build_sl_n(2);
  double prev = 0.0;
  for (int res : {16, 32, 64}) {
    const CurvatureReport r = grc_residuals(make_surface("cmc1_cosh", make_chart(-0.5, 0.5, -0.5, 0.5, res)), L);
    CHECK(r.D.max.value < 1e-10);
    if (prev > 0.0) CHECK(convergence_order(prev, r.max()) >= 1.9);
    prev = r.max();
  }
}

TEST_CASE("a localized Codazzi injection is detected next to the node") {
  const LieModel L = build_sl_n(2);
  const Chart c = make_chart(-0.5, 0.5, -0.5, 0.5, 32);
  SurfaceSpec s = make_surface("horosphere", c);
  inject_alpha(s, 16, 12, 0.1);
  const CurvatureReport r = grc_residuals(s, L);
  CHECK(r.codazzi.max.value > 1e-3);
  CHECK(std::abs(r.codazzi.max.i - 16) <= 1);
  CHECK(std::abs(r.codazzi.max.j - 12) <= 1);
  CHECK(r.codazzi.node.at(0, 0) < 1e-12);
  CHECK(r.D.max.value < 1e-10);
}

TEST_CASE("normal rank other than one and n = 3 data are refused") {
  const Chart c = make_chart(0, 1, 0, 1, 8);
  SurfaceSpec s = make_surface("horosphere", c);
  CHECK_THROWS(grc_residuals(s, build_sl_n(3)));
  s.normal_rank = 2;
  CHECK_THROWS(grc_residuals(s, build_sl_n(2)));
}

TEST_CASE("curvature decomposition: D vanishes and the sum matches the spin curvature") {
  const LieModel L = build_sl_n(2);
  for (const char* fam : {"horosphere", "cmc1_cosh"}) {
    double prev = 0.0;
    for (int res : {16, 32, 64}) {
      const Chart c = make_chart(-0.5, 0.5, -0.5, 0.5, res);
      const SurfaceSpec s = make_surface(fam, c);
      const FrameField f = surface_field(L, s);
      const Decomposition d = curvature_decomposition(integrate_field(f, MultiVector::scalar(3, 1.0)), f);
      CHECK(d.D.max.value < 1e-10);
      if (prev > 0.0) {
        INFO(fam << " res " << res);
        CHECK(convergence_order(prev, d.sum_defect.max.value) >= 1.9);
      }
      prev = d.sum_defect.max.value;
    }
  }
}

TEST_CASE("reconstruct refuses data violating the fundamental equations") {
  const LieModel L = build_sl_n(2);
  const SurfaceSpec s = make_surface("perturbed_H", make_chart(-0.5, 0.5, -0.5, 0.5, 32));
  try {
    reconstruct(s, L, MultiVector::scalar(3, 1.0));
    FAIL("expected a refusal");
  } catch (const Refusal& r) {
    CHECK(r.residual() > 1e-3);
    CHECK(r.node_i() >= 0);
    CHECK(r.node_j() >= 0);
  }
  // the unconditional integrator still runs, and its connection is visibly curved
  const FrameField f = surface_field(L, s);
  CHECK(flatness_residual(f).max.value > 1e-2);
  CHECK(unit_defect(integrate_field(f, MultiVector::scalar(3, 1.0))) < 1e-10);
}

TEST_CASE("path independence: fourth-order defect on valid data, growing with a Codazzi violation") {
  const LieModel L = build_sl_n(2);
  double prev = 0.0;
  for (int res : {16, 32}) {
    const SurfaceSpec s = make_surface("cmc1_cosh", make_chart(-0.5, 0.5, -0.5, 0.5, res));
    const ReconstructResult r = reconstruct(s, L, MultiVector::scalar(3, 1.0));
    if (prev > 0.0) CHECK(convergence_order(prev, r.path_defect) >= 3.5);
    prev = r.path_defect;
  }
  ReconstructOptions loose;
  loose.grc_threshold = 1e9;
  double last = 0.0;
  for (double eps : {0.0, 0.01, 0.1}) {
    SurfaceSpec s = make_surface("horosphere", make_chart(-0.5, 0.5, -0.5, 0.5, 32));
    if (eps > 0.0) inject_alpha(s, 16, 16, eps);
    const double d = reconstruct(s, L, MultiVector::scalar(3, 1.0), loose).path_defect;
    if (eps > 0.0) {
      CHECK(d > last);
      CHECK(d > 1e-3 * eps);
    }
    last = d;
  }
}

TEST_CASE("right-multiplied base spinor moves the surface by an isometry") {
  const LieModel L = build_sl_n(2);
  const SurfaceSpec s = make_surface("cmc1_cosh", make_chart(-0.5, 0.5, -0.5, 0.5, 32));
  const CQuat a = unit_constant();
  const ImmersionMesh m0 = weierstrass_F(reconstruct(s, L, MultiVector::scalar(3, 1.0)).phi);
  const ImmersionMesh m1 = weierstrass_F(reconstruct(s, L, to_generic(a)).phi);
  double worst = 0.0;
  for (std::size_t k = 0; k < m0.F.v.size(); ++k) {
    const CQuat F0 = from_generic(m0.F.v[k]), F1 = from_generic(m1.F.v[k]);
    worst = std::max(worst, (cq_tau(a) * F0 * cq_sigma(a) - F1).max_abs());
  }
  CHECK(worst < 1e-8);
}

TEST_CASE("Gauss formula ties the two Killing forms: nabla-zero minus nabla is half II") {
  // With the split conn + half_II + half_ad the nabla-zero form absorbs half_II into the
  // connection; both residuals coincide at chart level.
  const LieModel L = build_sl_n(2);
  const Chart c = make_chart(-0.5, 0.5, -0.5, 0.5, 32);
  const SurfaceSpec s = make_surface("cmc1_cosh", c);
  const FrameField f = surface_field(L, s);
  const SpinorGrid phi = integrate_field(f, MultiVector::scalar(3, 1.0));
  double worst = 0.0;
  for (int j = 1; j + 1 < c.ny; ++j)
    for (int i = 1; i + 1 < c.nx; ++i) {
      const FrameTerms t = f.node(i, j);
      for (int d = 0; d < 2; ++d) {
        const MultiVector nabla = fd_dir(phi, i, j, d) + t.d[d].conn * phi.at(i, j);
        const MultiVector nabla0 = nabla + t.d[d].half_II * phi.at(i, j);
        const MultiVector r = nabla0 + t.d[d].half_ad * phi.at(i, j);
        worst = std::max(worst, r.max_abs());
      }
    }
  CHECK(worst < 10.0 * c.hx * c.hx);
  CHECK(ambient_curvature(L, unit(3, 0), unit(3, 1)).off_grade_norm(2) < 1e-14);
}
